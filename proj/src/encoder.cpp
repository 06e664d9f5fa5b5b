#include "mrsum/encoder.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>

#include <json.hpp>

#include "mrsum/error.hpp"

namespace mrsum {

TfIdfModel fit_tfidf(std::span<const Document> corpus, TfIdfScope scope) {
  if (corpus.empty()) {
    throw Error(Errc::empty_corpus, "cannot fit tf-idf on an empty corpus");
  }
  std::map<std::string, std::size_t> df;
  std::size_t units = 0;
  auto count_unit = [&](const std::set<std::string_view>& terms) {
    for (auto term : terms) ++df[std::string(term)];
    ++units;
  };
  for (const auto& doc : corpus) {
    if (scope == TfIdfScope::per_document) {
      for (const auto& s : doc.sentences) {
        count_unit({s.tokens.begin(), s.tokens.end()});
      }
    } else {
      std::set<std::string_view> terms;
      for (const auto& s : doc.sentences) terms.insert(s.tokens.begin(), s.tokens.end());
      count_unit(terms);
    }
  }
  if (units == 0) {
    throw Error(Errc::empty_corpus, "corpus contains no sentences");
  }

  TfIdfModel model;
  model.doc_count = units;
  model.idf.reserve(df.size());
  const double n = static_cast<double>(units);
  for (const auto& [term, count] : df) {
    model.vocabulary.emplace(term, model.idf.size());
    model.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return model;
}

std::vector<SentenceVector> encode_tfidf(const TfIdfModel& model,
                                         const Document& doc,
                                         const EncodeOptions& options) {
  std::vector<SentenceVector> out;
  out.reserve(doc.size());
  for (const auto& s : doc.sentences) {
    SentenceVector v{std::vector<double>(model.dim(), 0.0)};
    for (const auto& token : s.tokens) {
      const auto it = model.vocabulary.find(token);
      if (it != model.vocabulary.end()) v.values[it->second] += 1.0;
    }
    double sq = 0.0;
    for (std::size_t col = 0; col < v.values.size(); ++col) {
      v.values[col] *= model.idf[col];
      sq += v.values[col] * v.values[col];
    }
    if (options.l2_normalize && sq > 0.0) {
      const double norm = std::sqrt(sq);
      for (auto& x : v.values) x /= norm;
    }
    out.push_back(std::move(v));
  }
  return out;
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  using nlohmann::json;
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open embeddings '" + path.string() + "'");
  }
  EmbeddingStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(Errc::format_error, std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("vectors") || !obj["vectors"].is_array()) {
      throw Error(Errc::format_error, "expected {\"id\", \"dim\", \"vectors\"}", line_no);
    }
    const auto id = obj["id"].get<std::string>();
    std::optional<std::size_t> dim;
    if (obj.contains("dim")) {
      if (!obj["dim"].is_number_unsigned() || obj["dim"].get<std::size_t>() == 0) {
        throw Error(Errc::format_error, "'dim' must be a positive integer", line_no);
      }
      dim = obj["dim"].get<std::size_t>();
    }
    std::vector<SentenceVector> vectors;
    for (const auto& row : obj["vectors"]) {
      if (!row.is_array()) {
        throw Error(Errc::format_error, "each vector must be an array", line_no);
      }
      SentenceVector v;
      v.values.reserve(row.size());
      for (const auto& x : row) {
        if (!x.is_number()) {
          throw Error(Errc::format_error, "vector entries must be numbers", line_no);
        }
        const double value = x.get<double>();
        if (!std::isfinite(value)) {
          throw Error(Errc::format_error, "vector entries must be finite", line_no);
        }
        v.values.push_back(value);
      }
      if (!dim) dim = v.dim();
      if (v.dim() != *dim || v.dim() == 0) {
        throw Error(Errc::dimension_mismatch,
                    "document '" + id + "': vector of dim " + std::to_string(v.dim()) +
                        ", expected " + std::to_string(*dim),
                    line_no);
      }
      vectors.push_back(std::move(v));
    }
    if (!store.entries_.emplace(id, std::move(vectors)).second) {
      throw Error(Errc::format_error, "duplicate document id '" + id + "'", line_no);
    }
  }
  return store;
}

std::vector<SentenceVector> EmbeddingStore::vectors_for(const Document& doc) const {
  const auto it = entries_.find(doc.id);
  if (it == entries_.end()) {
    throw Error(Errc::missing_document, "no embeddings for document '" + doc.id + "'");
  }
  if (it->second.size() != doc.size()) {
    throw Error(Errc::dimension_mismatch,
                "document '" + doc.id + "' has " + std::to_string(doc.size()) +
                    " sentences but " + std::to_string(it->second.size()) +
                    " vectors");
  }
  return it->second;
}

std::vector<SentenceVector> load_external_embeddings(
    const std::filesystem::path& path, const Document& doc) {
  return EmbeddingStore::load(path).vectors_for(doc);
}

}  // namespace mrsum

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mrsum/corpus.hpp"

namespace mrsum {

struct SentenceVector {
  std::vector<double> values;

  std::size_t dim() const noexcept { return values.size(); }
};

// What counts as one "document" when computing document frequencies.
enum class TfIdfScope {
  per_document,  // every sentence is a unit
  per_corpus,    // every Document is a unit
};

struct TfIdfModel {
  std::map<std::string, std::size_t> vocabulary;  // term -> column
  std::vector<double> idf;                        // indexed by column
  std::size_t doc_count = 0;

  std::size_t dim() const noexcept { return idf.size(); }
};

// Smoothed idf: ln((1 + N) / (1 + df)) + 1, always > 0. Columns follow the
// lexicographic order of the terms.
TfIdfModel fit_tfidf(std::span<const Document> corpus,
                     TfIdfScope scope = TfIdfScope::per_document);

struct EncodeOptions {
  bool l2_normalize = true;
};

// tf (raw count) times idf per vocabulary column; out-of-vocabulary tokens
// are ignored. Zero vectors stay zero under normalization.
std::vector<SentenceVector> encode_tfidf(const TfIdfModel& model,
                                         const Document& doc,
                                         const EncodeOptions& options = {});

// Precomputed embeddings keyed by document id, read from JSONL lines of the
// form {"id": "...", "dim": D, "vectors": [[...], ...]}.
class EmbeddingStore {
 public:
  static EmbeddingStore load(const std::filesystem::path& path);

  bool contains(const std::string& id) const { return entries_.count(id) > 0; }
  std::size_t size() const noexcept { return entries_.size(); }

  // One vector per sentence of `doc`, in sentence order, used as provided.
  std::vector<SentenceVector> vectors_for(const Document& doc) const;

 private:
  std::unordered_map<std::string, std::vector<SentenceVector>> entries_;
};

std::vector<SentenceVector> load_external_embeddings(
    const std::filesystem::path& path, const Document& doc);

}  // namespace mrsum

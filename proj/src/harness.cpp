#include "mrsum/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "mrsum/error.hpp"

namespace mrsum {

std::string_view to_string(EncoderKind kind) {
  return kind == EncoderKind::tfidf ? "tfidf" : "external";
}

EncoderKind parse_encoder(std::string_view name) {
  if (name == "tfidf") return EncoderKind::tfidf;
  if (name == "external") return EncoderKind::external;
  throw Error(Errc::invalid_argument, "unknown encoder '" + std::string(name) + "'");
}

namespace {

std::vector<SentenceVector> encode(const Document& doc, const EncoderChoice& encoder,
                                   const TfIdfModel* corpus_model) {
  if (encoder.kind == EncoderKind::external) {
    if (!encoder.embeddings) {
      throw Error(Errc::missing_embeddings, "external encoder without an embeddings file");
    }
    if (!encoder.embeddings->contains(doc.id)) {
      throw Error(Errc::missing_embeddings, "no embeddings for document '" + doc.id + "'");
    }
    return encoder.embeddings->vectors_for(doc);
  }
  const EncodeOptions options{encoder.l2_normalize};
  if (corpus_model != nullptr) return encode_tfidf(*corpus_model, doc, options);
  const auto model = fit_tfidf(std::span<const Document>(&doc, 1), encoder.scope);
  return encode_tfidf(model, doc, options);
}

}  // namespace

DocumentSummary summarize_document(const Document& doc, const SummarizerConfig& config,
                                   const EncoderChoice& encoder,
                                   const TfIdfModel* corpus_model) {
  config.validate();
  if (doc.sentences.empty()) {
    throw Error(Errc::empty_input, "document '" + doc.id + "' has no sentences");
  }
  DocumentSummary out;
  if (config.method == Method::lead3) {
    out.indices = select_lead(doc, config.k);
    out.selection_order = out.indices;
    return out;
  }
  if (doc.size() == 1) {
    out.indices = {0};
    out.selection_order = {0};
    return out;
  }

  const auto vectors = encode(doc, encoder, corpus_model);
  auto raw = build_similarity_matrix(vectors, encoder.similarity);
  auto graph = apply_threshold(raw, compute_threshold(raw, config.a));

  switch (config.method) {
    case Method::textrank: {
      auto result = textrank_scores(graph, config.textrank);
      out.selection_order = top_k(ImportanceVector{result.ranks, 1}, config.k);
      out.textrank = std::move(result);
      break;
    }
    case Method::pacsum: {
      out.selection_order = rank_pacsum(graph, config);
      if (out.selection_order.size() > config.k) out.selection_order.resize(config.k);
      break;
    }
    case Method::multiround: {
      auto state = run_multi_round(graph, config);
      out.selection_order = state.selected();
      out.trace = state.trace();
      break;
    }
    case Method::lead3:
      break;
  }
  out.indices = out.selection_order;
  std::sort(out.indices.begin(), out.indices.end());
  out.raw_graph = std::move(raw);
  out.graph = std::move(graph);
  return out;
}

std::vector<std::string> summary_sentences(const Document& doc,
                                           const std::vector<std::size_t>& indices) {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(doc.sentences.at(i).raw);
  return out;
}

RougeTriple mean_scores(const std::vector<DocScore>& per_doc) {
  RougeTriple mean;
  if (per_doc.empty()) return mean;
  auto accumulate = [&](RougeScore RougeTriple::*member) {
    RougeScore& acc = mean.*member;
    double p = 0.0, r = 0.0, f = 0.0;
    for (const auto& d : per_doc) {
      p += (d.scores.*member).precision;
      r += (d.scores.*member).recall;
      f += (d.scores.*member).f1;
    }
    const double count = static_cast<double>(per_doc.size());
    acc.precision = p / count;
    acc.recall = r / count;
    acc.f1 = f / count;
  };
  accumulate(&RougeTriple::r1);
  accumulate(&RougeTriple::r2);
  accumulate(&RougeTriple::rl);
  return mean;
}

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. If any call
// throws, the exception of the lowest failing index is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace

EvalResult evaluate_method(const DatasetSplit& split, const SummarizerConfig& config,
                           const EncoderChoice& encoder, std::size_t jobs) {
  if (split.records.empty()) {
    throw Error(Errc::empty_split, "cannot evaluate on an empty split");
  }
  config.validate();

  std::optional<TfIdfModel> corpus_model;
  if (encoder.kind == EncoderKind::tfidf && encoder.scope == TfIdfScope::per_corpus &&
      config.method != Method::lead3) {
    corpus_model = fit_tfidf(split.records, TfIdfScope::per_corpus);
  }

  EvalResult result;
  result.label = std::string(to_string(config.method));
  result.method = config.method;
  result.config = config;
  result.encoder = encoder;
  result.per_doc.resize(split.records.size());
  parallel_for(split.records.size(), jobs, [&](std::size_t i) {
    const Document& doc = split.records[i];
    if (!doc.reference_summary) {
      throw Error(Errc::format_error, "document '" + doc.id + "' has no reference summary");
    }
    const auto summary =
        summarize_document(doc, config, encoder, corpus_model ? &*corpus_model : nullptr);
    result.per_doc[i] = {doc.id, score_summary(summary_sentences(doc, summary.indices),
                                               *doc.reference_summary, doc.lang)};
  });
  result.doc_count = result.per_doc.size();
  result.aggregate = mean_scores(result.per_doc);
  return result;
}

ordered_json to_json(const SummarizerConfig& config) {
  ordered_json j;
  j["method"] = to_string(config.method);
  j["k"] = config.k;
  j["a"] = config.a;
  j["beta1"] = config.beta1;
  j["beta2"] = config.beta2;
  j["alpha1"] = config.alpha1;
  j["alpha2"] = config.alpha2;
  j["damping"] = config.textrank.damping;
  j["max_iter"] = config.textrank.max_iter;
  j["tol"] = config.textrank.tol;
  return j;
}

ordered_json to_json(const RougeScore& score) {
  ordered_json j;
  j["p"] = score.precision;
  j["r"] = score.recall;
  j["f1"] = score.f1;
  return j;
}

namespace {

ordered_json to_json(const EncoderChoice& encoder) {
  ordered_json j;
  j["kind"] = to_string(encoder.kind);
  if (encoder.kind == EncoderKind::tfidf) {
    j["scope"] = encoder.scope == TfIdfScope::per_document ? "per-document" : "per-corpus";
    j["l2_normalize"] = encoder.l2_normalize;
  }
  j["similarity"] =
      encoder.similarity == SimilarityKind::inner_product ? "inner_product" : "cosine";
  return j;
}

ordered_json to_json(const RougeTriple& triple) {
  ordered_json j;
  j["r1"] = to_json(triple.r1);
  j["r2"] = to_json(triple.r2);
  j["rl"] = to_json(triple.rl);
  return j;
}

RougeScore score_from_json(const nlohmann::json& j, RougeVariant variant) {
  return {j.at("p").get<double>(), j.at("r").get<double>(), j.at("f1").get<double>(),
          variant};
}

RougeTriple triple_from_json(const nlohmann::json& j) {
  return {score_from_json(j.at("r1"), RougeVariant::rouge1),
          score_from_json(j.at("r2"), RougeVariant::rouge2),
          score_from_json(j.at("rl"), RougeVariant::rougeL)};
}

}  // namespace

ordered_json to_json(const EvalResult& result, bool include_per_doc) {
  ordered_json j;
  j["label"] = result.label;
  j["method"] = to_string(result.method);
  j["config"] = to_json(result.config);
  j["encoder"] = to_json(result.encoder);
  j["aggregate"] = to_json(result.aggregate);
  j["doc_count"] = result.doc_count;
  if (!result.notes.empty()) {
    ordered_json notes = ordered_json::object();
    for (const auto& [key, value] : result.notes) notes[key] = value;
    j["notes"] = std::move(notes);
  }
  if (include_per_doc) {
    ordered_json docs = ordered_json::array();
    for (const auto& d : result.per_doc) {
      for (auto variant : {RougeVariant::rouge1, RougeVariant::rouge2, RougeVariant::rougeL}) {
        const auto& s = d.scores.get(variant);
        ordered_json rec;
        rec["doc_id"] = d.doc_id;
        rec["variant"] = to_string(variant);
        rec["precision"] = s.precision;
        rec["recall"] = s.recall;
        rec["f1"] = s.f1;
        docs.push_back(std::move(rec));
      }
    }
    j["per_doc"] = std::move(docs);
  }
  return j;
}

void apply_config_json(SummarizerConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::format_error, "config must be a JSON object");
  try {
    if (j.contains("method")) config.method = parse_method(j["method"].get<std::string>());
    if (j.contains("k")) config.k = j["k"].get<std::size_t>();
    if (j.contains("a")) config.a = j["a"].get<double>();
    if (j.contains("beta1")) config.beta1 = j["beta1"].get<double>();
    if (j.contains("beta2")) config.beta2 = j["beta2"].get<double>();
    if (j.contains("alpha1")) config.alpha1 = j["alpha1"].get<double>();
    if (j.contains("alpha2")) config.alpha2 = j["alpha2"].get<double>();
    if (j.contains("damping")) config.textrank.damping = j["damping"].get<double>();
    if (j.contains("max_iter")) config.textrank.max_iter = j["max_iter"].get<std::size_t>();
    if (j.contains("tol")) config.textrank.tol = j["tol"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format_error, std::string("bad config value: ") + e.what());
  }
}

EvalResult eval_result_from_json(const nlohmann::json& j) {
  try {
    EvalResult result;
    result.method = parse_method(j.at("method").get<std::string>());
    result.label = j.value("label", std::string(to_string(result.method)));
    apply_config_json(result.config, j.at("config"));
    if (j.contains("encoder")) {
      const auto& enc = j["encoder"];
      result.encoder.kind = parse_encoder(enc.at("kind").get<std::string>());
      result.encoder.scope = enc.value("scope", "per-document") == "per-corpus"
                                 ? TfIdfScope::per_corpus
                                 : TfIdfScope::per_document;
      result.encoder.l2_normalize = enc.value("l2_normalize", true);
      result.encoder.similarity = enc.value("similarity", "inner_product") == "cosine"
                                      ? SimilarityKind::cosine
                                      : SimilarityKind::inner_product;
    }
    result.aggregate = triple_from_json(j.at("aggregate"));
    result.doc_count = j.at("doc_count").get<std::size_t>();
    if (j.contains("notes")) {
      for (const auto& [key, value] : j["notes"].items()) {
        result.notes[key] = value.get<std::string>();
      }
    }
    if (j.contains("per_doc")) {
      for (const auto& rec : j["per_doc"]) {
        const auto id = rec.at("doc_id").get<std::string>();
        const auto variant = rec.at("variant").get<std::string>();
        if (result.per_doc.empty() || result.per_doc.back().doc_id != id ||
            variant == "rouge1") {
          result.per_doc.push_back({id, {}});
        }
        RougeScore s{rec.at("precision").get<double>(), rec.at("recall").get<double>(),
                     rec.at("f1").get<double>(), RougeVariant::rouge1};
        auto& triple = result.per_doc.back().scores;
        if (variant == "rouge1") {
          triple.r1 = s;
        } else if (variant == "rouge2") {
          s.variant = RougeVariant::rouge2;
          triple.r2 = s;
        } else if (variant == "rougeL") {
          s.variant = RougeVariant::rougeL;
          triple.rl = s;
        } else {
          throw Error(Errc::format_error, "unknown ROUGE variant '" + variant + "'");
        }
      }
    }
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format_error, std::string("bad evaluation report: ") + e.what());
  }
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::rouge1_f1: return "r1";
    case Objective::rouge2_f1: return "r2";
    case Objective::rougeL_f1: return "rl";
  }
  return "r1";
}

Objective parse_objective(std::string_view name) {
  if (name == "r1" || name == "mean_rouge1_f1") return Objective::rouge1_f1;
  if (name == "r2" || name == "mean_rouge2_f1") return Objective::rouge2_f1;
  if (name == "rl" || name == "mean_rougeL_f1") return Objective::rougeL_f1;
  throw Error(Errc::invalid_argument, "unknown objective '" + std::string(name) + "'");
}

double objective_value(const EvalResult& result, Objective objective) {
  switch (objective) {
    case Objective::rouge1_f1: return result.aggregate.r1.f1;
    case Objective::rouge2_f1: return result.aggregate.r2.f1;
    case Objective::rougeL_f1: return result.aggregate.rl.f1;
  }
  return result.aggregate.r1.f1;
}

namespace {

bool contains(const std::vector<double>& axis, double value) {
  return std::find(axis.begin(), axis.end(), value) != axis.end();
}

std::vector<double> sorted_unique(std::vector<double> axis) {
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  return axis;
}

}  // namespace

bool GridSpec::has_reduction_point() const {
  for (double b1 : beta1) {
    for (double b2 : beta2) {
      if (contains(alpha1, b2) && contains(alpha2, b1)) return true;
    }
  }
  return false;
}

bool GridSpec::covers_all_reduction_points() const {
  return std::all_of(beta2.begin(), beta2.end(), [&](double b) { return contains(alpha1, b); }) &&
         std::all_of(beta1.begin(), beta1.end(), [&](double b) { return contains(alpha2, b); });
}

void GridSpec::add_reduction_points() {
  for (double b : beta2) {
    if (!contains(alpha1, b)) alpha1.push_back(b);
  }
  for (double b : beta1) {
    if (!contains(alpha2, b)) alpha2.push_back(b);
  }
}

void GridSpec::validate(Method method) const {
  for (const auto* axis : {&a, &beta1, &beta2, &alpha1, &alpha2}) {
    if (axis->empty()) throw Error(Errc::invalid_grid, "every grid axis needs a value");
    for (double v : *axis) {
      if (!std::isfinite(v)) throw Error(Errc::invalid_grid, "grid values must be finite");
    }
  }
  for (double v : a) {
    if (v < 0.0 || v > 1.0) throw Error(Errc::invalid_grid, "grid values of a must lie in [0, 1]");
  }
  if (method == Method::multiround && !has_reduction_point()) {
    throw Error(Errc::invalid_grid,
                "multiround grid must contain a point with alpha1 = beta2 and alpha2 = beta1");
  }
}

GridSpec grid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::format_error, "grid must be a JSON object");
  GridSpec grid;
  try {
    auto axis = [&](const char* key) {
      if (!j.contains(key)) {
        throw Error(Errc::invalid_grid, std::string("grid is missing axis '") + key + "'");
      }
      const auto& v = j[key];
      return v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
    };
    grid.a = axis("a");
    grid.beta1 = axis("beta1");
    grid.beta2 = axis("beta2");
    grid.alpha1 = axis("alpha1");
    grid.alpha2 = axis("alpha2");
    if (j.contains("objective")) {
      grid.objective = parse_objective(j["objective"].get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format_error, std::string("bad grid: ") + e.what());
  }
  return grid;
}

ordered_json to_json(const GridSpec& grid) {
  ordered_json j;
  j["a"] = grid.a;
  j["beta1"] = grid.beta1;
  j["beta2"] = grid.beta2;
  j["alpha1"] = grid.alpha1;
  j["alpha2"] = grid.alpha2;
  j["objective"] = to_string(grid.objective);
  return j;
}

std::vector<SummarizerConfig> expand_grid(const GridSpec& grid, const SummarizerConfig& base) {
  const Method m = base.method;
  auto axis = [&](const std::vector<double>& values, double held, bool used) {
    return used ? sorted_unique(values) : std::vector<double>{held};
  };
  const bool graph_based = m != Method::lead3;
  const bool uses_beta = m == Method::pacsum || m == Method::multiround;
  const bool uses_alpha = m == Method::multiround;
  const auto as = axis(grid.a, base.a, graph_based);
  const auto b1s = axis(grid.beta1, base.beta1, uses_beta);
  const auto b2s = axis(grid.beta2, base.beta2, uses_beta);
  const auto a1s = axis(grid.alpha1, base.alpha1, uses_alpha);
  const auto a2s = axis(grid.alpha2, base.alpha2, uses_alpha);

  std::vector<SummarizerConfig> out;
  out.reserve(as.size() * b1s.size() * b2s.size() * a1s.size() * a2s.size());
  for (double a : as) {
    for (double b1 : b1s) {
      for (double b2 : b2s) {
        for (double a1 : a1s) {
          for (double a2 : a2s) {
            SummarizerConfig c = base;
            c.a = a;
            c.beta1 = b1;
            c.beta2 = b2;
            c.alpha1 = a1;
            c.alpha2 = a2;
            out.push_back(c);
          }
        }
      }
    }
  }
  return out;
}

TuneResult grid_search(const DatasetSplit& validation, const GridSpec& grid,
                       const SummarizerConfig& base, const EncoderChoice& encoder,
                       std::size_t jobs, const std::function<void(const GridPoint&)>& on_point) {
  grid.validate(base.method);
  if (validation.records.empty()) {
    throw Error(Errc::empty_split, "cannot tune on an empty split");
  }
  TuneResult result;
  bool have_best = false;
  double best_value = 0.0;
  for (const auto& config : expand_grid(grid, base)) {
    auto eval = evaluate_method(validation, config, encoder, jobs);
    GridPoint point{config, objective_value(eval, grid.objective), eval.aggregate};
    if (on_point) on_point(point);
    if (!have_best || point.objective > best_value) {
      have_best = true;
      best_value = point.objective;
      result.best = config;
      result.best_result = std::move(eval);
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

DatasetSplit take_prefix(const DatasetSplit& split, std::size_t count) {
  DatasetSplit out;
  out.name = split.name;
  const auto n = std::min(count, split.records.size());
  out.records.assign(split.records.begin(),
                     split.records.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

DatasetSplit take_fraction(const DatasetSplit& split, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(Errc::out_of_range, "tuning fraction must lie in (0, 1]");
  }
  const auto total = static_cast<double>(split.records.size());
  const auto count = static_cast<std::size_t>(std::ceil(fraction * total));
  return take_prefix(split, std::max<std::size_t>(count, 1));
}

CompareReport compare_report(const std::vector<EvalResult>& results) {
  if (results.empty()) {
    throw Error(Errc::invalid_argument, "nothing to compare");
  }
  CompareReport report;
  report.table = "method\tR-1\tR-2\tR-L\n";
  report.json = ordered_json::array();
  char buf[96];
  for (const auto& r : results) {
    if (r.per_doc.empty()) {
      throw Error(Errc::invalid_argument,
                  "result '" + r.label + "' has no per-document scores");
    }
    std::snprintf(buf, sizeof buf, "\t%.1f\t%.1f\t%.1f\n", r.aggregate.r1.f1 * 100.0,
                  r.aggregate.r2.f1 * 100.0, r.aggregate.rl.f1 * 100.0);
    report.table += r.label;
    report.table += buf;
    report.json.push_back(to_json(r, false));
  }
  return report;
}

}  // namespace mrsum

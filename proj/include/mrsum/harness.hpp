#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrsum/corpus.hpp"
#include "mrsum/encoder.hpp"
#include "mrsum/rouge.hpp"
#include "mrsum/simgraph.hpp"
#include "mrsum/summarizer.hpp"

namespace mrsum {

using ordered_json = nlohmann::ordered_json;

enum class EncoderKind { tfidf, external };

std::string_view to_string(EncoderKind kind);
EncoderKind parse_encoder(std::string_view name);

struct EncoderChoice {
  EncoderKind kind = EncoderKind::tfidf;
  TfIdfScope scope = TfIdfScope::per_document;
  bool l2_normalize = true;
  SimilarityKind similarity = SimilarityKind::inner_product;
  // Required when kind == external.
  std::shared_ptr<const EmbeddingStore> embeddings;
};

struct DocumentSummary {
  std::vector<std::size_t> indices;          // document order
  std::vector<std::size_t> selection_order;  // multiround / ranking order
  std::vector<ImportanceVector> trace;       // multiround only
  std::optional<SimilarityGraph> raw_graph;
  std::optional<SimilarityGraph> graph;      // thresholded
  std::optional<TextRankResult> textrank;
};

// encode -> build graph -> threshold -> select. Single-sentence documents
// summarize to that sentence. `corpus_model` is used for per-corpus tf-idf
// scope and fitted on `doc` alone when absent.
DocumentSummary summarize_document(const Document& doc, const SummarizerConfig& config,
                                   const EncoderChoice& encoder,
                                   const TfIdfModel* corpus_model = nullptr);

std::vector<std::string> summary_sentences(const Document& doc,
                                           const std::vector<std::size_t>& indices);

struct DocScore {
  std::string doc_id;
  RougeTriple scores;
};

struct EvalResult {
  std::string label;  // row name in comparison tables; defaults to the method
  Method method = Method::multiround;
  SummarizerConfig config;
  EncoderChoice encoder;
  std::vector<DocScore> per_doc;
  RougeTriple aggregate;
  std::size_t doc_count = 0;
  // Free-form provenance echoed into reports (e.g. tuning subset).
  std::map<std::string, std::string> notes;
};

// Arithmetic mean of each p/r/f1 component, accumulated in document order.
RougeTriple mean_scores(const std::vector<DocScore>& per_doc);

// Scores every document of the split. With jobs > 1 documents are processed
// concurrently; results are stored and aggregated in document order, so the
// outcome does not depend on `jobs`. Throws empty_split for an empty split.
EvalResult evaluate_method(const DatasetSplit& split, const SummarizerConfig& config,
                           const EncoderChoice& encoder, std::size_t jobs = 1);

ordered_json to_json(const SummarizerConfig& config);
ordered_json to_json(const RougeScore& score);
ordered_json to_json(const EvalResult& result, bool include_per_doc = true);

// Applies the keys present in `j` (k, a, beta1, beta2, alpha1, alpha2,
// method, damping, max_iter, tol) on top of `config`.
void apply_config_json(SummarizerConfig& config, const nlohmann::json& j);

// Reads back the output of to_json(EvalResult).
EvalResult eval_result_from_json(const nlohmann::json& j);

enum class Objective { rouge1_f1, rouge2_f1, rougeL_f1 };

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view name);
double objective_value(const EvalResult& result, Objective objective);

struct GridSpec {
  std::vector<double> a;
  std::vector<double> beta1;
  std::vector<double> beta2;
  std::vector<double> alpha1;
  std::vector<double> alpha2;
  Objective objective = Objective::rouge1_f1;

  // True if some (beta1, beta2) of the grid has alpha1 = beta2 and
  // alpha2 = beta1 available.
  bool has_reduction_point() const;
  // True if every (beta1, beta2) pair of the grid has its reduction point.
  bool covers_all_reduction_points() const;
  // Adds every beta2 value to alpha1 and every beta1 value to alpha2.
  void add_reduction_points();

  // Throws invalid_grid for empty axes, values of `a` outside [0, 1], or a
  // multiround grid without a reduction point.
  void validate(Method method) const;
};

GridSpec grid_from_json(const nlohmann::json& j);
ordered_json to_json(const GridSpec& grid);

struct GridPoint {
  SummarizerConfig config;
  double objective = 0.0;
  RougeTriple aggregate;
};

struct TuneResult {
  SummarizerConfig best;
  EvalResult best_result;
  std::vector<GridPoint> points;  // evaluation order
};

// Configurations the grid expands to for `base.method`, in lexicographic
// order of (a, beta1, beta2, alpha1, alpha2) with each axis sorted
// ascending. Axes the method ignores are held at the base value.
std::vector<SummarizerConfig> expand_grid(const GridSpec& grid, const SummarizerConfig& base);

// Evaluates every grid configuration and keeps the best objective; the
// first configuration in expansion order wins ties.
TuneResult grid_search(const DatasetSplit& validation, const GridSpec& grid,
                       const SummarizerConfig& base, const EncoderChoice& encoder,
                       std::size_t jobs = 1,
                       const std::function<void(const GridPoint&)>& on_point = {});

// First `count` records (all of them if count >= size).
DatasetSplit take_prefix(const DatasetSplit& split, std::size_t count);
// First ceil(fraction * size) records, at least one. 0 < fraction <= 1.
DatasetSplit take_fraction(const DatasetSplit& split, double fraction);

struct CompareReport {
  std::string table;  // TSV: method, R-1, R-2, R-L as F1 x 100, one decimal
  ordered_json json;
};

// Throws invalid_argument for an empty list or a result without per-doc
// scores.
CompareReport compare_report(const std::vector<EvalResult>& results);

}  // namespace mrsum

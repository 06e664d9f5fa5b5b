#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "mrsum/corpus.hpp"
#include "mrsum/simgraph.hpp"

namespace mrsum {

enum class Method { lead3, textrank, pacsum, multiround };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct TextRankOptions {
  double damping = 0.85;
  std::size_t max_iter = 100;
  double tol = 1e-6;
};

struct SummarizerConfig {
  std::size_t k = 3;
  double a = 0.6;
  double beta1 = 1.0;   // forward edges, sim(i, j) with j > i
  double beta2 = 0.0;   // backward edges, sim(k, i) with k < i
  double alpha1 = 0.0;  // scales sim(s, j), j > s, once s is selected
  double alpha2 = 0.0;  // scales sim(k, s), k < s, once s is selected
  Method method = Method::multiround;
  TextRankOptions textrank;

  // Throws invalid_argument / out_of_range on k == 0, a outside [0, 1] or
  // non-finite weights.
  void validate() const;
};

// Per-sentence importance for one round. Sentences outside the scored set
// hold NaN (see defined()).
struct ImportanceVector {
  std::vector<double> scores;
  std::size_t round = 1;

  bool defined(std::size_t i) const;
  // Highest defined score, ties to the lowest index. Requires at least one
  // defined entry.
  std::size_t argmax() const;
};

// im_i = beta1 * sum_{j > i, j in over} sim(i, j)
//      + beta2 * sum_{k < i, k in over} sim(k, i)   for i in `over`.
// `over` is a membership mask of size graph.size().
ImportanceVector base_importance(const SimilarityGraph& graph, double beta1,
                                 double beta2, const std::vector<bool>& over);

// Indices of the k highest scores (ties to lowest index) in rank order.
std::vector<std::size_t> top_k(const ImportanceVector& importance, std::size_t k);

// Full single-round ranking: every sentence ordered by base importance.
std::vector<std::size_t> rank_pacsum(const SimilarityGraph& graph,
                                     const SummarizerConfig& config);

// Single-round top-k, returned in document order.
std::vector<std::size_t> select_pacsum(const SimilarityGraph& graph,
                                       const SummarizerConfig& config);

// Working state of a multi-round selection.
class SelectionState {
 public:
  explicit SelectionState(SimilarityGraph graph);

  std::size_t size() const noexcept { return working_.size(); }
  const std::vector<std::size_t>& selected() const noexcept { return selected_; }
  bool is_selected(std::size_t i) const { return chosen_[i]; }
  const std::vector<bool>& remaining_mask() const noexcept { return remaining_; }
  std::size_t remaining_count() const noexcept { return size() - selected_.size(); }
  const SimilarityGraph& working_sim() const noexcept { return working_; }
  const std::vector<ImportanceVector>& trace() const noexcept { return trace_; }

  // Moves `s` from remaining to selected without touching the matrix.
  void mark_selected(std::size_t s);
  void record(ImportanceVector importance) { trace_.push_back(std::move(importance)); }

 private:
  friend void dampen_selected(SelectionState&, std::size_t, double, double);

  SimilarityGraph working_;
  std::vector<std::size_t> selected_;
  std::vector<bool> chosen_;
  std::vector<bool> remaining_;
  std::vector<bool> dampened_;
  std::vector<ImportanceVector> trace_;
};

// sim(s, j) *= alpha1 for j > s and sim(k, s) *= alpha2 for k < s in the
// working matrix. Throws already_dampened if `s` was dampened before.
void dampen_selected(SelectionState& state, std::size_t s, double alpha1, double alpha2);

// Score of every remaining candidate c after at least one pick:
//   beta1/beta2-weighted sums over edges to other remaining sentences, plus
//   the (already dampened) working values of edges to selected sentences
//   with coefficient 1.
ImportanceVector round_importance(const SelectionState& state,
                                  const SummarizerConfig& config);

// Runs min(k, n) rounds and returns the final state; selected() holds the
// selection order, trace() the per-round scores.
SelectionState run_multi_round(const SimilarityGraph& graph,
                               const SummarizerConfig& config);

// Multi-round summary in document order.
std::vector<std::size_t> select_multi_round(const SimilarityGraph& graph,
                                            const SummarizerConfig& config);

std::vector<std::size_t> select_lead(std::size_t sentence_count, std::size_t k);
std::vector<std::size_t> select_lead(const Document& doc, std::size_t k);

struct TextRankResult {
  std::vector<double> ranks;
  std::size_t iterations = 0;
  bool converged = false;
};

// Weighted PageRank on the undirected graph. Negative weights are treated
// as missing edges; nodes with zero out-weight spread their rank uniformly.
TextRankResult textrank_scores(const SimilarityGraph& graph,
                               const TextRankOptions& options = {});

std::vector<std::size_t> select_textrank(const SimilarityGraph& graph,
                                         const TextRankOptions& options,
                                         std::size_t k);

}  // namespace mrsum

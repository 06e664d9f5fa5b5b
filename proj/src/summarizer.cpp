#include "mrsum/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mrsum/error.hpp"

namespace mrsum {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::lead3: return "lead3";
    case Method::textrank: return "textrank";
    case Method::pacsum: return "pacsum";
    case Method::multiround: return "multiround";
  }
  return "multiround";
}

Method parse_method(std::string_view name) {
  if (name == "lead3" || name == "lead") return Method::lead3;
  if (name == "textrank") return Method::textrank;
  if (name == "pacsum") return Method::pacsum;
  if (name == "multiround") return Method::multiround;
  throw Error(Errc::invalid_argument, "unknown method '" + std::string(name) + "'");
}

void SummarizerConfig::validate() const {
  if (k == 0) throw Error(Errc::invalid_argument, "k must be at least 1");
  if (!(a >= 0.0 && a <= 1.0)) {
    throw Error(Errc::out_of_range, "threshold parameter a must lie in [0, 1]");
  }
  for (double w : {beta1, beta2, alpha1, alpha2}) {
    if (!std::isfinite(w)) {
      throw Error(Errc::invalid_argument, "beta/alpha weights must be finite");
    }
  }
  if (!(textrank.damping > 0.0 && textrank.damping < 1.0)) {
    throw Error(Errc::out_of_range, "textrank damping must lie in (0, 1)");
  }
  if (!(textrank.tol > 0.0)) {
    throw Error(Errc::invalid_argument, "textrank tolerance must be positive");
  }
}

bool ImportanceVector::defined(std::size_t i) const { return !std::isnan(scores[i]); }

std::size_t ImportanceVector::argmax() const {
  std::size_t best = scores.size();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!defined(i)) continue;
    if (best == scores.size() || scores[i] > scores[best]) best = i;
  }
  if (best == scores.size()) {
    throw Error(Errc::invalid_argument, "no candidate left to select");
  }
  return best;
}

ImportanceVector base_importance(const SimilarityGraph& graph, double beta1,
                                 double beta2, const std::vector<bool>& over) {
  const std::size_t n = graph.size();
  ImportanceVector out;
  out.scores.assign(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < n; ++i) {
    if (!over[i]) continue;
    double forward = 0.0;
    double backward = 0.0;
    for (std::size_t k = 0; k < i; ++k) {
      if (over[k]) backward += graph.at(k, i);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (over[j]) forward += graph.at(i, j);
    }
    out.scores[i] = beta1 * forward + beta2 * backward;
  }
  return out;
}

std::vector<std::size_t> top_k(const ImportanceVector& importance, std::size_t k) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < importance.scores.size(); ++i) {
    if (importance.defined(i)) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return importance.scores[x] > importance.scores[y];
  });
  if (order.size() > k) order.resize(k);
  return order;
}

std::vector<std::size_t> rank_pacsum(const SimilarityGraph& graph,
                                     const SummarizerConfig& config) {
  const std::vector<bool> all(graph.size(), true);
  const auto importance = base_importance(graph, config.beta1, config.beta2, all);
  return top_k(importance, graph.size());
}

std::vector<std::size_t> select_pacsum(const SimilarityGraph& graph,
                                       const SummarizerConfig& config) {
  auto ranked = rank_pacsum(graph, config);
  if (ranked.size() > config.k) ranked.resize(config.k);
  std::sort(ranked.begin(), ranked.end());
  return ranked;
}

SelectionState::SelectionState(SimilarityGraph graph)
    : working_(std::move(graph)),
      chosen_(working_.size(), false),
      remaining_(working_.size(), true),
      dampened_(working_.size(), false) {}

void SelectionState::mark_selected(std::size_t s) {
  if (s >= size() || chosen_[s]) {
    throw Error(Errc::invalid_argument,
                "sentence " + std::to_string(s) + " cannot be selected");
  }
  chosen_[s] = true;
  remaining_[s] = false;
  selected_.push_back(s);
}

void dampen_selected(SelectionState& state, std::size_t s, double alpha1, double alpha2) {
  if (s >= state.size()) {
    throw Error(Errc::invalid_argument, "sentence index out of range");
  }
  if (state.dampened_[s]) {
    throw Error(Errc::already_dampened,
                "edges of sentence " + std::to_string(s) + " were already dampened");
  }
  auto& sim = state.working_;
  for (std::size_t j = s + 1; j < sim.size(); ++j) sim.at(s, j) *= alpha1;
  for (std::size_t k = 0; k < s; ++k) sim.at(k, s) *= alpha2;
  state.dampened_[s] = true;
}

ImportanceVector round_importance(const SelectionState& state,
                                  const SummarizerConfig& config) {
  const auto& sim = state.working_sim();
  const auto& remaining = state.remaining_mask();
  const std::size_t n = sim.size();
  ImportanceVector out;
  out.scores.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.round = state.selected().size() + 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (!remaining[c]) continue;
    double forward = 0.0;
    double backward = 0.0;
    double to_selected = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      (remaining[k] ? backward : to_selected) += sim.at(k, c);
    }
    for (std::size_t j = c + 1; j < n; ++j) {
      (remaining[j] ? forward : to_selected) += sim.at(c, j);
    }
    out.scores[c] = config.beta1 * forward + config.beta2 * backward + to_selected;
  }
  return out;
}

SelectionState run_multi_round(const SimilarityGraph& graph,
                               const SummarizerConfig& config) {
  SelectionState state(graph);
  const std::size_t picks = std::min(config.k, graph.size());
  for (std::size_t round = 1; round <= picks; ++round) {
    ImportanceVector importance =
        round == 1 ? base_importance(graph, config.beta1, config.beta2,
                                     state.remaining_mask())
                   : round_importance(state, config);
    importance.round = round;
    const std::size_t pick = importance.argmax();
    state.record(std::move(importance));
    state.mark_selected(pick);
    dampen_selected(state, pick, config.alpha1, config.alpha2);
  }
  return state;
}

std::vector<std::size_t> select_multi_round(const SimilarityGraph& graph,
                                            const SummarizerConfig& config) {
  auto picked = run_multi_round(graph, config).selected();
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<std::size_t> select_lead(std::size_t sentence_count, std::size_t k) {
  std::vector<std::size_t> out(std::min(sentence_count, k));
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

std::vector<std::size_t> select_lead(const Document& doc, std::size_t k) {
  return select_lead(doc.size(), k);
}

TextRankResult textrank_scores(const SimilarityGraph& graph,
                               const TextRankOptions& options) {
  const std::size_t n = graph.size();
  TextRankResult result;
  if (n == 0) {
    result.converged = true;
    return result;
  }
  auto weight = [&](std::size_t i, std::size_t j) {
    return std::max(graph.edge(i, j), 0.0);
  };
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) out_weight[i] += weight(i, j);
    }
  }

  const double nd = static_cast<double>(n);
  const double d = options.damping;
  std::vector<double> rank(n, 1.0 / nd);
  std::vector<double> next(n);
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out_weight[j] <= 0.0) dangling += rank[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double inflow = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || out_weight[j] <= 0.0) continue;
        inflow += weight(i, j) / out_weight[j] * rank[j];
      }
      next[i] = (1.0 - d) / nd + d * (inflow + dangling / nd);
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - rank[i]);
    rank.swap(next);
    result.iterations = iter;
    if (change < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.ranks = std::move(rank);
  return result;
}

std::vector<std::size_t> select_textrank(const SimilarityGraph& graph,
                                         const TextRankOptions& options,
                                         std::size_t k) {
  const auto result = textrank_scores(graph, options);
  ImportanceVector importance{result.ranks, 1};
  auto picked = top_k(importance, k);
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace mrsum

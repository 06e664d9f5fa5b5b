// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mrsum/harness.hpp"
#include "oracle/naive_selector.hpp"
#include "test_support.hpp"

using namespace mrsum;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* name;
  double time_limit_s;  // 0 = untimed
  std::function<Verdict()> run;
};

SummarizerConfig weights(double b1, double b2, double a1, double a2, std::size_t k) {
  SummarizerConfig c;
  c.beta1 = b1;
  c.beta2 = b2;
  c.alpha1 = a1;
  c.alpha2 = a2;
  c.k = k;
  return c;
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

DatasetSplit mini_corpus() { return load_dataset(MRSUM_TEST_DATA "/mini_corpus.jsonl"); }

// 1000 random thresholded graphs with n in [2, 30] and k in [1, 5].
template <typename Fn>
void for_random_graphs(std::uint64_t seed, int count, Fn&& fn) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> n_dist(2, 30);
  std::uniform_int_distribution<std::size_t> k_dist(1, 5);
  std::uniform_real_distribution<double> a_dist(0.0, 1.0);
  for (int t = 0; t < count; ++t) {
    const std::size_t n = n_dist(rng);
    const std::size_t k = k_dist(rng);
    const auto m = oracle::random_thresholded(rng, n, a_dist(rng));
    fn(rng, m, k);
  }
}

Verdict reduction_to_pacsum() {
  int mismatches = 0;
  int graphs = 0;
  std::uniform_real_distribution<double> beta(0.0, 2.0);
  for_random_graphs(20211, 1000, [&](std::mt19937_64& rng, const oracle::Matrix& m, std::size_t k) {
    ++graphs;
    const auto g = testing::to_graph(m);
    const double b1 = beta(rng), b2 = beta(rng);
    const auto cfg = weights(b1, b2, b2, b1, k);
    const auto rounds = run_multi_round(g, cfg).selected();
    auto ranking = rank_pacsum(g, cfg);
    ranking.resize(std::min(k, g.size()));
    if (rounds != ranking || select_multi_round(g, cfg) != select_pacsum(g, cfg)) ++mismatches;
  });
  return {mismatches == 0, fmt("%d graphs, %d mismatches", graphs, mismatches)};
}

Verdict incremental_vs_naive() {
  int mismatches = 0;
  int graphs = 0;
  double worst = 0.0;
  std::uniform_real_distribution<double> beta(0.0, 2.0);
  std::uniform_real_distribution<double> alpha(-2.0, 2.0);
  for_random_graphs(7331, 1000, [&](std::mt19937_64& rng, const oracle::Matrix& m, std::size_t k) {
    ++graphs;
    const double b1 = beta(rng), b2 = beta(rng), a1 = alpha(rng), a2 = alpha(rng);
    const auto state = run_multi_round(testing::to_graph(m), weights(b1, b2, a1, a2, k));
    const auto ref = oracle::multi_round(m, b1, b2, a1, a2, k);
    bool ok = state.selected() == ref.order && state.trace().size() == ref.rounds.size();
    for (std::size_t r = 0; ok && r < ref.rounds.size(); ++r) {
      for (std::size_t c = 0; c < m.size(); ++c) {
        if (ref.rounds[r].candidate[c] != state.trace()[r].defined(c)) {
          ok = false;
          break;
        }
        if (!ref.rounds[r].candidate[c]) continue;
        const double diff = std::abs(state.trace()[r].scores[c] - ref.rounds[r].scores[c]);
        worst = std::max(worst, diff);
        if (diff > 1e-9) ok = false;
      }
    }
    if (!ok) ++mismatches;
  });
  return {mismatches == 0,
          fmt("%d graphs, %d mismatches, max score diff %.3g", graphs, mismatches, worst)};
}

Verdict worked_example() {
  const auto g = testing::worked_graph();
  const auto m = testing::worked_matrix();
  const double nan = std::nan("");
  struct Case {
    double alpha;
    std::vector<std::size_t> expected;
    std::vector<std::vector<double>> listed;  // round scores as published
  };
  const std::vector<Case> cases = {
      {0.0, {1, 2}, {{1.7, 1.8, 1.5, 0.6}, {0.8, nan, 0.9, 0.3}}},
      {1.0, {0, 1}, {{1.7, 1.8, 1.5, 0.6}, {1.7, nan, 1.5, 0.6}}},
  };
  std::string detail;
  bool pass = true;
  for (const auto& c : cases) {
    const auto cfg = weights(1, 1, c.alpha, c.alpha, 2);
    const auto ref = oracle::multi_round(m, 1, 1, c.alpha, c.alpha, 2);
    const auto state = run_multi_round(g, cfg);
    const auto summary = select_multi_round(g, cfg);
    pass &= summary == c.expected;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t s = 0; s < 4; ++s) {
        if (!ref.rounds[r].candidate[s]) {
          pass &= !state.trace()[r].defined(s);
          continue;
        }
        // oracle reproduces the listed value, implementation matches oracle
        pass &= std::abs(ref.rounds[r].scores[s] - c.listed[r][s]) < 1e-12;
        pass &= std::abs(state.trace()[r].scores[s] - ref.rounds[r].scores[s]) < 1e-12;
      }
    }
    detail += fmt("alpha=%g -> {%zu,%zu} ", c.alpha, summary[0], summary[1]);
  }
  pass &= select_multi_round(g, weights(1, 1, 1, 1, 2)) == select_pacsum(g, weights(1, 1, 1, 1, 2));
  return {pass, detail};
}

Verdict rouge_correctness() {
  const auto ref = tokenize("the cat sat on the mat", Language::latin);
  const auto cand = tokenize("the cat the mat", Language::latin);
  const auto r1 = rouge_n(cand, ref, 1);
  const auto rl = rouge_l(Tokens{"a", "c", "d"}, Tokens{"a", "b", "c", "d"});
  bool pass = std::abs(r1.recall - 4.0 / 6.0) < 1e-9 && std::abs(r1.precision - 1.0) < 1e-9 &&
              std::abs(r1.f1 - 0.8) < 1e-9;
  pass &= std::abs(rl.recall - 0.75) < 1e-9 && std::abs(rl.precision - 1.0) < 1e-9 &&
          std::abs(rl.f1 - 0.8571428571428571) < 1e-9;
  for (std::size_t n : {1u, 2u}) {
    const auto same = rouge_n(ref, ref, n);
    pass &= same.precision == 1.0 && same.recall == 1.0 && same.f1 == 1.0;
    const auto none = rouge_n(Tokens{"x", "y", "z"}, ref, n);
    pass &= none.precision == 0.0 && none.recall == 0.0 && none.f1 == 0.0;
  }
  const auto lsame = rouge_l(ref, ref);
  pass &= lsame.precision == 1.0 && lsame.recall == 1.0 && lsame.f1 == 1.0;
  const auto lnone = rouge_l(Tokens{"x", "y"}, ref);
  pass &= lnone.precision == 0.0 && lnone.recall == 0.0 && lnone.f1 == 0.0;
  return {pass, fmt("R-1 p=%.4f r=%.4f f=%.4f; R-L p=%.4f r=%.4f f=%.4f", r1.precision,
                    r1.recall, r1.f1, rl.precision, rl.recall, rl.f1)};
}

Verdict threshold_boundaries() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> a_dist(0.0, 1.0);
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 29;
    std::vector<double> upper(n * (n - 1) / 2);
    for (auto& x : upper) x = u(rng);
    if (t % 10 == 0) upper[rng() % upper.size()] = *std::max_element(upper.begin(), upper.end());
    const SimilarityGraph g(n, upper);
    bool ok = apply_threshold(g, compute_threshold(g, 0.0)) == g;

    const auto top = apply_threshold(g, compute_threshold(g, 1.0));
    for (std::size_t i = 0; i < upper.size(); ++i) {
      const double expected = upper[i] < g.s_max() ? 0.0 : upper[i];
      ok &= top.upper()[i] == expected;
    }

    double a_lo = a_dist(rng), a_hi = a_dist(rng);
    if (a_lo > a_hi) std::swap(a_lo, a_hi);
    const auto spec_lo = compute_threshold(g, a_lo);
    const auto lo = apply_threshold(g, spec_lo);
    const auto hi = apply_threshold(g, compute_threshold(g, a_hi));
    ok &= apply_threshold(lo, spec_lo) == lo;
    for (std::size_t i = 0; i < upper.size(); ++i) {
      // surviving (above-threshold) edges at a_hi survive at a_lo
      if (hi.upper()[i] != 0.0) ok &= lo.upper()[i] == upper[i];
    }
    if (!ok) ++failures;
  }
  return {failures == 0, fmt("100 matrices, %d failures", failures)};
}

Verdict tuned_superset() {
  const auto split = mini_corpus();
  GridSpec grid;
  grid.a = {0.0, 0.2, 0.4, 0.6};
  grid.beta1 = {0.0, 0.5, 1.0};
  grid.beta2 = {0.0, 0.5, 1.0};
  grid.alpha1 = {-0.5, 0.0, 0.5};
  grid.alpha2 = {-0.5, 0.0, 0.5};
  grid.add_reduction_points();
  SummarizerConfig base;
  base.method = Method::pacsum;
  const auto pac = grid_search(split, grid, base, {});
  base.method = Method::multiround;
  const auto multi = grid_search(split, grid, base, {});
  const double p = objective_value(pac.best_result, Objective::rouge1_f1);
  const double m = objective_value(multi.best_result, Objective::rouge1_f1);
  return {split.records.size() >= 20 && m >= p,
          fmt("%zu docs; pacsum %zu points best R-1 F1 %.4f; multiround %zu points best %.4f "
              "(a=%g b1=%g b2=%g a1=%g a2=%g)",
              split.records.size(), pac.points.size(), p, multi.points.size(), m, multi.best.a,
              multi.best.beta1, multi.best.beta2, multi.best.alpha1, multi.best.alpha2)};
}

Verdict lead_and_determinism() {
  const auto split = mini_corpus();
  bool pass = true;
  for (const auto& doc : split.records) {
    for (std::size_t k : {1u, 3u, 50u}) {
      const auto got = select_lead(doc, k);
      pass &= got.size() == std::min(k, doc.size());
      for (std::size_t i = 0; i < got.size(); ++i) pass &= got[i] == i;
    }
  }
  int identical = 0;
  for (auto method : {Method::lead3, Method::textrank, Method::pacsum, Method::multiround}) {
    SummarizerConfig cfg;
    cfg.method = method;
    const auto one = to_json(evaluate_method(split, cfg, {}, 1)).dump(2);
    const auto eight = to_json(evaluate_method(split, cfg, {}, 8)).dump(2);
    if (one == eight) ++identical;
  }
  pass &= identical == 4;
  return {pass, fmt("lead indices ok on %zu docs; %d/4 methods byte-identical across jobs",
                    split.records.size(), identical)};
}

Verdict textrank_sanity() {
  bool pass = true;
  const auto uniform = textrank_scores(SimilarityGraph(6, std::vector<double>(15, 0.4)));
  for (double r : uniform.ranks) pass &= std::abs(r - 1.0 / 6.0) < 1e-9;

  SimilarityGraph star(5);
  for (std::size_t j = 1; j < 5; ++j) star.at(0, j) = 0.3;
  const auto ranks = textrank_scores(star).ranks;
  for (std::size_t j = 1; j < 5; ++j) pass &= ranks[0] > ranks[j];
  pass &= select_textrank(star, {}, 1) == std::vector<std::size_t>{0};

  const auto split = mini_corpus();
  std::size_t converged = 0, max_iter = 0;
  SummarizerConfig cfg;
  cfg.method = Method::textrank;
  for (const auto& doc : split.records) {
    const auto summary = summarize_document(doc, cfg, {});
    if (summary.textrank && summary.textrank->converged) ++converged;
    if (summary.textrank) max_iter = std::max(max_iter, summary.textrank->iterations);
  }
  pass &= converged == split.records.size();
  return {pass, fmt("converged on %zu/%zu docs (max %zu iterations)", converged,
                    split.records.size(), max_iter)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "reduction to single-round ranking", 10.0, reduction_to_pacsum},
      {"AC2", "incremental selector vs naive oracle", 10.0, incremental_vs_naive},
      {"AC3", "worked 4-sentence example", 0.0, worked_example},
      {"AC4", "ROUGE correctness", 0.0, rouge_correctness},
      {"AC5", "threshold boundaries and properties", 0.0, threshold_boundaries},
      {"AC6", "tuned multiround >= tuned pacsum (mini corpus)", 60.0, tuned_superset},
      {"AC7", "lead3 indices and eval determinism", 0.0, lead_and_determinism},
      {"AC8", "TextRank sanity and convergence", 0.0, textrank_sanity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      v.pass = false;
      v.detail += fmt(" [time limit %.0f s exceeded]", c.time_limit_s);
    }
    std::printf("[%s] %s %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs);
    if (!v.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

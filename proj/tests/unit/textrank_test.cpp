#include <doctest.h>

#include <cmath>

#include "mrsum/summarizer.hpp"

using namespace mrsum;
using Indices = std::vector<std::size_t>;

namespace {

SimilarityGraph star(std::size_t n, double w) {
  SimilarityGraph g(n);
  for (std::size_t j = 1; j < n; ++j) g.at(0, j) = w;
  return g;
}

}  // namespace

TEST_CASE("uniform complete graph has uniform ranks") {
  SimilarityGraph g(4, std::vector<double>(6, 0.37));
  const auto result = textrank_scores(g);
  CHECK(result.converged);
  for (double r : result.ranks) CHECK(std::abs(r - 0.25) < 1e-9);
  CHECK(select_textrank(g, {}, 2) == Indices{0, 1});
}

TEST_CASE("all-zero graph is handled by the dangling rule") {
  const auto result = textrank_scores(SimilarityGraph(5));
  for (double r : result.ranks) CHECK(std::abs(r - 0.2) < 1e-12);
  CHECK(select_textrank(SimilarityGraph(5), {}, 3) == Indices{0, 1, 2});
}

TEST_CASE("star graph matches the closed-form stationary distribution") {
  // Leaves pass all their rank to the centre; the centre splits evenly:
  //   r0 = (1-d)/n + d * (n-1) * rl,   rl = (1-d)/n + d * r0 / (n-1)
  // => r0 = (1 + d (n-1)) / (n (1 + d)).
  for (std::size_t n : {3u, 4u, 9u}) {
    const double d = 0.85;
    TextRankOptions opts;
    opts.tol = 1e-12;
    opts.max_iter = 1000;
    const auto result = textrank_scores(star(n, 0.4), opts);
    const double nd = static_cast<double>(n);
    const double centre = (1.0 + d * (nd - 1.0)) / (nd * (1.0 + d));
    CHECK(result.converged);
    CHECK(std::abs(result.ranks[0] - centre) < 1e-9);
    for (std::size_t i = 1; i < n; ++i) {
      CHECK(result.ranks[0] > result.ranks[i]);
      CHECK(std::abs(result.ranks[i] - (1.0 - centre) / (nd - 1.0)) < 1e-9);
    }
    CHECK(select_textrank(star(n, 0.4), {}, 1) == Indices{0});
  }
}

TEST_CASE("ranks sum to one and negative weights are ignored") {
  SimilarityGraph g(4, {0.3, -0.2, 0.1, 0.5, -0.7, 0.05});
  const auto result = textrank_scores(g);
  double sum = 0.0;
  for (double r : result.ranks) sum += r;
  CHECK(std::abs(sum - 1.0) < 1e-9);
  CHECK(result.iterations <= 100);
}

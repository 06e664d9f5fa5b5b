#include "mrsum/simgraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "mrsum/error.hpp"

namespace mrsum {

SimilarityGraph::SimilarityGraph(std::size_t n)
    : n_(n), values_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

SimilarityGraph::SimilarityGraph(std::size_t n, std::vector<double> upper)
    : n_(n), values_(std::move(upper)) {
  const std::size_t expected = n < 2 ? 0 : n * (n - 1) / 2;
  if (values_.size() != expected) {
    throw Error(Errc::dimension_mismatch,
                "expected " + std::to_string(expected) + " pair values for n=" +
                    std::to_string(n) + ", got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(Errc::invalid_argument, "similarities must be finite");
    }
  }
  if (!values_.empty()) {
    const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    s_min_ = *lo;
    s_max_ = *hi;
  }
}

namespace {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double sum = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) sum += x[d] * y[d];
  return sum;
}

}  // namespace

SimilarityGraph build_similarity_matrix(std::span<const SentenceVector> vectors,
                                        SimilarityKind kind) {
  const std::size_t n = vectors.size();
  if (n < 2) {
    throw Error(Errc::too_few_sentences,
                "need at least 2 sentence vectors, got " + std::to_string(n));
  }
  const std::size_t dim = vectors.front().dim();
  for (const auto& v : vectors) {
    if (v.dim() != dim) {
      throw Error(Errc::dimension_mismatch,
                  "vector dims " + std::to_string(dim) + " and " +
                      std::to_string(v.dim()) + " in one document");
    }
  }

  std::vector<double> norms;
  if (kind == SimilarityKind::cosine) {
    norms.reserve(n);
    for (const auto& v : vectors) norms.push_back(std::sqrt(dot(v.values, v.values)));
  }

  std::vector<double> upper;
  upper.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = dot(vectors[i].values, vectors[j].values);
      if (kind == SimilarityKind::cosine) {
        const double denom = norms[i] * norms[j];
        s = denom > 0.0 ? s / denom : 0.0;
      }
      upper.push_back(s);
    }
  }
  return SimilarityGraph(n, std::move(upper));
}

ThresholdSpec compute_threshold(const SimilarityGraph& graph, double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw Error(Errc::out_of_range, "threshold parameter a must lie in [0, 1]");
  }
  return {a, std::lerp(graph.s_min(), graph.s_max(), a)};
}

SimilarityGraph apply_threshold(const SimilarityGraph& graph, const ThresholdSpec& spec) {
  SimilarityGraph out = graph;
  const std::size_t n = graph.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (out.at(i, j) < spec.th) out.at(i, j) = 0.0;
    }
  }
  return out;
}

void write_matrix_tsv(std::ostream& out, const SimilarityGraph& raw,
                      const SimilarityGraph& thresholded) {
  out << "i\tj\tsimilarity\tthresholded\n";
  char buf[64];
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g\t%.17g", raw.at(i, j), thresholded.at(i, j));
      out << i << '\t' << j << '\t' << buf << '\n';
    }
  }
}

}  // namespace mrsum

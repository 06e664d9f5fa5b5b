#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "mrsum/encoder.hpp"

namespace mrsum {

enum class SimilarityKind { inner_product, cosine };

// Dense upper-triangular similarity matrix over sentence pairs (i < j).
// s_min()/s_max() are the extrema of the values the graph was built with;
// thresholding does not update them.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;

  // All pairs start at 0.
  explicit SimilarityGraph(std::size_t n);

  // `upper` lists sim(0,1), sim(0,2), ..., sim(0,n-1), sim(1,2), ... in
  // row-major order; s_min/s_max are taken from it.
  SimilarityGraph(std::size_t n, std::vector<double> upper);

  std::size_t size() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return values_.size(); }

  // Requires i < j.
  double at(std::size_t i, std::size_t j) const { return values_[offset(i, j)]; }
  double& at(std::size_t i, std::size_t j) { return values_[offset(i, j)]; }

  // Unordered accessor: edge(i, j) == edge(j, i). Requires i != j.
  double edge(std::size_t i, std::size_t j) const {
    return i < j ? at(i, j) : at(j, i);
  }

  double s_min() const noexcept { return s_min_; }
  double s_max() const noexcept { return s_max_; }

  std::span<const double> upper() const noexcept { return values_; }

  friend bool operator==(const SimilarityGraph&, const SimilarityGraph&) = default;

 private:
  std::size_t offset(std::size_t i, std::size_t j) const noexcept {
    // Row i starts after i rows of lengths n-1, n-2, ..., n-i.
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> values_;
  double s_min_ = 0.0;
  double s_max_ = 0.0;
};

// sim(i,j) = vectors[i] . vectors[j] (or the cosine, for ablations).
// Throws too_few_sentences for fewer than two vectors and
// dimension_mismatch for ragged input.
SimilarityGraph build_similarity_matrix(std::span<const SentenceVector> vectors,
                                        SimilarityKind kind = SimilarityKind::inner_product);

struct ThresholdSpec {
  double a = 0.0;
  double th = 0.0;
};

// th = s_min + a (s_max - s_min), evaluated with std::lerp so that a = 0
// and a = 1 give s_min and s_max exactly. Throws out_of_range unless
// 0 <= a <= 1.
ThresholdSpec compute_threshold(const SimilarityGraph& graph, double a);

// Entries strictly below th become 0; entries equal to th survive.
SimilarityGraph apply_threshold(const SimilarityGraph& graph, const ThresholdSpec& spec);

// TSV dump: "i\tj\tsimilarity\tthresholded" per pair, with a header row.
void write_matrix_tsv(std::ostream& out, const SimilarityGraph& raw,
                      const SimilarityGraph& thresholded);

}  // namespace mrsum

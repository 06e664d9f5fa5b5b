#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mrsum/corpus.hpp"

namespace mrsum {

enum class RougeVariant { rouge1, rouge2, rougeL };

std::string_view to_string(RougeVariant variant);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  RougeVariant variant = RougeVariant::rouge1;
};

// F-measure weight used for the headline number (1 => F1).
inline constexpr double kRougeFBeta = 1.0;

double f_measure(double precision, double recall);

using Tokens = std::vector<std::string>;

// Clipped n-gram overlap. Empty gram lists score 0 for the affected side.
RougeScore rouge_n(const Tokens& candidate, const Tokens& reference, std::size_t n);

// Sentence-aware ROUGE-N: n-grams never span two sentences.
RougeScore rouge_n(const std::vector<Tokens>& candidate,
                   const std::vector<Tokens>& reference, std::size_t n);

// LCS-based ROUGE-L on flat token lists.
RougeScore rouge_l(const Tokens& candidate, const Tokens& reference);

// Summary-level ROUGE-L: sentences are concatenated without separators.
RougeScore rouge_l(const std::vector<Tokens>& candidate,
                   const std::vector<Tokens>& reference);

// One token per non-whitespace code point, rendered as "U+XXXX".
Tokens to_unicode_tokens(std::string_view text);

// ROUGE tokens for a piece of text in the given language profile: the latin
// tokenizer, or code-point identifiers for CJK.
Tokens rouge_tokens(std::string_view text, Language lang);

struct RougeTriple {
  RougeScore r1{0, 0, 0, RougeVariant::rouge1};
  RougeScore r2{0, 0, 0, RougeVariant::rouge2};
  RougeScore rl{0, 0, 0, RougeVariant::rougeL};

  const RougeScore& get(RougeVariant variant) const;
};

RougeTriple score_summary(const std::vector<Tokens>& candidate,
                          const std::vector<Tokens>& reference);

// Scores selected sentence texts against a reference summary string; the
// reference is sentence-segmented with the same language profile.
RougeTriple score_summary(const std::vector<std::string>& candidate_sentences,
                          std::string_view reference, Language lang);

}  // namespace mrsum

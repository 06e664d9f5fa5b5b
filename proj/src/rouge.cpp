#include "mrsum/rouge.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "mrsum/error.hpp"
#include "mrsum/utf8.hpp"

namespace mrsum {

std::string_view to_string(RougeVariant variant) {
  switch (variant) {
    case RougeVariant::rouge1: return "rouge1";
    case RougeVariant::rouge2: return "rouge2";
    case RougeVariant::rougeL: return "rougeL";
  }
  return "rouge1";
}

double f_measure(double precision, double recall) {
  constexpr double b2 = kRougeFBeta * kRougeFBeta;
  const double denom = b2 * precision + recall;
  return denom > 0.0 ? (1.0 + b2) * precision * recall / denom : 0.0;
}

namespace {

using GramCounts = std::map<std::vector<std::string_view>, std::size_t>;

std::size_t add_grams(GramCounts& counts, const Tokens& tokens, std::size_t n) {
  if (tokens.size() < n) return 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> gram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                       tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[std::move(gram)];
    ++total;
  }
  return total;
}

RougeScore from_counts(std::size_t match, std::size_t cand_total, std::size_t ref_total,
                       RougeVariant variant) {
  RougeScore score;
  score.variant = variant;
  score.precision = cand_total > 0 ? static_cast<double>(match) / static_cast<double>(cand_total) : 0.0;
  score.recall = ref_total > 0 ? static_cast<double>(match) / static_cast<double>(ref_total) : 0.0;
  score.f1 = f_measure(score.precision, score.recall);
  return score;
}

RougeVariant variant_for(std::size_t n) {
  return n == 2 ? RougeVariant::rouge2 : RougeVariant::rouge1;
}

std::size_t lcs_length(const Tokens& x, const Tokens& y) {
  if (x.empty() || y.empty()) return 0;
  std::vector<std::size_t> prev(y.size() + 1, 0);
  std::vector<std::size_t> cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

Tokens flatten(const std::vector<Tokens>& sentences) {
  Tokens out;
  for (const auto& s : sentences) out.insert(out.end(), s.begin(), s.end());
  return out;
}

}  // namespace

RougeScore rouge_n(const std::vector<Tokens>& candidate,
                   const std::vector<Tokens>& reference, std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "ROUGE-N needs n >= 1");
  GramCounts cand;
  GramCounts ref;
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  for (const auto& s : candidate) cand_total += add_grams(cand, s, n);
  for (const auto& s : reference) ref_total += add_grams(ref, s, n);
  std::size_t match = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) match += std::min(count, it->second);
  }
  return from_counts(match, cand_total, ref_total, variant_for(n));
}

RougeScore rouge_n(const Tokens& candidate, const Tokens& reference, std::size_t n) {
  return rouge_n(std::vector<Tokens>{candidate}, std::vector<Tokens>{reference}, n);
}

RougeScore rouge_l(const Tokens& candidate, const Tokens& reference) {
  return from_counts(lcs_length(candidate, reference), candidate.size(),
                     reference.size(), RougeVariant::rougeL);
}

RougeScore rouge_l(const std::vector<Tokens>& candidate,
                   const std::vector<Tokens>& reference) {
  return rouge_l(flatten(candidate), flatten(reference));
}

Tokens to_unicode_tokens(std::string_view text) {
  Tokens out;
  char buf[16];
  for (const auto& cp : utf8::decode(text)) {
    if (utf8::is_space(cp.value)) continue;
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp.value));
    out.emplace_back(buf);
  }
  return out;
}

Tokens rouge_tokens(std::string_view text, Language lang) {
  return lang == Language::cjk ? to_unicode_tokens(text) : tokenize_lenient(text, lang);
}

const RougeScore& RougeTriple::get(RougeVariant variant) const {
  switch (variant) {
    case RougeVariant::rouge1: return r1;
    case RougeVariant::rouge2: return r2;
    case RougeVariant::rougeL: return rl;
  }
  return r1;
}

RougeTriple score_summary(const std::vector<Tokens>& candidate,
                          const std::vector<Tokens>& reference) {
  return {rouge_n(candidate, reference, 1), rouge_n(candidate, reference, 2),
          rouge_l(candidate, reference)};
}

RougeTriple score_summary(const std::vector<std::string>& candidate_sentences,
                          std::string_view reference, Language lang) {
  std::vector<Tokens> cand;
  cand.reserve(candidate_sentences.size());
  for (const auto& s : candidate_sentences) cand.push_back(rouge_tokens(s, lang));
  std::vector<Tokens> ref;
  if (!to_unicode_tokens(reference).empty()) {
    for (const auto& s : segment_sentences(reference, lang)) {
      ref.push_back(rouge_tokens(s, lang));
    }
  }
  return score_summary(cand, ref);
}

}  // namespace mrsum

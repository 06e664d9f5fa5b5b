#include "mrsum/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "mrsum/error.hpp"
#include "mrsum/utf8.hpp"

namespace mrsum {

std::string_view to_string(Language lang) {
  return lang == Language::latin ? "latin" : "cjk";
}

Language parse_language(std::string_view name) {
  if (name == "latin") return Language::latin;
  if (name == "cjk") return Language::cjk;
  throw Error(Errc::invalid_argument,
              "unknown language '" + std::string(name) + "'");
}

std::string_view to_string(SplitName name) {
  switch (name) {
    case SplitName::train: return "train";
    case SplitName::validation: return "validation";
    case SplitName::test: return "test";
  }
  return "test";
}

namespace {

constexpr std::array<std::string_view, 20> kAbbreviations = {
    "mr",  "mrs", "ms",  "dr",  "prof", "sr",  "jr",   "st",  "vs",  "etc",
    "e.g", "i.e", "inc", "ltd", "corp", "gen", "gov",  "sen", "rep", "u.s"};

constexpr std::size_t kMinSentenceChars = 2;

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

std::string_view trim(std::string_view s) {
  const auto cps = utf8::decode(s);
  std::size_t first = 0;
  std::size_t last = cps.size();
  while (first < last && utf8::is_space(cps[first].value)) ++first;
  while (last > first && utf8::is_space(cps[last - 1].value)) --last;
  if (first == last) return {};
  const char* begin = cps[first].bytes.data();
  const char* end = cps[last - 1].bytes.data() + cps[last - 1].bytes.size();
  return {begin, static_cast<std::size_t>(end - begin)};
}

std::size_t non_space_count(std::string_view s) {
  std::size_t count = 0;
  for (const auto& cp : utf8::decode(s)) {
    if (!utf8::is_space(cp.value)) ++count;
  }
  return count;
}

bool is_closing_ascii(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

// Length of a UTF-8 closing quote (” or ’) starting at `pos`, else 0.
std::size_t closing_quote_len(std::string_view text, std::size_t pos) {
  for (std::string_view q : {std::string_view("”"), std::string_view("’")}) {
    if (text.substr(pos, q.size()) == q) return q.size();
  }
  return 0;
}

// The word immediately before `dot`, lowercased.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_ascii_space(text[begin - 1])) --begin;
  std::string word(text.substr(begin, dot - begin));
  while (!word.empty() && (word.front() == '(' || word.front() == '"' ||
                           word.front() == '\'')) {
    word.erase(word.begin());
  }
  return word;
}

bool suppresses_split(std::string_view text, std::size_t dot) {
  const std::string word = word_before(text, dot);
  if (word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0]))) {
    return true;  // initial, as in "J. Smith"
  }
  std::string lower;
  lower.reserve(word.size());
  for (char c : word) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) !=
         kAbbreviations.end();
}

void push_piece(std::vector<std::string>& out, std::string_view piece) {
  const auto trimmed = trim(piece);
  if (!trimmed.empty()) out.emplace_back(trimmed);
}

std::vector<std::string> segment_latin(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    const std::size_t first_term = i;
    std::size_t end = i;
    while (end < text.size() &&
           (text[end] == '.' || text[end] == '!' || text[end] == '?')) {
      ++end;
    }
    const bool single_dot = end - first_term == 1 && c == '.';
    for (;;) {
      if (end < text.size() && is_closing_ascii(text[end])) {
        ++end;
      } else if (std::size_t q = closing_quote_len(text, end); q > 0) {
        end += q;
      } else {
        break;
      }
    }
    const bool at_boundary = end == text.size() || is_ascii_space(text[end]);
    const bool long_enough =
        non_space_count(text.substr(start, end - start)) >= kMinSentenceChars;
    if (at_boundary && long_enough &&
        !(single_dot && suppresses_split(text, first_term))) {
      push_piece(out, text.substr(start, end - start));
      start = end;
    }
    i = end;
  }
  push_piece(out, text.substr(start));
  return out;
}

bool is_cjk_terminator(char32_t cp) {
  return cp == U'。' || cp == U'！' || cp == U'？' ||
         cp == U'；' || cp == U'!' || cp == U'?' || cp == U';';
}

bool is_cjk_closing(char32_t cp) {
  return cp == U'”' || cp == U'’' || cp == U'」' ||
         cp == U'』' || cp == U'）' || cp == U')' || cp == U'"';
}

std::vector<std::string> segment_cjk(std::string_view text) {
  std::vector<std::string> out;
  const auto cps = utf8::decode(text);
  const char* base = text.data();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_cjk_terminator(cps[i].value)) {
      ++i;
      continue;
    }
    while (i < cps.size() && is_cjk_terminator(cps[i].value)) ++i;
    while (i < cps.size() && is_cjk_closing(cps[i].value)) ++i;
    const std::size_t end =
        i < cps.size() ? static_cast<std::size_t>(cps[i].bytes.data() - base)
                       : text.size();
    push_piece(out, text.substr(start, end - start));
    start = end;
  }
  push_piece(out, text.substr(start));
  return out;
}

bool is_latin_word_char(char32_t cp) {
  if (cp < 0x80) {
    return std::isalnum(static_cast<unsigned char>(cp)) != 0;
  }
  if (cp < 0xC0 || cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;  // fullwidth punctuation
  if (cp >= 0xFF1A && cp <= 0xFF20) return false;
  if (cp >= 0xFF3B && cp <= 0xFF40) return false;
  if (cp >= 0xFF5B && cp <= 0xFF65) return false;
  return !utf8::is_space(cp);
}

}  // namespace

std::vector<std::string> segment_sentences(std::string_view text,
                                           Language lang) {
  if (trim(text).empty()) {
    throw Error(Errc::empty_input, "text is empty or whitespace-only");
  }
  return lang == Language::latin ? segment_latin(text) : segment_cjk(text);
}

std::vector<std::string> tokenize_lenient(std::string_view sentence,
                                          Language lang) {
  std::vector<std::string> tokens;
  if (lang == Language::cjk) {
    for (const auto& cp : utf8::decode(sentence)) {
      if (!utf8::is_space(cp.value)) tokens.emplace_back(cp.bytes);
    }
    return tokens;
  }
  std::string current;
  for (const auto& cp : utf8::decode(sentence)) {
    if (is_latin_word_char(cp.value)) {
      if (cp.value < 0x80) {
        current.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(cp.value))));
      } else {
        current.append(cp.bytes);
      }
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> tokenize(std::string_view sentence, Language lang) {
  auto tokens = tokenize_lenient(sentence, lang);
  if (tokens.empty()) {
    throw Error(Errc::empty_input,
                "no tokens in sentence '" + std::string(sentence) + "'");
  }
  return tokens;
}

Document make_document(std::string id, const std::vector<std::string>& sentences,
                       Language lang,
                       std::optional<std::string> reference_summary) {
  const std::string_view joiner = lang == Language::latin ? " " : "";
  Document doc;
  doc.id = std::move(id);
  doc.lang = lang;
  doc.reference_summary = std::move(reference_summary);

  std::string pending;  // token-less fragments seen before the first sentence
  for (const auto& text : sentences) {
    const auto raw = trim(text);
    if (raw.empty()) continue;
    auto tokens = tokenize_lenient(raw, lang);
    if (tokens.empty()) {
      if (doc.sentences.empty()) {
        if (!pending.empty()) pending += joiner;
        pending += raw;
      } else {
        doc.sentences.back().raw += joiner;
        doc.sentences.back().raw += raw;
      }
      continue;
    }
    Sentence s;
    s.index = doc.sentences.size();
    s.raw = pending.empty() ? std::string(raw)
                            : pending + std::string(joiner) + std::string(raw);
    s.tokens = std::move(tokens);
    pending.clear();
    doc.sentences.push_back(std::move(s));
  }
  if (doc.sentences.empty()) {
    throw Error(Errc::empty_input,
                "document '" + doc.id + "' has no tokenizable sentence");
  }
  return doc;
}

Document document_from_text(std::string id, std::string_view text, Language lang,
                            std::optional<std::string> reference_summary) {
  return make_document(std::move(id), segment_sentences(text, lang), lang,
                       std::move(reference_summary));
}

Document parse_dataset_record(std::string_view line, std::size_t line_no) {
  using nlohmann::json;
  auto fail = [line_no](const std::string& reason) -> Error {
    return Error(Errc::format_error, reason, line_no);
  };

  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw fail(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw fail("record is not a JSON object");

  auto required_string = [&](const char* key) -> std::string {
    const auto it = obj.find(key);
    if (it == obj.end()) throw fail(std::string("missing field '") + key + "'");
    if (!it->is_string()) throw fail(std::string("field '") + key + "' is not a string");
    return it->get<std::string>();
  };

  std::string id = required_string("id");
  std::string summary = required_string("summary");
  if (trim(summary).empty()) throw fail("field 'summary' is empty");
  Language lang;
  try {
    lang = parse_language(required_string("lang"));
  } catch (const Error& e) {
    if (e.code() == Errc::format_error) throw;
    throw fail("field 'lang' must be \"latin\" or \"cjk\"");
  }

  const bool has_text = obj.contains("text");
  const bool has_sentences = obj.contains("sentences");
  if (has_text == has_sentences) {
    throw fail("exactly one of 'text' or 'sentences' is required");
  }

  try {
    if (has_text) {
      const auto& text = obj["text"];
      if (!text.is_string()) throw fail("field 'text' is not a string");
      return document_from_text(std::move(id), text.get<std::string>(), lang,
                                std::move(summary));
    }
    const auto& arr = obj["sentences"];
    if (!arr.is_array() || arr.empty()) {
      throw fail("field 'sentences' must be a non-empty array");
    }
    std::vector<std::string> sentences;
    sentences.reserve(arr.size());
    for (const auto& s : arr) {
      if (!s.is_string()) throw fail("field 'sentences' holds a non-string");
      sentences.push_back(s.get<std::string>());
    }
    return make_document(std::move(id), sentences, lang, std::move(summary));
  } catch (const Error& e) {
    if (e.code() == Errc::format_error) throw;
    throw fail(e.what());
  }
}

DatasetSplit load_dataset(const std::filesystem::path& path,
                          const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open dataset '" + path.string() + "'");
  }
  DatasetSplit split;
  split.name = options.name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      split.records.push_back(parse_dataset_record(line, line_no));
    } catch (const Error& e) {
      if (options.policy == ErrorPolicy::fail_fast) throw;
      split.warnings.emplace_back(std::string("skipped: ") + e.what());
    }
  }
  if (in.bad()) {
    throw Error(Errc::io_error, "read failure on '" + path.string() + "'");
  }
  if (split.records.empty()) {
    split.warnings.push_back("dataset '" + path.string() + "' has no records");
  }
  return split;
}

}  // namespace mrsum

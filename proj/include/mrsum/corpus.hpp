#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mrsum {

enum class Language { latin, cjk };

std::string_view to_string(Language lang);
Language parse_language(std::string_view name);

struct Sentence {
  std::size_t index = 0;
  std::string raw;
  std::vector<std::string> tokens;
};

// Unit of summarization. Sentence indices are 0-based, contiguous and
// follow the source order.
struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  Language lang = Language::latin;
  std::optional<std::string> reference_summary;

  std::size_t size() const noexcept { return sentences.size(); }
};

enum class SplitName { train, validation, test };

std::string_view to_string(SplitName name);

struct DatasetSplit {
  SplitName name = SplitName::test;
  std::vector<Document> records;
  // Non-fatal problems met while loading (skipped lines, empty file).
  std::vector<std::string> warnings;
};

// Rule-based sentence splitter. Latin text splits after `.`, `!` or `?`
// (plus any closing quotes/brackets) when followed by whitespace or the end
// of the text; common abbreviations and single-letter initials do not end a
// sentence. CJK text splits after `。！？；` and their ASCII counterparts
// `!?;`. Throws Errc::empty_input on whitespace-only text.
std::vector<std::string> segment_sentences(std::string_view text,
                                           Language lang);

// Latin: lowercase, split on runs of non-alphanumeric ASCII (bytes >= 0x80
// are kept as word characters). CJK: one token per code point, whitespace
// dropped. Throws Errc::empty_input when no token survives.
std::vector<std::string> tokenize(std::string_view sentence, Language lang);

// Same as tokenize() but returns an empty list instead of throwing.
std::vector<std::string> tokenize_lenient(std::string_view sentence,
                                          Language lang);

// Builds a document from pre-split sentences. Token-less fragments
// (e.g. a lone "...") are folded into a neighbouring sentence; throws
// Errc::empty_input if nothing tokenizable remains.
Document make_document(std::string id, const std::vector<std::string>& sentences,
                       Language lang,
                       std::optional<std::string> reference_summary = std::nullopt);

// Segments `text` and builds a document from the pieces.
Document document_from_text(std::string id, std::string_view text, Language lang,
                            std::optional<std::string> reference_summary = std::nullopt);

enum class ErrorPolicy { fail_fast, skip_and_log };

struct LoadOptions {
  ErrorPolicy policy = ErrorPolicy::fail_fast;
  SplitName name = SplitName::test;
};

// Reads the normalized JSONL dataset format. Every line is an object with
// `id`, `summary`, `lang` and exactly one of `text` / `sentences`.
DatasetSplit load_dataset(const std::filesystem::path& path,
                          const LoadOptions& options = {});

// Parses one JSONL record; `line_no` is only used in diagnostics.
Document parse_dataset_record(std::string_view line, std::size_t line_no);

}  // namespace mrsum

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "mrsum/corpus.hpp"
#include "mrsum/error.hpp"

using namespace mrsum;
using Strings = std::vector<std::string>;

namespace {

std::string strip_space(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\n' && c != '\t') out.push_back(c);
  }
  return out;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

}  // namespace

TEST_CASE("segment_sentences splits on terminators") {
  CHECK(segment_sentences("A b. C d.", Language::latin) == Strings{"A b.", "C d."});
  CHECK(segment_sentences("第一句。第二句！", Language::cjk) == Strings{"第一句。", "第二句！"});
  CHECK(segment_sentences("One sentence without terminator", Language::latin) ==
        Strings{"One sentence without terminator"});
}

TEST_CASE("segment_sentences keeps abbreviations, initials and decimals") {
  CHECK(segment_sentences("Dr. Smith met J. Doe. It cost 3.5 dollars!", Language::latin) ==
        Strings{"Dr. Smith met J. Doe.", "It cost 3.5 dollars!"});
  CHECK(segment_sentences("He said \"stop.\" Then he left?! Yes.", Language::latin) ==
        Strings{"He said \"stop.\"", "Then he left?!", "Yes."});
  CHECK(segment_sentences("  leading and trailing.  ", Language::latin) ==
        Strings{"leading and trailing."});
  CHECK(segment_sentences("他说：“好。”然后走了；结束", Language::cjk) ==
        Strings{"他说：“好。”", "然后走了；", "结束"});
}

TEST_CASE("segment_sentences rejects whitespace-only text") {
  CHECK_THROWS_AS(segment_sentences("   \n\t", Language::latin), Error);
  CHECK_THROWS_AS(segment_sentences("", Language::cjk), Error);
}

TEST_CASE("segmentation drops only whitespace") {
  std::mt19937 rng(7);
  const std::string alphabet = "ab .!?\n\tXyz.";
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const int len = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < len; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    if (strip_space(text).empty()) continue;
    std::string joined;
    for (const auto& s : segment_sentences(text, Language::latin)) {
      CHECK_FALSE(s.empty());
      CHECK(s.front() != ' ');
      CHECK(s.back() != ' ');
      joined += s;
    }
    CHECK(strip_space(joined) == strip_space(text));
  }
}

TEST_CASE("tokenize") {
  CHECK(tokenize("The cat, sat!", Language::latin) == Strings{"the", "cat", "sat"});
  CHECK(tokenize("中文摘要", Language::cjk) == Strings{"中", "文", "摘", "要"});
  CHECK(tokenize("A1 b2", Language::latin) == Strings{"a1", "b2"});
  CHECK(tokenize("Café “déjà” vu", Language::latin) == Strings{"café", "déjà", "vu"});
  CHECK(tokenize("中 文", Language::cjk) == Strings{"中", "文"});
  CHECK_THROWS_AS(tokenize("...", Language::latin), Error);
}

TEST_CASE("tokenize is idempotent on its joined output") {
  std::mt19937 rng(11);
  const std::string alphabet = "aBc9 ,.-'!Q";
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (int i = 0; i < 30; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    const auto tokens = tokenize_lenient(text, Language::latin);
    std::string rendered;
    for (const auto& t : tokens) rendered += (rendered.empty() ? "" : " ") + t;
    CHECK(tokenize_lenient(rendered, Language::latin) == tokens);
  }
}

TEST_CASE("make_document folds token-less fragments") {
  const auto doc = make_document("d", {"...", "First one.", "!!", "Second."}, Language::latin);
  REQUIRE(doc.size() == 2);
  CHECK(doc.sentences[0].raw == "... First one. !!");
  CHECK(doc.sentences[1].index == 1);
  CHECK(doc.sentences[1].tokens == Strings{"second"});
  CHECK_THROWS_AS(make_document("d", {"--", "?"}, Language::latin), Error);
}

TEST_CASE("parse_dataset_record") {
  const auto doc = parse_dataset_record(
      R"({"id":"d1","text":"A b. C d.","summary":"A b.","lang":"latin"})", 1);
  CHECK(doc.id == "d1");
  CHECK(doc.size() == 2);
  CHECK(doc.reference_summary == "A b.");

  const auto pre = parse_dataset_record(
      R"({"id":"d2","sentences":["第一句。","第二句"],"summary":"第一句","lang":"cjk"})", 1);
  CHECK(pre.lang == Language::cjk);
  CHECK(pre.size() == 2);

  auto format_error_line = [](const std::string& line) -> std::optional<std::size_t> {
    try {
      parse_dataset_record(line, 9);
    } catch (const Error& e) {
      if (e.code() == Errc::format_error) return e.line();
    }
    return std::nullopt;
  };
  CHECK(format_error_line(R"({"id":"d1","text":"A b.","lang":"latin"})") == 9u);
  CHECK(format_error_line(R"({"id":"d1","text":"A.","sentences":["A."],"summary":"x","lang":"latin"})"));
  CHECK(format_error_line(R"({"id":"d1","summary":"x","lang":"latin"})"));
  CHECK(format_error_line(R"({"id":"d1","text":"A.","summary":"x","lang":"fr"})"));
  CHECK(format_error_line(R"({"id":"d1","text":"   ","summary":"x","lang":"latin"})"));
  CHECK(format_error_line(R"({"id":"d1","text":"A.","summary":"","lang":"latin"})"));
  CHECK(format_error_line("not json"));
}

TEST_CASE("load_dataset") {
  const std::string good1 = R"({"id":"a","text":"A b. C d.","summary":"A b.","lang":"latin"})";
  const std::string good2 = R"({"id":"b","text":"E f.","summary":"E f.","lang":"latin"})";
  const std::string bad = R"({"id":"c","text":"E f.","lang":"latin"})";

  SUBCASE("order preserved") {
    const auto split = load_dataset(write_temp("mrsum_ok.jsonl", good1 + "\n\n" + good2 + "\n"));
    REQUIRE(split.records.size() == 2);
    CHECK(split.records[0].id == "a");
    CHECK(split.records[1].id == "b");
    CHECK(split.warnings.empty());
  }
  SUBCASE("fail fast reports the line") {
    const auto path = write_temp("mrsum_bad.jsonl", good1 + "\n" + bad + "\n" + good2 + "\n");
    try {
      load_dataset(path);
      FAIL("expected a format error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::format_error);
      CHECK(e.line() == 2u);
    }
    LoadOptions skip;
    skip.policy = ErrorPolicy::skip_and_log;
    const auto split = load_dataset(path, skip);
    CHECK(split.records.size() == 2);
    CHECK(split.warnings.size() == 1);
  }
  SUBCASE("empty file") {
    const auto split = load_dataset(write_temp("mrsum_empty.jsonl", ""));
    CHECK(split.records.empty());
    CHECK(split.warnings.size() == 1);
  }
  SUBCASE("missing file") {
    try {
      load_dataset("/nonexistent/mrsum.jsonl");
      FAIL("expected an io error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::io_error);
    }
  }
  SUBCASE("bundled corpus") {
    const auto split = load_dataset(MRSUM_TEST_DATA "/mini_corpus.jsonl");
    CHECK(split.records.size() >= 20);
    for (const auto& doc : split.records) {
      CHECK(doc.reference_summary.has_value());
      for (std::size_t i = 0; i < doc.size(); ++i) {
        CHECK(doc.sentences[i].index == i);
        CHECK_FALSE(doc.sentences[i].tokens.empty());
      }
    }
  }
}

#include "mrsum/error.hpp"

namespace mrsum {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::empty_input: return "EmptyInput";
    case Errc::io_error: return "IoError";
    case Errc::format_error: return "FormatError";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::missing_document: return "MissingDocument";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::too_few_sentences: return "TooFewSentences";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::already_dampened: return "AlreadyDampened";
    case Errc::missing_embeddings: return "MissingEmbeddings";
    case Errc::empty_split: return "EmptySplit";
    case Errc::invalid_grid: return "InvalidGrid";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string decorate(Errc code, const std::string& message,
                     std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) out += " (line " + std::to_string(*line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace mrsum

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mrsum {

enum class Errc {
  empty_input,
  io_error,
  format_error,
  empty_corpus,
  missing_document,
  dimension_mismatch,
  too_few_sentences,
  out_of_range,
  already_dampened,
  missing_embeddings,
  empty_split,
  invalid_grid,
  invalid_argument,
};

std::string_view to_string(Errc code);

// Single exception type for all library failures. `line()` is set for
// format errors that can be traced to a line of an input file.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace mrsum

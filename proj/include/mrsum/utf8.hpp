#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mrsum::utf8 {

struct CodePoint {
  char32_t value;
  std::string_view bytes;
};

// Decodes `text` into code points. Invalid sequences decode byte-wise as
// U+FFFD so that every input byte is accounted for.
std::vector<CodePoint> decode(std::string_view text);

bool is_space(char32_t cp) noexcept;

}  // namespace mrsum::utf8

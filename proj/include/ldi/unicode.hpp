#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace ldi {

/// Decodes UTF-8 into Unicode scalar values. Throws ParseError on malformed
/// sequences, overlong encodings, surrogates, or values above U+10FFFF.
std::u32string utf8_decode(std::string_view text);

std::string utf8_encode(std::u32string_view text);

/// Number of scalar values in a UTF-8 string (throws like utf8_decode).
std::size_t utf8_length(std::string_view text);

/// Keeps at most max_chars scalar values. Returns true if anything was cut.
bool utf8_truncate(std::string& text, std::size_t max_chars);

}  // namespace ldi

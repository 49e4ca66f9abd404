#pragma once

#include <string>
#include <string_view>

namespace hwgen::unicode {

/// Decodes UTF-8 into scalar values. Throws Utf8Error with the byte offset
/// of the first invalid sequence.
std::u32string decode(std::string_view utf8);

std::string encode(std::u32string_view text);
std::string encode(char32_t ch);

std::u32string::size_type length(std::string_view utf8);

char32_t to_lower(char32_t ch);
char32_t to_upper(char32_t ch);
std::u32string to_lower(std::u32string_view text);

/// Unicode general category L*.
bool is_letter(char32_t ch);
bool is_space(char32_t ch);

}  // namespace hwgen::unicode

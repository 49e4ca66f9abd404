#include "hwgen/unicode.hpp"

#include "hwgen/errors.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <sstream>

namespace hwgen {

namespace {
std::string describe(char32_t ch) {
  std::ostringstream os;
  os << "character not in template database: '" << unicode::encode(ch) << "' (U+" << std::hex
     << std::uppercase << static_cast<std::uint32_t>(ch) << ")";
  return os.str();
}
}  // namespace

CharNotInDb::CharNotInDb(char32_t ch) : std::runtime_error(describe(ch)), ch_(ch) {}

namespace unicode {

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto n = static_cast<std::int32_t>(utf8.size());
  std::int32_t i = 0;
  while (i < n) {
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) {
      throw Utf8Error("invalid UTF-8 at byte offset " + std::to_string(start),
                      static_cast<std::size_t>(start));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t ch : text) out += encode(ch);
  return out;
}

std::string encode(char32_t ch) {
  std::uint8_t buf[4];
  std::int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, 4, static_cast<UChar32>(ch), error);
  if (error) return "\xEF\xBF\xBD";
  return std::string(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

std::u32string::size_type length(std::string_view utf8) { return decode(utf8).size(); }

char32_t to_lower(char32_t ch) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(ch))); }

char32_t to_upper(char32_t ch) { return static_cast<char32_t>(u_toupper(static_cast<UChar32>(ch))); }

std::u32string to_lower(std::u32string_view text) {
  std::u32string out(text);
  for (auto& ch : out) ch = to_lower(ch);
  return out;
}

bool is_letter(char32_t ch) { return u_isalpha(static_cast<UChar32>(ch)) != 0; }

bool is_space(char32_t ch) { return u_isUWhiteSpace(static_cast<UChar32>(ch)) != 0; }

}  // namespace unicode
}  // namespace hwgen

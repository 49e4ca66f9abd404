#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwgen {

/// Malformed template or configuration content. `position` is a byte offset
/// for syntax errors, or npos when the failure is structural.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position = npos)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t position_;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::string glyph, std::string rule)
      : std::runtime_error(what), glyph_(std::move(glyph)), rule_(std::move(rule)) {}
  const std::string& glyph() const { return glyph_; }
  const std::string& rule() const { return rule_; }

 private:
  std::string glyph_;
  std::string rule_;
};

class CharNotInDb : public std::runtime_error {
 public:
  explicit CharNotInDb(char32_t ch);
  char32_t character() const { return ch_; }

 private:
  char32_t ch_;
};

class PageOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Utf8Error : public std::runtime_error {
 public:
  Utf8Error(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A rate whose denominator is zero (e.g. WER with an empty reference).
class UndefinedRate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hwgen

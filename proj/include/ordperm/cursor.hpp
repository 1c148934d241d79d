#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "ordperm/errors.hpp"

namespace ordperm {

// Minimal scanner over a text buffer that tracks 1-based line/column for
// error reporting. Used by every text-form parser in the library.
class Cursor {
 public:
  explicit Cursor(std::string_view text, std::size_t line = 1, std::size_t column = 1)
      : text_(text), line_(line), column_(column) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::string_view rest() const { return text_.substr(pos_); }

  char get() {
    char c = peek();
    if (done()) return c;
    ++pos_;
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }

  bool starts_with(std::string_view s) const { return rest().substr(0, s.size()) == s; }

  bool accept(std::string_view s) {
    if (!starts_with(s)) return false;
    for (std::size_t i = 0; i < s.size(); ++i) get();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) error("expected '" + std::string(s) + "'");
  }

  // Consumes characters while pred holds.
  template <typename Pred>
  std::string_view take_while(Pred pred) {
    std::size_t start = pos_;
    while (!done() && pred(peek())) get();
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void error(const std::string& what) const { throw ParseError(line_, column_, what); }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ordperm

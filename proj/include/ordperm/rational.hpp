#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "ordperm/cursor.hpp"
#include "ordperm/errors.hpp"

namespace ordperm {

/// Arbitrary-precision rational number kept in lowest terms with a positive
/// denominator. Every coordinate, breakpoint and slope in the library is a Rat.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rat(long num, long den) {
    if (den == 0) fail(ErrorCode::Internal, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) fail(ErrorCode::Internal, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "p/q", or "p" when q == 1.
  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / Rat(2); }
inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Parses the canonical rendering produced by Rat::str(). Non-canonical
/// spellings ("2/4", "3/1", "-0", "007") are rejected.
inline Rat parse_rat(Cursor& cur) {
  std::size_t line = cur.line(), col = cur.column();
  bool neg = cur.accept("-");
  auto digits = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  std::string num(cur.take_while(digits));
  if (num.empty()) cur.error("expected rational");
  std::string text = (neg ? "-" : "") + num;
  if (cur.accept("/")) {
    std::string den(cur.take_while(digits));
    if (den.empty()) cur.error("expected denominator");
    text += "/" + den;
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw ParseError(line, col, "bad rational '" + text + "'");
  q.canonicalize();
  Rat r(q);
  if (r.str() != text) throw ParseError(line, col, "non-canonical rational '" + text + "'");
  return r;
}

inline Rat parse_rat(std::string_view text) {
  Cursor cur(text);
  Rat r = parse_rat(cur);
  if (!cur.done()) cur.error("trailing characters after rational");
  return r;
}

}  // namespace ordperm

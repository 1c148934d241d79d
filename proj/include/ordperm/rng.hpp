#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ordperm/lex.hpp"

namespace ordperm {

// Seeded source for samplers and generators. Draws use raw engine output
// reduced mod n, not std::uniform_int_distribution, so a seed yields the
// same sequence on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? engine_() % n : 0; }
  /// Integer in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin() { return (engine_() & 1u) != 0; }

  /// Rational in [lo, hi] with denominator dividing some d <= max_den.
  Rat rational(long lo, long hi, long max_den = 16) {
    long d = range(1, max_den);
    return Rat(range(lo * d, hi * d), d);
  }

  /// Rational strictly between a and b, on a grid of 17 steps.
  Rat between(const Rat& a, const Rat& b) { return a + (b - a) * Rat(range(1, 16), 17); }

  /// Point strictly inside an interval (which may be unbounded).
  Rat inside(const Interval& i) {
    if (i.bounded()) return between(i.lo.value, i.hi.value);
    if (i.lo.finite()) return i.lo.value + rational(0, 8) + Rat(1, 16);
    if (i.hi.finite()) return i.hi.value - rational(0, 8) - Rat(1, 16);
    return rational(-8, 8);
  }

  Point point(int depth, long lo = -8, long hi = 8) {
    std::vector<Rat> cs;
    for (int i = 0; i < depth; ++i) cs.push_back(rational(lo, hi));
    return Point(std::move(cs));
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  /// Fresh seed for an independent sub-stream (one per trial).
  std::uint64_t fork() { return engine_() ^ 0x9e3779b97f4a7c15ull; }

 private:
  std::mt19937_64 engine_;
};

/// A random point of a support set.
inline Point ls_sample(const LexSupport& s, Rng& rng) {
  if (s.empty()) fail(ErrorCode::Internal, "sample from empty support");
  std::size_t n = s.whole.size() + s.partial.size();
  std::size_t k = rng.below(n);
  std::vector<Rat> out;
  if (k < s.whole.size()) {
    out.push_back(rng.inside(s.whole.parts()[k]));
    for (int i = 1; i < s.depth; ++i) out.push_back(rng.rational(-8, 8));
    return Point(std::move(out));
  }
  const auto& part = s.partial[k - s.whole.size()];
  out.push_back(part.fiber);
  Point rest = ls_sample(part.inner, rng);
  out.insert(out.end(), rest.coords.begin(), rest.coords.end());
  return Point(std::move(out));
}

}  // namespace ordperm

#pragma once

#include <algorithm>
#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "ordperm/rational.hpp"

namespace ordperm {

/// Interval endpoint: a rational or one of the two infinities.
struct Bound {
  enum class Kind { NegInf = -1, Finite = 0, PosInf = 1 };

  Kind kind = Kind::Finite;
  Rat value;

  static Bound neg_inf() { return {Kind::NegInf, Rat()}; }
  static Bound pos_inf() { return {Kind::PosInf, Rat()}; }
  static Bound at(Rat v) { return {Kind::Finite, std::move(v)}; }

  bool finite() const { return kind == Kind::Finite; }

  friend bool operator==(const Bound& a, const Bound& b) {
    return a.kind == b.kind && (!a.finite() || a.value == b.value);
  }
  friend std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
    if (!a.finite()) return std::strong_ordering::equal;
    return a.value <=> b.value;
  }
  // Comparisons against a point.
  friend bool operator<(const Bound& a, const Rat& x) { return a.kind == Kind::NegInf || (a.finite() && a.value < x); }
  friend bool operator<(const Rat& x, const Bound& b) { return b.kind == Kind::PosInf || (b.finite() && x < b.value); }

  std::string str() const {
    switch (kind) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return value.str();
    }
  }
};

/// Open interval (lo, hi) with lo < hi.
struct Interval {
  Bound lo;
  Bound hi;

  Interval(Bound l, Bound h) : lo(std::move(l)), hi(std::move(h)) {
    if (!(lo < hi) || lo.kind == Bound::Kind::PosInf || hi.kind == Bound::Kind::NegInf)
      fail(ErrorCode::Internal, "empty interval (" + lo.str() + "," + hi.str() + ")");
  }
  Interval(const Rat& l, const Rat& h) : Interval(Bound::at(l), Bound::at(h)) {}
  static Interval line() { return {Bound::neg_inf(), Bound::pos_inf()}; }

  bool contains(const Rat& x) const { return lo < x && x < hi; }
  bool bounded() const { return lo.finite() && hi.finite(); }

  /// A deterministic interior point: the midpoint when bounded.
  Rat interior_point() const {
    if (bounded()) return midpoint(lo.value, hi.value);
    if (lo.finite()) return lo.value + Rat(1);
    if (hi.finite()) return hi.value - Rat(1);
    return Rat(0);
  }

  friend bool operator==(const Interval&, const Interval&) = default;

  std::string str() const { return "(" + lo.str() + "," + hi.str() + ")"; }
};

enum class Relation { Disjoint, Equal, Subset, Superset, Overlapping };

inline std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::Disjoint: return "disjoint";
    case Relation::Equal: return "equal";
    case Relation::Subset: return "subset";
    case Relation::Superset: return "superset";
    case Relation::Overlapping: return "overlapping";
  }
  return "?";
}

/// Finite union of open intervals in canonical form: parts sorted, pairwise
/// disjoint, and hi_i <= lo_{i+1}. Parts may share an endpoint; the shared
/// point is not a member, so they never merge.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Canonical union of arbitrary (possibly overlapping) intervals.
  static IntervalSet from(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    IntervalSet out;
    for (auto& p : parts) {
      if (!out.parts_.empty() && p.lo < out.parts_.back().hi) {
        if (out.parts_.back().hi < p.hi) out.parts_.back().hi = p.hi;
      } else {
        out.parts_.push_back(std::move(p));
      }
    }
    return out;
  }
  static IntervalSet of(Interval i) { return from({std::move(i)}); }
  static IntervalSet line() { return of(Interval::line()); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  bool contains(const Rat& x) const {
    // First part with x < hi.
    auto it = std::partition_point(parts_.begin(), parts_.end(), [&](const Interval& i) { return !(x < i.hi); });
    return it != parts_.end() && it->contains(x);
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

  std::string str() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += "\xE2\x88\xAA";  // U+222A
      s += parts_[i].str();
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const IntervalSet& s) { return os << s.str(); }

 private:
  std::vector<Interval> parts_;
};

inline IntervalSet iset_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all(a.parts());
  all.insert(all.end(), b.parts().begin(), b.parts().end());
  return IntervalSet::from(std::move(all));
}

inline IntervalSet iset_intersection(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  const auto& pa = a.parts();
  const auto& pb = b.parts();
  while (i < pa.size() && j < pb.size()) {
    const Bound& lo = std::max(pa[i].lo, pb[j].lo);
    const Bound& hi = std::min(pa[i].hi, pb[j].hi);
    if (lo < hi) out.emplace_back(lo, hi);
    if (pa[i].hi < pb[j].hi) ++i; else ++j;
  }
  return IntervalSet::from(std::move(out));
}

/// Open complement of the closure of `a`.
inline IntervalSet iset_exterior(const IntervalSet& a) {
  std::vector<Interval> out;
  Bound cur = Bound::neg_inf();
  for (const auto& p : a.parts()) {
    if (cur < p.lo) out.emplace_back(cur, p.lo);
    cur = p.hi;
  }
  if (cur.kind != Bound::Kind::PosInf) out.emplace_back(cur, Bound::pos_inf());
  return IntervalSet::from(std::move(out));
}

/// a \ closure(b): the interior of the set difference.
inline IntervalSet iset_difference(const IntervalSet& a, const IntervalSet& b) {
  return iset_intersection(a, iset_exterior(b));
}

inline Relation iset_relate(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet common = iset_intersection(a, b);
  if (common.empty()) return Relation::Disjoint;
  if (a == b) return Relation::Equal;
  if (common == a) return Relation::Subset;
  if (common == b) return Relation::Superset;
  return Relation::Overlapping;
}

inline bool iset_subset(const IntervalSet& a, const IntervalSet& b) { return iset_intersection(a, b) == a; }

inline Bound parse_bound(Cursor& cur) {
  if (cur.accept("-inf")) return Bound::neg_inf();
  if (cur.accept("+inf")) return Bound::pos_inf();
  return Bound::at(parse_rat(cur));
}

/// Parses the rendering produced by IntervalSet::str(); the input must
/// already be canonical.
inline IntervalSet parse_interval_set(Cursor& cur) {
  if (cur.accept("{}")) return {};
  std::vector<Interval> parts;
  do {
    std::size_t line = cur.line(), col = cur.column();
    cur.expect("(");
    Bound lo = parse_bound(cur);
    cur.expect(",");
    Bound hi = parse_bound(cur);
    cur.expect(")");
    if (!(lo < hi) || lo.kind == Bound::Kind::PosInf || hi.kind == Bound::Kind::NegInf)
      throw ParseError(line, col, "empty interval");
    if (!parts.empty() && lo < parts.back().hi) throw ParseError(line, col, "parts overlap or are unsorted");
    parts.emplace_back(std::move(lo), std::move(hi));
  } while (cur.accept("\xE2\x88\xAA"));
  return IntervalSet::from(std::move(parts));
}

inline IntervalSet parse_interval_set(std::string_view text) {
  Cursor cur(text);
  IntervalSet s = parse_interval_set(cur);
  if (!cur.done()) cur.error("trailing characters after interval set");
  return s;
}

}  // namespace ordperm

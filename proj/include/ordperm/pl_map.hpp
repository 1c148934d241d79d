#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ordperm/interval_set.hpp"

namespace ordperm {

struct Anchor {
  Rat x;
  Rat y;
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// Piecewise-linear order-automorphism of Q: linear between anchors, slope 1
/// before the first and after the last anchor.
///
/// Canonical form: an anchor is kept only where the slope changes (tails
/// count as slope 1). A map with no slope change at all is a translation
/// x -> x + c and is stored as the single anchor (0, c), or no anchors when
/// c == 0. Structural equality is therefore map equality.
class PLMap {
 public:
  PLMap() = default;

  /// Validates monotonicity and canonicalizes.
  static PLMap from_anchors(std::vector<Anchor> anchors) {
    for (std::size_t i = 1; i < anchors.size(); ++i) {
      if (!(anchors[i - 1].x < anchors[i].x) || !(anchors[i - 1].y < anchors[i].y))
        fail(ErrorCode::NonMonotonicInput, "anchors must be strictly increasing in x and y");
    }
    PLMap f;
    f.anchors_ = std::move(anchors);
    f.canonicalize();
    return f;
  }

  static PLMap identity() { return {}; }
  static PLMap translation(const Rat& c) { return from_anchors({{Rat(0), c}}); }

  const std::vector<Anchor>& anchors() const { return anchors_; }
  bool is_identity() const { return anchors_.empty(); }
  /// True for x -> x + c (including the identity).
  bool is_translation() const { return anchors_.size() <= 1; }
  Rat translation_amount() const { return anchors_.empty() ? Rat(0) : anchors_[0].y - anchors_[0].x; }

  Rat operator()(const Rat& x) const { return eval_on(x, &Anchor::x, &Anchor::y); }
  /// Evaluates the inverse map without constructing it.
  Rat inverse_at(const Rat& y) const { return eval_on(y, &Anchor::y, &Anchor::x); }

  friend bool operator==(const PLMap&, const PLMap&) = default;

  std::string str() const {
    std::string s = "PL[";
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
      if (i) s += ",";
      s += "(" + anchors_[i].x.str() + "," + anchors_[i].y.str() + ")";
    }
    return s + "]";
  }
  friend std::ostream& operator<<(std::ostream& os, const PLMap& f) { return os << f.str(); }

 private:
  Rat eval_on(const Rat& v, Rat Anchor::*in, Rat Anchor::*out) const {
    if (anchors_.empty()) return v;
    auto it = std::partition_point(anchors_.begin(), anchors_.end(), [&](const Anchor& a) { return a.*in < v; });
    if (it == anchors_.begin()) return v + ((*it).*out - (*it).*in);
    if (it == anchors_.end()) {
      const Anchor& last = anchors_.back();
      return v + (last.*out - last.*in);
    }
    if ((*it).*in == v) return (*it).*out;
    const Anchor& a = *(it - 1);
    const Anchor& b = *it;
    return a.*out + (v - a.*in) * (b.*out - a.*out) / (b.*in - a.*in);
  }

  void canonicalize() {
    // Drop anchors where the incoming and outgoing slopes agree; tails are 1.
    std::vector<Anchor> kept;
    const std::size_t n = anchors_.size();
    auto slope = [&](std::size_t i, std::size_t j) {
      return (anchors_[j].y - anchors_[i].y) / (anchors_[j].x - anchors_[i].x);
    };
    // Walk with the last kept anchor so chains of collinear points collapse.
    for (std::size_t i = 0; i < n; ++i) {
      Rat in_slope = kept.empty() ? Rat(1)
                                  : (anchors_[i].y - kept.back().y) / (anchors_[i].x - kept.back().x);
      Rat out_slope = (i + 1 < n) ? slope(i, i + 1) : Rat(1);
      if (in_slope != out_slope) kept.push_back(anchors_[i]);
    }
    if (kept.empty() && n > 0) {
      // No slope change: a translation.
      Rat c = anchors_[0].y - anchors_[0].x;
      if (!c.is_zero()) kept.push_back({Rat(0), c});
    }
    anchors_ = std::move(kept);
  }

  std::vector<Anchor> anchors_;
};

/// Right-action composition: x (f*g) = (x f) g.
inline PLMap pl_compose(const PLMap& f, const PLMap& g) {
  std::vector<Rat> xs;
  xs.reserve(f.anchors().size() + g.anchors().size());
  for (const auto& a : f.anchors()) xs.push_back(a.x);
  for (const auto& a : g.anchors()) xs.push_back(f.inverse_at(a.x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Anchor> out;
  out.reserve(xs.size());
  for (auto& x : xs) {
    Rat y = g(f(x));
    out.push_back({std::move(x), std::move(y)});
  }
  return PLMap::from_anchors(std::move(out));
}

inline PLMap operator*(const PLMap& f, const PLMap& g) { return pl_compose(f, g); }

inline PLMap pl_inverse(const PLMap& f) {
  std::vector<Anchor> out;
  for (const auto& a : f.anchors()) out.push_back({a.y, a.x});
  return PLMap::from_anchors(std::move(out));
}

inline PLMap pl_pow(const PLMap& f, int n) {
  PLMap base = n < 0 ? pl_inverse(f) : f;
  PLMap out;
  for (int i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
  return out;
}

namespace detail {

// Pointwise max (take_max) or min of two maps; anchors at every breakpoint of
// either map and at every crossing between consecutive breakpoints.
inline PLMap pl_extremum(const PLMap& f, const PLMap& g, bool take_max) {
  std::vector<Rat> xs;
  for (const auto& a : f.anchors()) xs.push_back(a.x);
  for (const auto& a : g.anchors()) xs.push_back(a.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rat> cuts = xs;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat d0 = f(xs[i]) - g(xs[i]);
    Rat d1 = f(xs[i + 1]) - g(xs[i + 1]);
    if (d0.sign() * d1.sign() < 0) {
      // f - g is affine on the piece; solve for its zero.
      cuts.push_back(xs[i] + (xs[i + 1] - xs[i]) * d0 / (d0 - d1));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Anchor> out;
  for (auto& x : cuts) {
    Rat a = f(x), b = g(x);
    Rat y = take_max ? max(a, b) : min(a, b);
    out.push_back({x, y});
  }
  return PLMap::from_anchors(std::move(out));
}

}  // namespace detail

inline PLMap pl_vee(const PLMap& f, const PLMap& g) { return detail::pl_extremum(f, g, true); }
inline PLMap pl_wedge(const PLMap& f, const PLMap& g) { return detail::pl_extremum(f, g, false); }

/// {x : x f != x}, exact.
inline IntervalSet pl_support(const PLMap& f) {
  const auto& as = f.anchors();
  if (as.empty()) return {};
  // Collect the fixed-point set as sorted closed pieces [u, v] (u == v for
  // isolated points), with unbounded pieces marked by infinite bounds.
  struct Piece { Bound lo, hi; };
  std::vector<Piece> fixed;
  auto disp = [&](std::size_t i) { return as[i].y - as[i].x; };
  auto add = [&](Bound lo, Bound hi) {
    if (!fixed.empty() && !(fixed.back().hi < lo)) {
      if (fixed.back().hi < hi) fixed.back().hi = hi;
      return;
    }
    fixed.push_back({std::move(lo), std::move(hi)});
  };
  const std::size_t n = as.size();
  if (disp(0).is_zero()) add(Bound::neg_inf(), Bound::at(as[0].x));
  for (std::size_t i = 0; i < n; ++i) {
    Rat d0 = disp(i);
    if (d0.is_zero()) add(Bound::at(as[i].x), Bound::at(as[i].x));
    if (i + 1 < n) {
      Rat d1 = disp(i + 1);
      if (d0.is_zero() && d1.is_zero()) {
        add(Bound::at(as[i].x), Bound::at(as[i + 1].x));
      } else if (d0.sign() * d1.sign() < 0) {
        Rat z = as[i].x + (as[i + 1].x - as[i].x) * d0 / (d0 - d1);
        add(Bound::at(z), Bound::at(z));
      }
    }
  }
  if (disp(n - 1).is_zero()) add(Bound::at(as[n - 1].x), Bound::pos_inf());
  std::vector<Interval> moved;
  Bound cur = Bound::neg_inf();
  bool open = true;  // whether `cur` starts a moved region
  for (const auto& p : fixed) {
    if (open && cur < p.lo) moved.emplace_back(cur, p.lo);
    cur = p.hi;
    open = p.hi.kind != Bound::Kind::PosInf;
  }
  if (open) moved.emplace_back(cur, Bound::pos_inf());
  return IntervalSet::from(std::move(moved));
}

/// The map sending xi[i] to eta[i] for every i, slope-1 tails.
inline PLMap pl_interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
  if (points.empty()) fail(ErrorCode::NonMonotonicInput, "interpolation needs at least one pair");
  std::vector<Anchor> as;
  for (const auto& [x, y] : points) as.push_back({x, y});
  return PLMap::from_anchors(std::move(as));
}

/// Positive bump: fixes everything outside (mu1, mu2), sends gamma1 to gamma2.
inline PLMap pl_bump(const Rat& mu1, const Rat& gamma1, const Rat& gamma2, const Rat& mu2) {
  if (!(mu1 < gamma1 && gamma1 < gamma2 && gamma2 < mu2))
    fail(ErrorCode::NonMonotonicInput, "bump needs mu1 < gamma1 < gamma2 < mu2");
  return PLMap::from_anchors({{mu1, mu1}, {gamma1, gamma2}, {mu2, mu2}});
}

/// Image of an interval set under an order-automorphism.
inline IntervalSet pl_image(const IntervalSet& s, const PLMap& f) {
  std::vector<Interval> out;
  auto img = [&](const Bound& b) { return b.finite() ? Bound::at(f(b.value)) : b; };
  for (const auto& p : s.parts()) out.emplace_back(img(p.lo), img(p.hi));
  return IntervalSet::from(std::move(out));
}

/// Agrees with f on lambda and with the identity elsewhere. Every part of
/// lambda must be f-invariant, i.e. its finite endpoints are fixed by f.
inline PLMap pl_dep(const PLMap& f, const IntervalSet& lambda) {
  if (lambda == IntervalSet::line()) return f;
  std::vector<Anchor> out;
  auto push = [&](const Rat& x, const Rat& y) {
    if (out.empty() || out.back().x < x) out.push_back({x, y});
  };
  for (const auto& part : lambda.parts()) {
    for (const Bound* b : {&part.lo, &part.hi}) {
      if (b->finite() && f(b->value) != b->value)
        fail(ErrorCode::NotInvariant, "endpoint " + b->value.str() + " of " + part.str() + " is not fixed");
    }
    if (part.lo.finite()) push(part.lo.value, part.lo.value);
    for (const auto& a : f.anchors()) {
      if (part.contains(a.x)) push(a.x, a.y);
    }
    if (part.hi.finite()) push(part.hi.value, part.hi.value);
  }
  return PLMap::from_anchors(std::move(out));
}

/// g^f = f^-1 g f.
inline PLMap pl_conj(const PLMap& g, const PLMap& f) { return pl_inverse(f) * g * f; }
/// [f, g] = f^-1 g^-1 f g.
inline PLMap pl_comm(const PLMap& f, const PLMap& g) { return pl_inverse(f) * pl_inverse(g) * f * g; }

/// r f r for the order-reversing involution r : x -> -x.
inline PLMap pl_reflect(const PLMap& f) {
  std::vector<Anchor> out;
  for (auto it = f.anchors().rbegin(); it != f.anchors().rend(); ++it) out.push_back({-it->x, -it->y});
  return PLMap::from_anchors(std::move(out));
}

/// Whether f maps every listed pairwise-disjoint interval onto some listed
/// interval (the list is permuted setwise).
inline bool pl_permutes(const PLMap& f, const std::vector<Interval>& family) {
  for (const auto& s : family) {
    IntervalSet img = pl_image(IntervalSet::of(s), f);
    bool found = std::any_of(family.begin(), family.end(), [&](const Interval& t) { return img == IntervalSet::of(t); });
    if (!found) return false;
  }
  return true;
}

inline bool pl_fixes_each(const PLMap& f, const std::vector<Interval>& family) {
  return std::all_of(family.begin(), family.end(),
                     [&](const Interval& s) { return pl_image(IntervalSet::of(s), f) == IntervalSet::of(s); });
}

inline PLMap parse_plmap(Cursor& cur) {
  std::size_t line = cur.line(), col = cur.column();
  cur.expect("PL[");
  std::vector<Anchor> as;
  if (!cur.accept("]")) {
    do {
      cur.expect("(");
      Rat x = parse_rat(cur);
      cur.expect(",");
      Rat y = parse_rat(cur);
      cur.expect(")");
      as.push_back({std::move(x), std::move(y)});
    } while (cur.accept(","));
    cur.expect("]");
  }
  try {
    PLMap f = PLMap::from_anchors(as);
    if (f.anchors() != as) throw ParseError(line, col, "non-canonical PL map " + f.str());
    return f;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, col, e.what());
  }
}

inline PLMap parse_plmap(std::string_view text) {
  Cursor cur(text);
  PLMap f = parse_plmap(cur);
  if (!cur.done()) cur.error("trailing characters after PL map");
  return f;
}

}  // namespace ordperm

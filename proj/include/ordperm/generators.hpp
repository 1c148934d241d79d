#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "ordperm/rng.hpp"

namespace ordperm {

/// n distinct sorted rationals in [lo, hi].
inline std::vector<Rat> gen_sorted(Rng& rng, std::size_t n, long lo = -8, long hi = 8, long max_den = 16) {
  std::set<Rat> s;
  while (s.size() < n) s.insert(rng.rational(lo, hi, max_den));
  return {s.begin(), s.end()};
}

inline PLMap gen_plmap(Rng& rng, std::size_t max_anchors = 4) {
  std::size_t m = static_cast<std::size_t>(rng.range(0, static_cast<long>(max_anchors)));
  if (m == 0) return PLMap::identity();
  auto xs = gen_sorted(rng, m);
  auto ys = gen_sorted(rng, m);
  std::vector<std::pair<Rat, Rat>> pts;
  for (std::size_t i = 0; i < m; ++i) pts.emplace_back(xs[i], ys[i]);
  return pl_interpolate(pts);
}

/// Bump with support inside (lo, hi): upward or (with `either`) downward.
inline PLMap gen_bump(Rng& rng, long lo = -8, long hi = 8, bool either = true) {
  auto v = gen_sorted(rng, 4, lo, hi);
  PLMap b = pl_bump(v[0], v[1], v[2], v[3]);
  return (either && rng.coin()) ? pl_inverse(b) : b;
}

inline PLMap gen_translation(Rng& rng) {
  Rat c = rng.rational(-4, 4);
  if (c.is_zero()) c = Rat(1);
  return PLMap::translation(c);
}

/// Conjugator-style word: product of up to max_len generators drawn from a
/// pool of bumps and translations.
inline PLMap gen_word(Rng& rng, const std::vector<PLMap>& pool, std::size_t max_len = 4) {
  PLMap out = PLMap::identity();
  std::size_t len = static_cast<std::size_t>(rng.range(1, static_cast<long>(max_len)));
  for (std::size_t i = 0; i < len; ++i) {
    const PLMap& p = rng.pick(pool);
    out = out * (rng.coin() ? p : pl_inverse(p));
  }
  return out;
}

inline std::vector<PLMap> gen_pool(Rng& rng, std::size_t bumps = 6, std::size_t translations = 2) {
  std::vector<PLMap> pool;
  for (std::size_t i = 0; i < bumps; ++i) pool.push_back(gen_bump(rng, -8, 8, false));
  for (std::size_t i = 0; i < translations; ++i) pool.push_back(gen_translation(rng));
  return pool;
}

inline IntervalSet gen_iset(Rng& rng, std::size_t max_parts = 3) {
  std::vector<Interval> parts;
  std::size_t n = static_cast<std::size_t>(rng.range(0, static_cast<long>(max_parts)));
  for (std::size_t i = 0; i < n; ++i) {
    auto e = gen_sorted(rng, 2, -6, 6, 4);
    Bound lo = rng.below(8) == 0 ? Bound::neg_inf() : Bound::at(e[0]);
    Bound hi = rng.below(8) == 0 ? Bound::pos_inf() : Bound::at(e[1]);
    parts.emplace_back(lo, hi);
  }
  return IntervalSet::from(std::move(parts));
}

/// Component map allowed at a level of the given kind.
inline PLMap gen_component(Rng& rng, ComponentKind kind) {
  if (kind == ComponentKind::REG) return rng.below(3) == 0 ? PLMap::identity() : gen_translation(rng);
  switch (rng.below(4)) {
    case 0: return PLMap::identity();
    case 1: return gen_bump(rng);
    case 2: return gen_translation(rng);
    default: return gen_plmap(rng, 3);
  }
}

/// Random tower element. Override fibers are drawn from small integers so
/// that products of independent samples interact.
inline LexAut gen_lexaut(Rng& rng, const TowerModel& model) {
  PLMap top = gen_component(rng, model.kinds[0]);
  if (model.depth() == 1) return LexAut::of(std::move(top));
  TowerModel rest = model.tail();
  std::vector<LexOverride> over;
  std::set<Rat> used;
  std::size_t n = static_cast<std::size_t>(rng.range(0, 2));
  for (std::size_t i = 0; i < n; ++i) {
    Rat key(rng.range(-2, 2));
    if (!used.insert(key).second) continue;
    over.push_back({key, gen_lexaut(rng, rest)});
  }
  return LexAut::make(model.depth(), std::move(top), std::move(over));
}

/// Non-identity component map for a level of the given kind.
inline PLMap gen_moving_component(Rng& rng, ComponentKind kind) {
  PLMap m = gen_component(rng, kind);
  while (m.is_identity()) m = gen_component(rng, kind);
  return m;
}

/// Element of Q_B: supported in b and moving its children.
inline LexAut gen_q_element(Rng& rng, const TowerModel& model, const OBlock& b) {
  TowerModel rest = model.tail(static_cast<int>(b.prefix.size()));
  LexAut tail = gen_lexaut(rng, rest);
  tail = LexAut::make(tail.depth(), gen_moving_component(rng, rest.kinds[0]), tail.overrides());
  return nest(b.prefix, tail);
}

/// Element of st(b): an arbitrary action inside b, optionally combined with
/// movement elsewhere that leaves b in place.
inline LexAut gen_outside(Rng& rng, const TowerModel& model, const std::vector<Rat>& prefix);

inline LexAut gen_stabilizer(Rng& rng, const TowerModel& model, const OBlock& b) {
  LexAut inside = nest(b.prefix, gen_lexaut(rng, model.tail(static_cast<int>(b.prefix.size()))));
  if (b.prefix.empty() || rng.coin()) return inside;
  return gen_outside(rng, model, b.prefix) * inside;
}

/// Non-identity element fixing every point of the block with this prefix
/// (which must be non-empty) and leaving the block in place.
inline LexAut gen_outside(Rng& rng, const TowerModel& model, const std::vector<Rat>& prefix) {
  const int d = model.depth();
  const Rat& p0 = prefix[0];
  std::uint64_t choice = rng.below(prefix.size() > 1 ? 3 : 2);
  if (choice == 0 && model.kinds[0] == ComponentKind::PL2T) {
    auto v = gen_sorted(rng, 4, 1, 6);
    PLMap b = pl_bump(v[0], v[1], v[2], v[3]);
    // Shift the bump's support to one side of p0.
    PLMap shift = PLMap::translation(rng.coin() ? p0 : p0 - Rat(7));
    return LexAut::make(d, pl_conj(b, shift));
  }
  if (choice == 2) {
    std::vector<Rat> rest(prefix.begin() + 1, prefix.end());
    return LexAut::make(d, PLMap::identity(), {{p0, gen_outside(rng, model.tail(), rest)}});
  }
  Rat fiber = p0 + Rat(rng.coin() ? rng.range(1, 2) : -rng.range(1, 2));
  LexAut t = gen_lexaut(rng, model.tail());
  while (t.is_identity()) t = gen_lexaut(rng, model.tail());
  return LexAut::make(d, PLMap::identity(), {{fiber, t}});
}

/// Random point with small coordinates, often landing in override fibers.
inline Point gen_point(Rng& rng, int depth) {
  std::vector<Rat> cs;
  for (int i = 0; i < depth; ++i) cs.push_back(rng.coin() ? Rat(rng.range(-2, 2)) : rng.rational(-6, 6));
  return Point(std::move(cs));
}

}  // namespace ordperm

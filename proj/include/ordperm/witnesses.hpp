#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordperm/certificate.hpp"
#include "ordperm/generators.hpp"

namespace ordperm {

// ---------------------------------------------------------------------------
// Small constructions shared by the witnesses.

namespace detail {

inline Rat mid(const Rat& a, const Rat& b) { return midpoint(a, b); }

inline Point pad(std::vector<Rat> prefix, int depth, const Rat& next = Rat(0)) {
  if (static_cast<int>(prefix.size()) < depth) prefix.push_back(next);
  prefix.resize(static_cast<std::size_t>(depth), Rat(0));
  return Point(std::move(prefix));
}

/// The element acting as m on the coordinate right after the prefix of every
/// point carrying that prefix, and trivially elsewhere.
inline LexAut lift(const std::vector<Rat>& prefix, const PLMap& m, int depth) {
  return nest(prefix, LexAut::make(depth - static_cast<int>(prefix.size()), m));
}

/// An element of Q_B for B = block_of(beta, level): shifts the coordinate
/// indexing B's children by one, only inside B.
inline LexAut q_element(const Point& beta, int level) {
  Point moved = beta;
  moved.coords[static_cast<std::size_t>(level - 1)] += Rat(1);
  return lex_dep(lex_transport(beta, moved), {block_of(beta, level)});
}

/// A positive bump supported inside (a, b) or (b, a).
inline PLMap bump_between(const Rat& a, const Rat& b) {
  const Rat& lo = a < b ? a : b;
  const Rat& hi = a < b ? b : a;
  Rat w = hi - lo;
  return pl_bump(lo, lo + w / Rat(4), lo + w / Rat(2), hi);
}

/// Open interval centred at c that is disjoint from its image under every
/// map (each must move c). Halves the radius at most 64 times.
inline Interval isolate(const Rat& c, const std::vector<PLMap>& maps) {
  Rat eps(1);
  for (int i = 0; i <= 64; ++i, eps = eps / Rat(2)) {
    Rat lo = c - eps, hi = c + eps;
    bool ok = std::all_of(maps.begin(), maps.end(), [&](const PLMap& m) { return m(lo) >= hi || m(hi) <= lo; });
    if (ok) return Interval(lo, hi);
  }
  fail(ErrorCode::Internal, "no isolating interval around " + c.str() + " after 64 bisections");
}

/// Registers h, or h^t when a conjugator is given, and returns its word.
inline Word put_base(CertBuilder& b, const LexAut& h, const std::optional<LexAut>& outer) {
  Word w = b.elem("h", h);
  if (!outer) return w;
  Word t = b.elem("t", *outer);
  return b.word("ht", conj(w, t));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two disjoint supporting intervals

/// Data of the construction in the normalized frame, where h moves the
/// interval d1 upward and d1 < d2 = d1 g.
struct Lemma31Data {
  PLMap h, g, f, k;
  Interval d1{Rat(0), Rat(1)};
  Interval d2{Rat(0), Rat(1)};
  Rat gamma, delta, lambda, mu;
  bool reflected = false;
  bool swapped = false;
};

struct Lemma31Result {
  PLMap f, k;
  Rat point;  // w1 w2 and w2 w1 disagree here
  Lemma31Data normalized;
  WitnessCert cert;
};

namespace detail {

inline void lemma31_core(Lemma31Data& n) {
  const PLMap& h = n.h;
  const PLMap H = pl_conj(h, n.g);
  const PLMap hi = pl_inverse(h), Hi = pl_inverse(H);

  n.gamma = n.d2.interior_point();
  Rat gH2 = H(H(n.gamma));
  n.mu = H(gH2);
  n.delta = mid(gH2, n.mu);
  n.lambda = mid(n.delta, n.mu);

  Rat xi0 = n.d1.interior_point();
  Rat xim = mid(n.d1.lo.value, xi0);
  n.k = pl_interpolate({{xim, n.gamma},
                        {xi0, H(n.gamma)},
                        {n.gamma, Hi(n.mu)},
                        {H(n.gamma), n.delta},
                        {gH2, n.mu},
                        {H(gH2), H(n.lambda)}});

  Rat alpha = n.d1.interior_point();
  Rat beta = mid(hi(alpha), alpha);
  Rat z4 = alpha, z1 = mid(z4, h(z4)), z2 = mid(z4, z1), z3 = mid(z4, z2);
  auto back = [&](Rat x, int times) {
    for (int i = 0; i < times; ++i) x = hi(x);
    return x;
  };
  n.f = pl_interpolate({{z4, back(beta, 3)},
                        {z3, back(alpha, 3)},
                        {z2, back(beta, 2)},
                        {z1, back(alpha, 2)},
                        {h(z4), Hi(n.gamma)},
                        {h(z3), n.gamma},
                        {h(z2), n.delta},
                        {h(z1), n.lambda}});

  PLMap w1 = pl_comm(hi, pl_conj(h, n.f));
  PLMap w2 = pl_comm(Hi, pl_conj(H, n.k));
  if (w1(n.lambda) != n.gamma || w2(n.lambda) != n.delta || w2(n.gamma) != n.gamma || w1(n.delta) != Hi(n.gamma))
    fail(ErrorCode::Internal, "two-interval construction: intermediate identities failed");
}

}  // namespace detail

/// Given h != 1 with supp(h) and supp(h^g) disjoint, builds f, k with
/// [h^-1,h^f][h^-g,h^gk] != [h^-g,h^gk][h^-1,h^f].
inline Lemma31Result lemma31(const PLMap& h, const PLMap& g) {
  if (h.is_identity()) fail(ErrorCode::NoSupportingInterval, "h is the identity");
  const IntervalSet sh = pl_support(h);
  if (!iset_intersection(sh, pl_support(pl_conj(h, g))).empty())
    fail(ErrorCode::SupportsNotDisjoint, "supp(h) meets supp(h^g)");
  Interval c = sh.parts().front();
  if (!c.bounded()) fail(ErrorCode::SupportsNotDisjoint, "unbounded supporting interval");

  Lemma31Data n;
  n.h = h;
  n.g = g;
  Rat a = c.interior_point();
  if (h(a) < a) {
    n.h = pl_reflect(h);
    n.g = pl_reflect(g);
    n.reflected = true;
    c = Interval(-c.hi.value, -c.lo.value);
  }
  Interval cg(n.g(c.lo.value), n.g(c.hi.value));
  if (cg.lo.value < c.lo.value) {
    n.h = pl_conj(n.h, n.g);
    n.g = pl_inverse(n.g);
    n.swapped = true;
    std::swap(c, cg);
  }
  n.d1 = c;
  n.d2 = cg;
  detail::lemma31_core(n);

  Lemma31Result r;
  r.f = n.swapped ? n.k : n.f;
  r.k = n.swapped ? n.f : n.k;
  if (n.reflected) {
    r.f = pl_reflect(r.f);
    r.k = pl_reflect(r.k);
  }
  r.point = n.reflected ? -n.lambda : n.lambda;
  r.normalized = n;

  CertBuilder b("lemma31", TowerModel{{ComponentKind::PL2T}});
  if (n.reflected) b.note("normalized by reflection x -> -x");
  if (n.swapped) b.note("normalized by swapping h with h^g");
  b.note("gamma=" + n.gamma.str() + " delta=" + n.delta.str() + " lambda=" + n.lambda.str() + " mu=" + n.mu.str());
  Word H = b.elem("h", h), G = b.elem("g", g), F = b.elem("f", r.f), K = b.elem("k", r.k);
  Word hg = b.word("hg", conj(H, G));
  Word w1 = b.word("w1", comm(inv(H), conj(H, F)));
  Word w2 = b.word("w2", comm(inv(hg), conj(hg, K)));
  r.cert = require_valid(b.finish(w1 * w2, w2 * w1, Claim::NotEqual, r.point));
  return r;
}

// ---------------------------------------------------------------------------
// A commutator from X_h against an arbitrary f

enum class RefuteRoute { FixesSupport, Blocks, Bisection };

inline std::string_view route_name(RefuteRoute r) {
  switch (r) {
    case RefuteRoute::FixesSupport: return "fixes-support";
    case RefuteRoute::Blocks: return "blocks";
    default: return "bisection";
  }
}

struct RefuteOptions {
  std::optional<Point> beta;    // preferred point of supp(h) moved by f
  std::optional<LexAut> outer;  // work with h^outer instead of h
  std::uint64_t seed = 0;       // for the fixedness samples
  std::size_t samples = 20;
};

struct RefuteResult {
  RefuteRoute route = RefuteRoute::FixesSupport;
  LexAut g;  // c = [h^-1, h^g]
  LexAut c;
  Point beta;
  OBlock block;  // block of the construction
  std::vector<WitnessCert> certs;
};

namespace detail {

inline RefuteResult fixes_support(const TowerModel& model, const LexAut& h_in, const LexAut& h, const LexAut& f,
                                  const RefuteOptions& opt) {
  RefuteResult r;
  r.route = RefuteRoute::FixesSupport;
  r.g = r.c = LexAut::identity(model.depth());
  Rng rng(opt.seed);
  LexSupport s = lex_support(h);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    Point p = ls_sample(s, rng);
    CertBuilder b("fixes-support", model);
    put_base(b, h_in, opt.outer);
    Word F = b.elem("f", f);
    r.certs.push_back(require_valid(b.finish(F, {}, Claim::Equal, p)));
  }
  return r;
}

struct RefuteSetup {
  LexAut h;
  std::optional<Point> beta;  // empty when f fixes supp(h)
};

inline RefuteSetup refute_setup(const LexAut& h_in, const LexAut& f, const OBlock& delta, const RefuteOptions& opt) {
  LexAut h = opt.outer ? lex_conj(h_in, *opt.outer) : h_in;
  if (!in_Q(h, delta)) fail(ErrorCode::NotInQ, delta.str());
  LexSupport meet = ls_intersection(lex_support(h), lex_support(f));
  if (meet.empty()) return {h, std::nullopt};
  if (opt.beta && ls_contains(meet, *opt.beta)) return {h, opt.beta};
  return {h, ls_point(meet)};
}

inline WitnessCert refute_cert(const TowerModel& model, std::string kind, const LexAut& h_in, const LexAut& f,
                               const RefuteOptions& opt, const LexAut& g, const Point& at) {
  CertBuilder b(std::move(kind), model);
  Word H = put_base(b, h_in, opt.outer);
  Word G = b.elem("g", g), F = b.elem("f", f);
  Word C = b.word("c", comm(inv(H), conj(H, G)));
  return require_valid(b.finish(C * F, F * C, Claim::NotEqual, at));
}

}  // namespace detail

/// Block-level route: either f fixes supp(h) (sampled and exact), or some
/// g in Q of a block strictly below both V(beta,beta h) and V(beta,beta f)
/// gives [[h^-1,h^g],f] != 1.
inline RefuteResult lemma41b(const TowerModel& model, const LexAut& h_in, const LexAut& f, const OBlock& delta,
                             const RefuteOptions& opt = {}) {
  auto [h, beta] = detail::refute_setup(h_in, f, delta, opt);
  if (!beta) return detail::fixes_support(model, h_in, h, f, opt);
  const int d = model.depth();
  Point bh = lex_apply(h, *beta), bf = lex_apply(f, *beta);
  int level = std::max(congr_V(*beta, bh).level, congr_V(*beta, bf).level) + 1;
  if (level > d) fail(ErrorCode::DepthExhausted, "no block level below " + std::to_string(level - 1));

  RefuteResult r;
  r.route = RefuteRoute::Blocks;
  r.beta = *beta;
  r.block = block_of(*beta, level);
  r.g = detail::q_element(*beta, level);
  r.c = lex_comm(lex_inverse(h), lex_conj(h, r.g));
  LexAut cf = r.c * f, fc = f * r.c;
  for (const Point& w : {lex_apply_inverse(h, *beta), *beta, bh}) {
    if (lex_apply(cf, w) == lex_apply(fc, w)) continue;
    r.certs.push_back(detail::refute_cert(model, "lemma41b", h_in, f, opt, r.g, w));
    return r;
  }
  fail(ErrorCode::Internal, "block-level refutation found no separating point");
}

/// Bisection route for the bottom level: a bump g in an interval around
/// beta that h and f move off itself; requires a PL2T bottom level.
inline RefuteResult lemma51b(const TowerModel& model, const LexAut& h_in, const LexAut& f, const OBlock& delta,
                             const RefuteOptions& opt = {}) {
  auto [h, beta] = detail::refute_setup(h_in, f, delta, opt);
  if (!beta) return detail::fixes_support(model, h_in, h, f, opt);
  const int d = model.depth();
  if (model.kinds.back() == ComponentKind::REG) fail(ErrorCode::AbelianComponent, "bottom level is REG");

  RefuteResult r;
  r.route = RefuteRoute::Bisection;
  r.beta = *beta;
  r.block = block_of(*beta, d);
  std::vector<PLMap> maps;
  for (const LexAut* m : std::initializer_list<const LexAut*>{&h, &f}) {
    if (in_st(*m, r.block)) maps.push_back(induced_action(*m, r.block));
  }
  const Rat& x = beta->coords.back();
  Interval iv = detail::isolate(x, maps);
  r.g = detail::lift(r.block.prefix, pl_bump(iv.lo.value, x, detail::mid(x, iv.hi.value), iv.hi.value), d);
  r.c = lex_comm(lex_inverse(h), lex_conj(h, r.g));
  r.certs.push_back(detail::refute_cert(model, "lemma51b", h_in, f, opt, r.g, *beta));
  return r;
}

/// Block route, falling back to bisection when the tower runs out of levels.
inline RefuteResult refute_commuting(const TowerModel& model, const LexAut& h, const LexAut& f, const OBlock& delta,
                                     const RefuteOptions& opt = {}) {
  try {
    return lemma41b(model, h, f, delta, opt);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DepthExhausted) throw;
  }
  return lemma51b(model, h, f, delta, opt);
}

// ---------------------------------------------------------------------------
// Non-commuting members of X_h and X_{h^g}

enum class PairCase { NonMinimal, Minimal, MinimalAdapted, Induced };

inline std::string_view case_name(PairCase c) {
  switch (c) {
    case PairCase::NonMinimal: return "i";
    case PairCase::Minimal: return "ii";
    case PairCase::MinimalAdapted: return "ii-adapted";
    default: return "iii";
  }
}

struct Lemma42Result {
  PairCase which = PairCase::Induced;
  LexAut y, x;  // b = [h^-1, h^y], a = [k^-1, k^x], k = h^g
  LexAut b, a;
  Point point;
  WitnessCert cert;
  std::optional<Lemma31Result> induced;
};

/// For h in Q_Delta and g in st(Delta), members b of X_h and a of X_{h^g}
/// with ab != ba.
inline Lemma42Result lemma42b(const TowerModel& model, const LexAut& h, const LexAut& g, const OBlock& delta) {
  using detail::lift;
  using detail::mid;
  if (!in_Q(h, delta)) fail(ErrorCode::NotInQ, delta.str());
  if (!in_st(g, delta)) fail(ErrorCode::NotInStabilizer, delta.str());
  const int d = model.depth();
  const int L = delta.level;
  const auto& p = delta.prefix;
  const LexAut k = lex_conj(h, g);
  const PLMap hD = induced_action(h, delta), kD = induced_action(k, delta);
  const IntervalSet common = iset_intersection(pl_support(hD), pl_support(kD));

  Lemma42Result r;
  if (common.empty()) {
    r.which = PairCase::Induced;
    if (model.kinds[static_cast<std::size_t>(L - 1)] == ComponentKind::REG)
      fail(ErrorCode::AbelianComponent, "induced action on a REG level");
    Lemma31Result l = lemma31(hD, induced_action(g, delta));
    r.y = lift(p, l.f, d);
    r.x = lift(p, l.k, d);
    r.point = detail::pad(p, d, l.point);
    r.induced = std::move(l);
  } else {
    const Rat c = common.parts().front().interior_point();
    if (L + 2 <= d) {
      r.which = PairCase::NonMinimal;
      OBlock gamma = child_block(delta, c);
      OBlock inner = L + 3 <= d ? child_block(gamma, Rat(0)) : gamma;
      r.point = detail::pad(inner.prefix, d);
      r.y = detail::q_element(r.point, inner.level);
      r.x = detail::q_element(r.point, inner.level + 1);
    } else {
      if (model.kinds.back() == ComponentKind::REG) fail(ErrorCode::AbelianComponent, "bottom level is REG");
      if (L + 1 == d) {
        // Both move the minimal child at c: bumps inside that child.
        r.which = PairCase::MinimalAdapted;
        OBlock gamma = child_block(delta, c);
        r.y = lift(gamma.prefix, pl_bump(Rat(-1), Rat(0), Rat(1, 2), Rat(1)), d);
        r.x = lift(gamma.prefix, pl_bump(Rat(0), Rat(1, 4), Rat(3, 8), Rat(1, 2)), d);
        r.point = detail::pad(gamma.prefix, d, Rat(1, 4));
      } else {
        r.which = PairCase::Minimal;
        Interval iv = detail::isolate(c, {hD, kD});
        const Rat& l1 = iv.lo.value;
        const Rat& l2 = iv.hi.value;
        Rat dy = mid(c, l2);
        Rat beta = mid(c, dy);
        r.y = lift(p, pl_bump(l1, c, dy, l2), d);
        r.x = lift(p, pl_bump(c, beta, mid(beta, dy), dy), d);
        r.point = detail::pad(p, d, beta);
      }
    }
  }
  r.b = lex_comm(lex_inverse(h), lex_conj(h, r.y));
  r.a = lex_comm(lex_inverse(k), lex_conj(k, r.x));

  CertBuilder b("lemma42b." + std::string(case_name(r.which)), model);
  b.note("block " + delta.str());
  Word H = b.elem("h", h), G = b.elem("g", g), Y = b.elem("y", r.y), X = b.elem("x", r.x);
  Word K = b.word("k", conj(H, G));
  Word B = b.word("b", comm(inv(H), conj(H, Y)));
  Word A = b.word("a", comm(inv(K), conj(K, X)));
  bool conj_form = r.which == PairCase::Minimal || r.which == PairCase::MinimalAdapted;
  r.cert = conj_form ? b.finish(conj(A, B), A, Claim::NotEqual, r.point)
                     : b.finish(B * A, A * B, Claim::NotEqual, r.point);
  require_valid(r.cert);
  return r;
}

// ---------------------------------------------------------------------------
// Samples of X_h and W_h

struct Member {
  LexAut outer;  // the base is h^outer
  LexAut inner;  // value = [b^-1, b^inner] for the base b
  LexAut value;
  std::string tag;

  bool trivial() const { return value.is_identity(); }
  friend bool operator==(const Member&, const Member&) = default;
};

struct Rejection {
  LexAut conjugator;
  OBlock image;
  bool supports_disjoint = false;
  WitnessCert cert;
  friend bool operator==(const Rejection&, const Rejection&) = default;
};

struct SampleSet {
  LexAut base;
  std::uint64_t seed = 0;
  std::vector<Member> members;
  std::vector<WitnessCert> certs;
  std::vector<Rejection> rejected;
  std::size_t skipped = 0;           // candidates where no pair could be built
  std::size_t exact_identities = 0;  // candidates proved trivial exactly
  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

inline LexAut x_value(const LexAut& h, const LexAut& g) { return lex_comm(lex_inverse(h), lex_conj(h, g)); }

/// A conjugator t with [h^-1, h^t] != 1, when the model admits one.
inline std::optional<LexAut> fundamental_conjugator(const TowerModel& model, const LexAut& h) {
  auto alpha = moved_point(h);
  if (!alpha) return std::nullopt;
  const int d = model.depth();
  Point ah = lex_apply(h, *alpha);
  int v = congr_V(*alpha, ah).level;
  if (v < d) return detail::q_element(*alpha, v + 1);
  if (model.kinds.back() == ComponentKind::REG) return std::nullopt;
  std::vector<Rat> prefix(alpha->coords.begin(), alpha->coords.end() - 1);
  return detail::lift(prefix, detail::bump_between(alpha->coords.back(), ah.coords.back()), d);
}

namespace detail {

inline std::vector<LexAut> sample_pool(Rng& rng, const TowerModel& model, std::size_t n = 6) {
  std::vector<LexAut> pool;
  while (pool.size() < n) {
    LexAut g = gen_lexaut(rng, model);
    if (!g.is_identity()) pool.push_back(std::move(g));
  }
  return pool;
}

inline LexAut pool_word(Rng& rng, const std::vector<LexAut>& pool, std::size_t max_len = 4) {
  LexAut out = LexAut::identity(pool.front().depth());
  std::size_t len = static_cast<std::size_t>(rng.range(1, static_cast<long>(max_len)));
  for (std::size_t i = 0; i < len; ++i) {
    const LexAut& p = rng.pick(pool);
    out = out * (rng.coin() ? p : lex_inverse(p));
  }
  return out;
}

}  // namespace detail

/// n members of X_h: the identity member, a fundamental non-trivial member
/// when one exists, then random conjugators.
inline SampleSet sample_X(const TowerModel& model, const LexAut& h, std::size_t n, std::uint64_t seed) {
  require_conforms(model, h);
  if (h.is_identity()) fail(ErrorCode::IdentityBase, "X_1 is trivial");
  const int d = model.depth();
  SampleSet s;
  s.base = h;
  s.seed = seed;
  const LexAut one = LexAut::identity(d);
  s.members.push_back({one, one, one, "identity"});
  if (auto t = fundamental_conjugator(model, h)) s.members.push_back({one, *t, x_value(h, *t), "fundamental"});
  Rng rng(seed);
  auto pool = detail::sample_pool(rng, model);
  while (s.members.size() < n) {
    LexAut g = detail::pool_word(rng, pool);
    s.members.push_back({one, g, x_value(h, g), "random"});
  }
  return s;
}

/// n members of W_h for h in Q_Delta, each certified by a non-commuting pair.
/// Conjugators moving Delta are rejected with a commuting certificate. On a
/// locally abelian minimal block every candidate commutator is trivial and
/// the sample is empty.
inline SampleSet sample_W(const TowerModel& model, const LexAut& h, const OBlock& delta, std::size_t n,
                          std::uint64_t seed) {
  require_conforms(model, h);
  if (!in_Q(h, delta)) fail(ErrorCode::NotInQ, delta.str());
  const int d = model.depth();
  SampleSet s;
  s.base = h;
  s.seed = seed;
  Rng rng(seed);
  auto pool = detail::sample_pool(rng, model);

  if (model.locally_abelian() && delta.level == d) {
    const Point at = ls_point(lex_support(h));
    for (std::size_t i = 0; i < n; ++i) {
      LexAut f = detail::pool_word(rng, pool);
      if (!x_value(h, f).is_identity()) fail(ErrorCode::Internal, "non-trivial commutator on an abelian block");
      ++s.exact_identities;
      CertBuilder b("abelian-block", model);
      Word H = b.elem("h", h), F = b.elem("f", f);
      s.certs.push_back(require_valid(b.finish(comm(inv(H), conj(H, F)), {}, Claim::Equal, at)));
    }
    return s;
  }

  const std::optional<LexAut> t = fundamental_conjugator(model, h);
  for (std::size_t attempt = 0; s.members.size() < n && attempt < 8 * n; ++attempt) {
    LexAut g = attempt % 2 == 0 ? detail::pool_word(rng, pool) : gen_stabilizer(rng, model, delta);
    if (!in_st(g, delta)) {
      Rejection rej;
      rej.conjugator = g;
      rej.image = block_image(g, delta);
      if (t) {
        LexAut c = x_value(h, *t);
        rej.supports_disjoint = ls_intersection(lex_support(c), lex_support(lex_conj(c, g))).empty();
        CertBuilder b("disjoint-support", model);
        b.note("block " + delta.str() + " moved to " + rej.image.str());
        Word H = b.elem("h", h), G = b.elem("g", g), T = b.elem("t", *t);
        Word C = b.word("c", comm(inv(H), conj(H, T)));
        Word CG = b.word("cg", conj(C, G));
        rej.cert = require_valid(b.finish(C * CG, CG * C, Claim::Equal, ls_point(lex_support(c))));
      }
      s.rejected.push_back(std::move(rej));
      continue;
    }
    try {
      Lemma42Result r = lemma42b(model, h, g, delta);
      s.members.push_back({g, r.x, r.a, "lemma42b." + std::string(case_name(r.which))});
      s.certs.push_back(std::move(r.cert));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AbelianComponent) throw;
      ++s.skipped;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Centralizer refutation

enum class CentralizerBranch { FixesBlock, MovesBlockPoint, StabilizesBlock };

inline std::string_view branch_name(CentralizerBranch b) {
  switch (b) {
    case CentralizerBranch::FixesBlock: return "i";
    case CentralizerBranch::MovesBlockPoint: return "ii";
    default: return "iii";
  }
}

struct CentralizerResult {
  CentralizerBranch branch = CentralizerBranch::FixesBlock;
  bool consistent = false;  // f passed every check (branch i)
  std::size_t checked = 0;  // exact commutation checks made
  std::vector<WitnessCert> certs;
};

/// Desk-scale test of f against C(W_h) = ptstab(Delta) and
/// C^2(W_h) = rst(Delta). Branch (i) gathers commuting evidence; (ii) exhibits
/// a member of W_h not commuting with f; (iii) exhibits y in ptstab(Delta)
/// not commuting with f.
inline CentralizerResult centralizer_refute(const TowerModel& model, const LexAut& h, const LexAut& f,
                                            const OBlock& delta, std::uint64_t seed, std::size_t samples = 5) {
  if (!in_Q(h, delta)) fail(ErrorCode::NotInQ, delta.str());
  require_conforms(model, f);
  const int d = model.depth();
  CentralizerResult r;

  if (in_ptstab(f, delta)) {
    r.branch = CentralizerBranch::FixesBlock;
    r.consistent = true;
    SampleSet w = sample_W(model, h, delta, samples, seed);
    for (const Member& m : w.members) {
      ++r.checked;
      if (!lex_comm(m.value, f).is_identity()) r.consistent = false;
      CertBuilder b("centralizer.i", model);
      Word H = b.elem("h", h), G = b.elem("g", m.outer), X = b.elem("x", m.inner), F = b.elem("f", f);
      Word K = b.word("k", conj(H, G));
      Word M = b.word("m", comm(inv(K), conj(K, X)));
      auto at = moved_point(m.value);
      r.certs.push_back(b.finish(M * F, F * M, Claim::Equal, at ? *at : ls_point(lex_support(h))));
    }
    return r;
  }

  if (in_st(f, delta) && !in_rst(f, delta)) {
    r.branch = CentralizerBranch::StabilizesBlock;
    LexAut f0 = f * lex_inverse(lex_dep(f, {delta}));
    Point alpha = *moved_point(f0);
    Point af = lex_apply(f0, alpha);
    int v = congr_V(alpha, af).level;
    LexAut y;
    if (v < d) {
      y = detail::q_element(alpha, v + 1);
    } else {
      if (model.kinds.back() == ComponentKind::REG) fail(ErrorCode::AbelianComponent, "bottom level is REG");
      std::vector<Rat> prefix(alpha.coords.begin(), alpha.coords.end() - 1);
      y = detail::lift(prefix, detail::bump_between(alpha.coords.back(), af.coords.back()), d);
    }
    CertBuilder b("centralizer.iii", model);
    b.note("y fixes " + delta.str() + " pointwise");
    b.elem("h", h);
    Word F = b.elem("f", f), Y = b.elem("y", y);
    r.certs.push_back(require_valid(b.finish(Y * F, F * Y, Claim::NotEqual, *moved_point(y))));
    return r;
  }

  r.branch = CentralizerBranch::MovesBlockPoint;
  Point dlt = ls_point(ls_intersection(lex_support(f), block_support(delta, d)));
  Point alpha = *moved_point(h);
  LexAut g = lex_dep(lex_transport(alpha, dlt), {delta});
  RefuteOptions opt;
  opt.beta = dlt;
  opt.outer = g;
  opt.seed = seed;
  RefuteResult ref = refute_commuting(model, h, f, delta, opt);
  if (ref.route == RefuteRoute::FixesSupport) fail(ErrorCode::Internal, "conjugate support misses the moved point");
  r.certs = std::move(ref.certs);
  r.certs.push_back(lemma42b(model, h, g, delta).cert);
  return r;
}

// ---------------------------------------------------------------------------
// Verdict report

struct OprimReport {
  TowerModel model;
  std::string verdict;
  std::string branch;
  std::size_t trials = 0;
  std::size_t nontrivial_x = 0;        // g with a witnessed X_g != 1
  std::size_t trivial_x = 0;           // g whose sampled X_g is trivial
  std::size_t empty_w = 0;             // g whose W_g sample is empty
  std::size_t refutations = 0;         // certified C^2(W_g) != G
  std::size_t commutator_checks = 0;   // exact [g^-1,g^f] = 1 checks
  std::size_t nonabelian_pairs = 0;
  std::vector<WitnessCert> certs;
  std::vector<bool> trial_pass;
  std::vector<std::size_t> trial_end;  // certs[trial_end[t-1], trial_end[t]) belong to trial t
  bool pass = false;
};

namespace detail {

inline LexAut moving_element(Rng& rng, const TowerModel& model) {
  for (;;) {
    LexAut g = gen_lexaut(rng, model);
    if (!g.is_identity()) return g;
  }
}

inline OBlock random_block(Rng& rng, int level) {
  std::vector<Rat> p;
  for (int i = 1; i < level; ++i) p.push_back(Rat(rng.range(-2, 2)));
  return OBlock(std::move(p));
}

inline WitnessCert nonabelian_pair(const TowerModel& model, const LexAut& g, const LexAut& f) {
  CertBuilder b("non-abelian", model);
  Word G = b.elem("g", g), F = b.elem("f", f);
  LexAut c = lex_comm(g, f);
  return require_valid(b.finish(G * F, F * G, Claim::NotEqual, *moved_point(c)));
}

}  // namespace detail

inline OprimReport oprim_report(const TowerModel& model, std::size_t trials, std::uint64_t seed) {
  const int d = model.depth();
  OprimReport rep;
  rep.model = model;
  rep.trials = trials;
  Rng rng(seed);
  auto close_trial = [&](bool ok) {
    rep.trial_pass.push_back(ok);
    rep.trial_end.push_back(rep.certs.size());
  };
  // A translation of the first coordinate; carries every proper block off itself.
  const LexAut shift = lex_transport(detail::pad({}, d), detail::pad({}, d, Rat(1)));

  if (d == 1 && model.kinds[0] == ComponentKind::REG) {
    rep.verdict = "o-primitive-abelian";
    rep.branch = "abelian";
    for (std::size_t t = 0; t < trials; ++t) {
      LexAut g = detail::moving_element(rng, model);
      SampleSet x = sample_X(model, g, 4, rng.fork());
      bool trivial = std::all_of(x.members.begin(), x.members.end(), [](const Member& m) { return m.trivial(); });
      bool empty = sample_W(model, g, OBlock::whole(), 3, rng.fork()).members.empty();
      rep.trivial_x += trivial;
      rep.empty_w += empty;
      for (const Member& m : x.members) {
        CertBuilder b("abelian-x", model);
        Word G = b.elem("g", g), F = b.elem("f", m.inner);
        rep.certs.push_back(require_valid(b.finish(comm(inv(G), conj(G, F)), {}, Claim::Equal, Rat(0))));
        ++rep.commutator_checks;
      }
      close_trial(trivial && empty);
    }
    rep.pass = rep.trivial_x == trials && rep.empty_w == trials;
    return rep;
  }

  if (d == 1) {
    rep.verdict = "o-primitive";
    rep.branch = "transitive-pl";
    for (std::size_t t = 0; t < trials; ++t) {
      LexAut g = detail::moving_element(rng, model);
      SampleSet x = sample_X(model, g, 3, rng.fork());
      auto it = std::find_if(x.members.begin(), x.members.end(), [](const Member& m) { return m.tag == "fundamental"; });
      bool witnessed = it != x.members.end() && !it->trivial();
      if (witnessed) {
        ++rep.nontrivial_x;
        CertBuilder b("x-nontrivial", model);
        Word G = b.elem("g", g), T = b.elem("t", it->inner);
        rep.certs.push_back(require_valid(
            b.finish(comm(inv(G), conj(G, T)), {}, Claim::NotEqual, *moved_point(it->value))));
      }
      // The line is the only block: no f stabilizes it without lying in
      // its rigid stabilizer, so the refuting branch never applies.
      CentralizerResult c = centralizer_refute(model, g, detail::moving_element(rng, model), OBlock::whole(), rng.fork(), 2);
      bool refuted = c.branch == CentralizerBranch::StabilizesBlock;
      rep.refutations += refuted;
      close_trial(witnessed && !refuted);
    }
    rep.pass = rep.nontrivial_x == trials && rep.refutations == 0;
    return rep;
  }

  if (!model.locally_abelian()) {
    rep.verdict = "not-o-primitive";
    rep.branch = "proper-block";
    for (std::size_t t = 0; t < trials; ++t) {
      OBlock delta = detail::random_block(rng, static_cast<int>(rng.range(2, d)));
      LexAut g = gen_q_element(rng, model, delta);
      // Moves points both inside and outside the block, keeping it in place.
      LexAut f = gen_outside(rng, model, delta.prefix) *
                 nest(delta.prefix, detail::moving_element(rng, model.tail(static_cast<int>(delta.prefix.size()))));
      CentralizerResult c = centralizer_refute(model, g, f, delta, rng.fork());
      bool refuted = c.branch == CentralizerBranch::StabilizesBlock;
      rep.refutations += refuted;
      rep.certs.insert(rep.certs.end(), c.certs.begin(), c.certs.end());
      rep.certs.push_back(detail::nonabelian_pair(model, g, shift));
      ++rep.nonabelian_pairs;
      close_trial(refuted);
    }
    rep.pass = rep.refutations == trials;
    return rep;
  }

  rep.verdict = "not-o-primitive";
  rep.branch = "locally-abelian";
  const std::size_t per_g = 100;
  for (std::size_t t = 0; t < trials; ++t) {
    OBlock delta = detail::random_block(rng, d);
    LexAut g = gen_q_element(rng, model, delta);
    bool all = true;
    for (std::size_t i = 0; i < per_g; ++i) {
      ++rep.commutator_checks;
      if (!x_value(g, detail::moving_element(rng, model)).is_identity()) all = false;
    }
    SampleSet w = sample_W(model, g, delta, 3, rng.fork());
    bool empty = all && w.members.empty();
    rep.empty_w += empty;
    rep.certs.insert(rep.certs.end(), w.certs.begin(), w.certs.end());
    rep.certs.push_back(detail::nonabelian_pair(model, g, shift));
    ++rep.nonabelian_pairs;
    close_trial(empty);
  }
  rep.pass = rep.empty_w == trials && rep.nonabelian_pairs == trials;
  return rep;
}

}  // namespace ordperm

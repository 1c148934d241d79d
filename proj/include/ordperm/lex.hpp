#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ordperm/pl_map.hpp"

namespace ordperm {

inline constexpr int kMaxDepth = 5;

// ---------------------------------------------------------------------------
// Models and points

/// Component type of one level of a tower.
///   PL2T: all PL automorphisms of Q (o-2 transitive)
///   REG:  translations x -> x + c of Q (regular abelian)
enum class ComponentKind { PL2T, REG };

inline std::string_view kind_name(ComponentKind k) { return k == ComponentKind::PL2T ? "PL2T" : "REG"; }

/// Q^depth ordered lexicographically, first coordinate most significant.
/// kinds[0] is the component acting on the first coordinate.
struct TowerModel {
  std::vector<ComponentKind> kinds;

  int depth() const { return static_cast<int>(kinds.size()); }
  ComponentKind kind_at(int level) const { return kinds.at(static_cast<std::size_t>(level - 1)); }
  /// The minimal component is abelian.
  bool locally_abelian() const { return !kinds.empty() && kinds.back() == ComponentKind::REG; }
  /// The model acting on the coordinates after the first `skip`.
  TowerModel tail(int skip = 1) const { return {std::vector<ComponentKind>(kinds.begin() + skip, kinds.end())}; }

  friend bool operator==(const TowerModel&, const TowerModel&) = default;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      if (i) s += ",";
      s += kind_name(kinds[i]);
    }
    return s;
  }
};

inline TowerModel parse_model(std::string_view text) {
  TowerModel m;
  Cursor cur(text);
  do {
    cur.skip_ws();
    if (cur.accept("PL2T")) m.kinds.push_back(ComponentKind::PL2T);
    else if (cur.accept("REG")) m.kinds.push_back(ComponentKind::REG);
    else cur.error("expected PL2T or REG");
    cur.skip_ws();
  } while (cur.accept(","));
  if (!cur.done()) cur.error("trailing characters in model");
  if (m.depth() < 1 || m.depth() > kMaxDepth)
    fail(ErrorCode::DepthOutOfRange, "model depth " + std::to_string(m.depth()) + " outside 1.." + std::to_string(kMaxDepth));
  return m;
}

struct Point {
  std::vector<Rat> coords;

  Point() = default;
  explicit Point(std::vector<Rat> c) : coords(std::move(c)) {}
  Point(std::initializer_list<Rat> c) : coords(c) {}

  int size() const { return static_cast<int>(coords.size()); }
  const Rat& operator[](std::size_t i) const { return coords[i]; }
  Point tail() const { return Point(std::vector<Rat>(coords.begin() + 1, coords.end())); }

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < std::min(a.coords.size(), b.coords.size()); ++i) {
      if (auto c = a.coords[i] <=> b.coords[i]; c != 0) return c;
    }
    return a.coords.size() <=> b.coords.size();
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ",";
      s += coords[i].str();
    }
    return s + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.str(); }
};

inline Point parse_point(Cursor& cur) {
  cur.expect("(");
  std::vector<Rat> cs;
  do {
    cs.push_back(parse_rat(cur));
  } while (cur.accept(","));
  cur.expect(")");
  return Point(std::move(cs));
}

inline Point parse_point(std::string_view text) {
  Cursor cur(text);
  Point p = parse_point(cur);
  if (!cur.done()) cur.error("trailing characters after point");
  return p;
}

// ---------------------------------------------------------------------------
// Automorphisms

struct LexOverride;

/// Automorphism of a depth-n tower given by finite data: a component map on
/// the first coordinate plus finitely many fiber overrides, each an
/// automorphism of the depth-(n-1) tail tower. The action is
///   (x, rest) -> (x top, rest * override(x))
/// with the identity where no override is stored. Identity overrides are
/// pruned, so structural equality is equality of automorphisms.
class LexAut {
 public:
  LexAut() : depth_(1) {}

  static LexAut identity(int depth) {
    LexAut g;
    g.depth_ = depth;
    return g;
  }
  static LexAut make(int depth, PLMap top, std::vector<LexOverride> over = {});
  /// A depth-1 element is just its component map.
  static LexAut of(PLMap top) { return make(1, std::move(top)); }

  int depth() const { return depth_; }
  const PLMap& top() const { return top_; }
  const std::vector<LexOverride>& overrides() const { return over_; }
  bool is_identity() const { return top_.is_identity() && over_.empty(); }

  /// Stored override at fiber x, or nullptr for the identity.
  const LexAut* override_at(const Rat& x) const;
  /// The tail automorphism applied on fiber x.
  LexAut tail_at(const Rat& x) const;

  friend bool operator==(const LexAut& a, const LexAut& b);

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const LexAut& g) { return os << g.str(); }

 private:
  int depth_;
  PLMap top_;
  std::vector<LexOverride> over_;
};

struct LexOverride {
  Rat fiber;
  LexAut action;
  friend bool operator==(const LexOverride&, const LexOverride&) = default;
};

inline LexAut LexAut::make(int depth, PLMap top, std::vector<LexOverride> over) {
  if (depth < 1) fail(ErrorCode::ModelMismatch, "depth must be positive");
  if (depth == 1 && !over.empty()) fail(ErrorCode::ModelMismatch, "depth-1 elements have no overrides");
  std::sort(over.begin(), over.end(), [](const LexOverride& a, const LexOverride& b) { return a.fiber < b.fiber; });
  for (std::size_t i = 1; i < over.size(); ++i) {
    if (over[i - 1].fiber == over[i].fiber) fail(ErrorCode::ModelMismatch, "duplicate override at " + over[i].fiber.str());
  }
  std::erase_if(over, [](const LexOverride& o) { return o.action.is_identity(); });
  for (const auto& o : over) {
    if (o.action.depth() != depth - 1) fail(ErrorCode::ModelMismatch, "override depth mismatch");
  }
  LexAut g;
  g.depth_ = depth;
  g.top_ = std::move(top);
  g.over_ = std::move(over);
  return g;
}

inline const LexAut* LexAut::override_at(const Rat& x) const {
  auto it = std::partition_point(over_.begin(), over_.end(), [&](const LexOverride& o) { return o.fiber < x; });
  return (it != over_.end() && it->fiber == x) ? &it->action : nullptr;
}

inline LexAut LexAut::tail_at(const Rat& x) const {
  if (const LexAut* o = override_at(x)) return *o;
  return identity(depth_ - 1);
}

inline bool operator==(const LexAut& a, const LexAut& b) {
  return a.depth_ == b.depth_ && a.top_ == b.top_ && a.over_ == b.over_;
}

inline std::string LexAut::str() const {
  std::string s = "Lex{top: " + top_.str() + ", over: {";
  for (std::size_t i = 0; i < over_.size(); ++i) {
    if (i) s += ", ";
    s += over_[i].fiber.str() + ": " + over_[i].action.str();
  }
  return s + "}}";
}

inline LexAut parse_lexaut(Cursor& cur, int depth) {
  std::size_t line = cur.line(), col = cur.column();
  cur.expect("Lex{top: ");
  PLMap top = parse_plmap(cur);
  cur.expect(", over: {");
  std::vector<LexOverride> over;
  if (!cur.accept("}")) {
    do {
      cur.skip_ws();
      Rat key = parse_rat(cur);
      cur.expect(": ");
      if (depth <= 1) cur.error("override in a depth-1 element");
      LexAut a = parse_lexaut(cur, depth - 1);
      if (!over.empty() && !(over.back().fiber < key)) cur.error("override keys must be strictly increasing");
      if (a.is_identity()) cur.error("identity override is not canonical");
      over.push_back({std::move(key), std::move(a)});
    } while (cur.accept(","));
    cur.expect("}");
  }
  cur.expect("}");
  try {
    return LexAut::make(depth, std::move(top), std::move(over));
  } catch (const Error& e) {
    throw ParseError(line, col, e.what());
  }
}

inline LexAut parse_lexaut(std::string_view text, int depth) {
  Cursor cur(text);
  LexAut g = parse_lexaut(cur, depth);
  if (!cur.done()) cur.error("trailing characters after element");
  return g;
}

/// Whether g uses only the component maps the model allows at each level.
inline bool conforms(const TowerModel& model, const LexAut& g) {
  if (g.depth() != model.depth()) return false;
  if (model.kinds[0] == ComponentKind::REG && !g.top().is_translation()) return false;
  TowerModel rest = model.tail();
  return std::all_of(g.overrides().begin(), g.overrides().end(),
                     [&](const LexOverride& o) { return conforms(rest, o.action); });
}

inline void require_conforms(const TowerModel& model, const LexAut& g) {
  if (!conforms(model, g)) fail(ErrorCode::ModelMismatch, "element does not belong to model " + model.str());
}

namespace detail {
inline void same_depth(const LexAut& a, const LexAut& b) {
  if (a.depth() != b.depth())
    fail(ErrorCode::ModelMismatch, "depth " + std::to_string(a.depth()) + " vs " + std::to_string(b.depth()));
}
inline void point_depth(const LexAut& g, const Point& p) {
  if (p.size() != g.depth())
    fail(ErrorCode::ModelMismatch, "point " + p.str() + " has wrong length for depth " + std::to_string(g.depth()));
}
}  // namespace detail

inline Point lex_apply(const LexAut& g, const Point& alpha) {
  detail::point_depth(g, alpha);
  std::vector<Rat> out;
  out.reserve(alpha.coords.size());
  const LexAut* cur = &g;
  for (std::size_t i = 0; i < alpha.coords.size(); ++i) {
    if (!cur) {
      out.push_back(alpha.coords[i]);
      continue;
    }
    out.push_back(cur->top()(alpha.coords[i]));
    cur = cur->override_at(alpha.coords[i]);
  }
  return Point(std::move(out));
}

/// alpha g^-1, computed without inverting g.
inline Point lex_apply_inverse(const LexAut& g, const Point& alpha) {
  detail::point_depth(g, alpha);
  std::vector<Rat> out;
  const LexAut* cur = &g;
  for (std::size_t i = 0; i < alpha.coords.size(); ++i) {
    if (!cur) {
      out.push_back(alpha.coords[i]);
      continue;
    }
    Rat x = cur->top().inverse_at(alpha.coords[i]);
    cur = cur->override_at(x);
    out.push_back(std::move(x));
  }
  return Point(std::move(out));
}

/// Right-action composition: alpha (f*g) = (alpha f) g.
inline LexAut lex_compose(const LexAut& f, const LexAut& g) {
  detail::same_depth(f, g);
  if (f.depth() == 1) return LexAut::of(f.top() * g.top());
  std::vector<Rat> keys;
  for (const auto& o : f.overrides()) keys.push_back(o.fiber);
  for (const auto& o : g.overrides()) keys.push_back(f.top().inverse_at(o.fiber));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<LexOverride> over;
  for (const auto& x : keys) {
    over.push_back({x, lex_compose(f.tail_at(x), g.tail_at(f.top()(x)))});
  }
  return LexAut::make(f.depth(), f.top() * g.top(), std::move(over));
}

inline LexAut operator*(const LexAut& f, const LexAut& g) { return lex_compose(f, g); }

inline LexAut lex_inverse(const LexAut& f) {
  std::vector<LexOverride> over;
  for (const auto& o : f.overrides()) over.push_back({f.top()(o.fiber), lex_inverse(o.action)});
  return LexAut::make(f.depth(), pl_inverse(f.top()), std::move(over));
}

inline LexAut lex_pow(const LexAut& f, int n) {
  LexAut base = n < 0 ? lex_inverse(f) : f;
  LexAut out = LexAut::identity(f.depth());
  for (int i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
  return out;
}

/// g^f = f^-1 g f.
inline LexAut lex_conj(const LexAut& g, const LexAut& f) { return lex_inverse(f) * g * f; }
/// [f, g] = f^-1 g^-1 f g.
inline LexAut lex_comm(const LexAut& f, const LexAut& g) { return lex_inverse(f) * lex_inverse(g) * f * g; }

namespace detail {
// Pointwise lexicographic max/min. On a fiber the tops send to the same
// coordinate the tails are combined recursively; otherwise the tail of the
// winning side is used.
inline LexAut lex_extremum(const LexAut& f, const LexAut& g, bool take_max) {
  same_depth(f, g);
  PLMap top = take_max ? pl_vee(f.top(), g.top()) : pl_wedge(f.top(), g.top());
  std::vector<Rat> keys;
  for (const auto& o : f.overrides()) keys.push_back(o.fiber);
  for (const auto& o : g.overrides()) keys.push_back(o.fiber);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<LexOverride> over;
  for (const auto& x : keys) {
    Rat a = f.top()(x), b = g.top()(x);
    if (a == b) {
      over.push_back({x, lex_extremum(f.tail_at(x), g.tail_at(x), take_max)});
    } else {
      bool f_wins = take_max ? (b < a) : (a < b);
      over.push_back({x, f_wins ? f.tail_at(x) : g.tail_at(x)});
    }
  }
  return LexAut::make(f.depth(), std::move(top), std::move(over));
}
}  // namespace detail

inline LexAut lex_vee(const LexAut& f, const LexAut& g) { return detail::lex_extremum(f, g, true); }
inline LexAut lex_wedge(const LexAut& f, const LexAut& g) { return detail::lex_extremum(f, g, false); }

// ---------------------------------------------------------------------------
// Congruences and o-blocks

/// Convex congruence "agree on the first level-1 coordinates". Level 1 is
/// the universal congruence, level depth+1 is equality. Larger level means
/// a smaller congruence.
struct CongruenceLevel {
  int level = 1;
  friend auto operator<=>(const CongruenceLevel&, const CongruenceLevel&) = default;
};

/// Whether congruence a is contained in congruence b.
inline bool congr_contained(CongruenceLevel a, CongruenceLevel b) { return a.level >= b.level; }
/// Whether b covers a (a strictly inside b with nothing between).
inline bool congr_covers(CongruenceLevel b, CongruenceLevel a) { return a.level == b.level + 1; }

/// The class of a level-`level` congruence with the given coordinate prefix
/// (length level-1). Level 1 is the whole set.
struct OBlock {
  int level = 1;
  std::vector<Rat> prefix;

  OBlock() = default;
  explicit OBlock(std::vector<Rat> p) : level(static_cast<int>(p.size()) + 1), prefix(std::move(p)) {}
  static OBlock whole() { return OBlock(); }

  friend bool operator==(const OBlock&, const OBlock&) = default;

  bool contains(const Point& p) const {
    if (p.size() < static_cast<int>(prefix.size())) return false;
    return std::equal(prefix.begin(), prefix.end(), p.coords.begin());
  }

  std::string str() const {
    std::string s = "B" + std::to_string(level) + "[";
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (i) s += ",";
      s += prefix[i].str();
    }
    return s + "]";
  }
};

inline OBlock block_of(const Point& p, int level) {
  return OBlock(std::vector<Rat>(p.coords.begin(), p.coords.begin() + (level - 1)));
}

/// The child block of `b` indexed by coordinate value c.
inline OBlock child_block(const OBlock& b, const Rat& c) {
  std::vector<Rat> p = b.prefix;
  p.push_back(c);
  return OBlock(std::move(p));
}

/// Blocks are either nested or disjoint.
inline bool blocks_disjoint(const OBlock& a, const OBlock& b) {
  std::size_t n = std::min(a.prefix.size(), b.prefix.size());
  return !std::equal(a.prefix.begin(), a.prefix.begin() + n, b.prefix.begin());
}

inline std::size_t common_prefix(const Point& a, const Point& b) {
  std::size_t n = 0;
  while (n < a.coords.size() && n < b.coords.size() && a.coords[n] == b.coords[n]) ++n;
  return n;
}

/// Smallest convex congruence relating alpha and beta.
inline CongruenceLevel congr_V(const Point& alpha, const Point& beta) {
  if (alpha.size() != beta.size()) fail(ErrorCode::ModelMismatch, "points of different depth");
  if (alpha == beta) fail(ErrorCode::IdenticalPoints, alpha.str());
  return {static_cast<int>(common_prefix(alpha, beta)) + 1};
}

/// Largest convex congruence separating alpha and beta; covered by V.
inline CongruenceLevel congr_U(const Point& alpha, const Point& beta) {
  return {congr_V(alpha, beta).level + 1};
}

inline CongruenceLevel kappa(const OBlock& b) { return {b.level}; }

struct SpineEntry {
  CongruenceLevel level;
  Point alpha;
  Point beta;  // congr_V(alpha, beta) == level
};

/// Levels 1..depth, each with a pair of points realizing it.
inline std::vector<SpineEntry> spine(const TowerModel& model) {
  std::vector<SpineEntry> out;
  const int n = model.depth();
  for (int l = 1; l <= n; ++l) {
    Point a(std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    Point b = a;
    b.coords[static_cast<std::size_t>(l - 1)] = Rat(1);
    out.push_back({{l}, std::move(a), std::move(b)});
  }
  return out;
}

/// Image of the coordinate prefix under g (well defined: the first k image
/// coordinates depend only on the first k input coordinates).
inline std::vector<Rat> prefix_image(const LexAut& g, const std::vector<Rat>& prefix) {
  std::vector<Rat> out;
  const LexAut* cur = &g;
  for (const auto& x : prefix) {
    if (!cur) {
      out.push_back(x);
      continue;
    }
    out.push_back(cur->top()(x));
    cur = cur->override_at(x);
  }
  return out;
}

inline OBlock block_image(const LexAut& g, const OBlock& b) { return OBlock(prefix_image(g, b.prefix)); }

/// The tail automorphism g applies to points with the given prefix.
inline LexAut sub_at(const LexAut& g, const std::vector<Rat>& prefix) {
  const LexAut* cur = &g;
  for (const auto& x : prefix) {
    if (!cur) break;
    cur = cur->override_at(x);
  }
  return cur ? *cur : LexAut::identity(g.depth() - static_cast<int>(prefix.size()));
}

/// The element acting as s on the block with this prefix and trivially
/// elsewhere.
inline LexAut nest(const std::vector<Rat>& prefix, LexAut s) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    int d = s.depth() + 1;
    s = LexAut::make(d, PLMap::identity(), {{*it, std::move(s)}});
  }
  return s;
}

inline void check_block(const LexAut& g, const OBlock& b) {
  if (b.level < 1 || b.level > g.depth() + 1 || static_cast<int>(b.prefix.size()) != b.level - 1)
    fail(ErrorCode::ModelMismatch, "block " + b.str() + " not in a depth-" + std::to_string(g.depth()) + " tower");
}

inline bool in_st(const LexAut& g, const OBlock& b) {
  check_block(g, b);
  return prefix_image(g, b.prefix) == b.prefix;
}

/// supp(g) inside b.
inline bool in_rst(const LexAut& g, const OBlock& b) {
  check_block(g, b);
  const LexAut* cur = &g;
  for (const auto& x : b.prefix) {
    if (!cur) return true;
    if (!cur->top().is_identity()) return false;
    if (cur->overrides().size() > 1) return false;
    if (cur->overrides().size() == 1 && cur->overrides()[0].fiber != x) return false;
    cur = cur->override_at(x);
  }
  return true;
}

/// g fixes every point of b.
inline bool in_ptstab(const LexAut& g, const OBlock& b) {
  check_block(g, b);
  const LexAut* cur = &g;
  for (const auto& x : b.prefix) {
    if (!cur) return true;
    if (cur->top()(x) != x) return false;
    cur = cur->override_at(x);
  }
  return !cur || cur->is_identity();
}

/// h in rst(b) moving some point across the children of b.
inline bool in_Q(const LexAut& h, const OBlock& b) {
  if (b.level > h.depth()) return false;
  return in_rst(h, b) && !sub_at(h, b.prefix).top().is_identity();
}

/// Action of g on the children of b (indexed by coordinate b.level).
inline PLMap induced_action(const LexAut& g, const OBlock& b) {
  if (b.level > g.depth()) fail(ErrorCode::ModelMismatch, "singleton block has no children");
  if (!in_st(g, b)) fail(ErrorCode::NotInStabilizer, b.str());
  return sub_at(g, b.prefix).top();
}

/// Agrees with g on the union of the blocks and is the identity elsewhere.
inline LexAut lex_dep(const LexAut& g, const std::vector<OBlock>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (!blocks_disjoint(blocks[i], blocks[j]))
        fail(ErrorCode::OverlappingBlocks, blocks[i].str() + " and " + blocks[j].str());
    }
  }
  LexAut out = LexAut::identity(g.depth());
  for (const auto& b : blocks) {
    if (!in_st(g, b)) fail(ErrorCode::NotInvariant, b.str() + " is not g-invariant");
    out = out * nest(b.prefix, sub_at(g, b.prefix));
  }
  return out;
}

/// Some element mapping alpha to beta: per-level translations, which every
/// component kind admits.
inline LexAut lex_transport(const Point& alpha, const Point& beta) {
  if (alpha.size() != beta.size() || alpha.size() < 1) fail(ErrorCode::ModelMismatch, "points of different depth");
  int d = alpha.size();
  PLMap top = PLMap::translation(beta[0] - alpha[0]);
  if (d == 1) return LexAut::of(std::move(top));
  return LexAut::make(d, std::move(top), {{alpha[0], lex_transport(alpha.tail(), beta.tail())}});
}

// ---------------------------------------------------------------------------
// Supports

struct LexSupportPart;

/// Exact support of a tower automorphism: `whole` holds first coordinates
/// whose entire fiber is moved; `partial` holds, for other first
/// coordinates, the support inside that fiber.
struct LexSupport {
  int depth = 1;
  IntervalSet whole;
  std::vector<LexSupportPart> partial;

  bool empty() const;
};

struct LexSupportPart {
  Rat fiber;
  LexSupport inner;
};

inline bool LexSupport::empty() const { return whole.empty() && partial.empty(); }

inline bool operator==(const LexSupport& a, const LexSupport& b);
inline bool operator==(const LexSupportPart& a, const LexSupportPart& b) {
  return a.fiber == b.fiber && a.inner == b.inner;
}
inline bool operator==(const LexSupport& a, const LexSupport& b) {
  return a.depth == b.depth && a.whole == b.whole && a.partial == b.partial;
}

inline LexSupport lex_support(const LexAut& g) {
  LexSupport s;
  s.depth = g.depth();
  s.whole = pl_support(g.top());
  for (const auto& o : g.overrides()) {
    if (!s.whole.contains(o.fiber)) s.partial.push_back({o.fiber, lex_support(o.action)});
  }
  return s;
}

/// A block as a support-shaped set.
inline LexSupport block_support(const OBlock& b, int depth) {
  LexSupport s;
  s.depth = depth - static_cast<int>(b.prefix.size());
  s.whole = IntervalSet::line();
  for (auto it = b.prefix.rbegin(); it != b.prefix.rend(); ++it) {
    LexSupport outer;
    outer.depth = s.depth + 1;
    outer.partial.push_back({*it, std::move(s)});
    s = std::move(outer);
  }
  return s;
}

inline LexSupport ls_intersection(const LexSupport& a, const LexSupport& b) {
  LexSupport out;
  out.depth = a.depth;
  out.whole = iset_intersection(a.whole, b.whole);
  std::vector<LexSupportPart> parts;
  for (const auto& p : a.partial) {
    if (b.whole.contains(p.fiber)) {
      parts.push_back(p);
    } else {
      auto it = std::find_if(b.partial.begin(), b.partial.end(), [&](const LexSupportPart& q) { return q.fiber == p.fiber; });
      if (it != b.partial.end()) {
        LexSupport inner = ls_intersection(p.inner, it->inner);
        if (!inner.empty()) parts.push_back({p.fiber, std::move(inner)});
      }
    }
  }
  for (const auto& q : b.partial) {
    if (a.whole.contains(q.fiber)) parts.push_back(q);
  }
  std::sort(parts.begin(), parts.end(), [](const LexSupportPart& x, const LexSupportPart& y) { return x.fiber < y.fiber; });
  out.partial = std::move(parts);
  return out;
}

inline bool ls_contains(const LexSupport& s, const Point& p, std::size_t from = 0) {
  if (from >= p.coords.size()) return false;
  const Rat& x = p.coords[from];
  if (s.whole.contains(x)) return true;
  for (const auto& part : s.partial) {
    if (part.fiber == x) return ls_contains(part.inner, p, from + 1);
  }
  return false;
}

inline bool ls_subset(const LexSupport& a, const LexSupport& b) { return ls_intersection(a, b) == a; }

/// A deterministic member of a non-empty support set.
inline Point ls_point(const LexSupport& s) {
  if (s.empty()) fail(ErrorCode::Internal, "point of empty support");
  std::vector<Rat> out;
  if (!s.whole.empty()) {
    out.push_back(s.whole.parts().front().interior_point());
    out.resize(static_cast<std::size_t>(s.depth), Rat(0));
    return Point(std::move(out));
  }
  const auto& part = s.partial.front();
  out.push_back(part.fiber);
  Point rest = ls_point(part.inner);
  out.insert(out.end(), rest.coords.begin(), rest.coords.end());
  return Point(std::move(out));
}

inline std::optional<Point> moved_point(const LexAut& g) {
  LexSupport s = lex_support(g);
  if (s.empty()) return std::nullopt;
  return ls_point(s);
}

}  // namespace ordperm

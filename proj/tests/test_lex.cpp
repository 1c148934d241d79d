#include <gtest/gtest.h>

#include "ordperm/generators.hpp"

using namespace ordperm;

namespace {

const TowerModel kPL2{{ComponentKind::PL2T, ComponentKind::PL2T}};
const TowerModel kPL3{{ComponentKind::PL2T, ComponentKind::PL2T, ComponentKind::PL2T}};
const TowerModel kMixed{{ComponentKind::PL2T, ComponentKind::REG, ComponentKind::PL2T}};

PLMap T(long c) { return PLMap::translation(Rat(c)); }
PLMap bump0123() { return pl_bump(Rat(0), Rat(1), Rat(2), Rat(3)); }

LexAut depth2(PLMap top, std::vector<LexOverride> over = {}) { return LexAut::make(2, std::move(top), std::move(over)); }

// Independent evaluator: walks the override tree from scratch.
Point oracle_apply(const LexAut& g, const Point& p) {
  std::vector<Rat> out;
  LexAut cur = g;
  for (int i = 0; i < p.size(); ++i) {
    out.push_back(cur.top()(p[i]));
    if (i + 1 < p.size()) cur = cur.tail_at(p[i]);
  }
  return Point(out);
}

}  // namespace

TEST(Model, ParseAndFlags) {
  TowerModel m = parse_model("PL2T,PL2T,REG");
  EXPECT_EQ(m.depth(), 3);
  EXPECT_TRUE(m.locally_abelian());
  EXPECT_FALSE(kPL2.locally_abelian());
  EXPECT_EQ(m.str(), "PL2T,PL2T,REG");
  EXPECT_THROW(parse_model("PL2T,PL2T,PL2T,PL2T,PL2T,PL2T"), Error);
  EXPECT_THROW(parse_model("PL2T,FOO"), ParseError);
}

TEST(Point, LexicographicFirstCoordinateMostSignificant) {
  EXPECT_LT(Point({Rat(0), Rat(100)}), Point({Rat(1), Rat(-100)}));
  EXPECT_LT(Point({Rat(0), Rat(1)}), Point({Rat(0), Rat(2)}));
  EXPECT_EQ(parse_point("(1/2,-3)"), Point({Rat(1, 2), Rat(-3)}));
}

TEST(LexAut, ApplyExamples) {
  Point a{Rat(0), Rat(5)};
  EXPECT_EQ(lex_apply(LexAut::identity(2), a), a);
  EXPECT_EQ(lex_apply(depth2(T(1)), a), Point({Rat(1), Rat(5)}));
  LexAut f = depth2(bump0123(), {{Rat(0), LexAut::of(T(3))}});
  EXPECT_EQ(lex_apply(f, Point({Rat(0), Rat(0)})), Point({Rat(0), Rat(3)}));
  EXPECT_EQ(f * lex_inverse(f), LexAut::identity(2));
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    Point p = gen_point(rng, 2);
    EXPECT_EQ(lex_apply(f, p), oracle_apply(f, p));
    EXPECT_EQ(lex_apply_inverse(f, lex_apply(f, p)), p);
  }
}

TEST(LexAut, DepthMismatchIsModelMismatch) {
  try {
    lex_compose(LexAut::identity(2), LexAut::identity(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModelMismatch);
  }
  EXPECT_THROW(lex_apply(LexAut::identity(2), Point({Rat(0)})), Error);
  EXPECT_FALSE(conforms(TowerModel{{ComponentKind::REG}}, LexAut::of(bump0123())));
  EXPECT_TRUE(conforms(TowerModel{{ComponentKind::REG}}, LexAut::of(T(2))));
}

TEST(LexAut, IdentityOverridesArePruned) {
  LexAut g = depth2(T(1), {{Rat(0), LexAut::identity(1)}});
  EXPECT_EQ(g, depth2(T(1)));
  EXPECT_TRUE((g * lex_inverse(g)).overrides().empty());
}

TEST(LexAut, TextRoundTrip) {
  LexAut g = LexAut::make(3, bump0123(), {{Rat(1, 2), LexAut::make(2, T(-1), {{Rat(4), LexAut::of(T(2))}})}});
  EXPECT_EQ(g.str(), "Lex{top: PL[(0,0),(1,2),(3,3)], over: {1/2: Lex{top: PL[(0,-1)], over: {4: Lex{top: PL[(0,2)], over: {}}}}}}");
  EXPECT_EQ(parse_lexaut(g.str(), 3), g);
  EXPECT_THROW(parse_lexaut("Lex{top: PL[], over: {0: Lex{top: PL[], over: {}}}}", 2), ParseError);
  EXPECT_THROW(parse_lexaut(g.str(), 2), ParseError);
}

TEST(Congruence, VAndUExamples) {
  EXPECT_EQ(congr_V(Point({Rat(0), Rat(0)}), Point({Rat(0), Rat(1)})).level, 2);
  EXPECT_EQ(congr_U(Point({Rat(0), Rat(0)}), Point({Rat(0), Rat(1)})).level, 3);
  EXPECT_EQ(congr_V(Point({Rat(0), Rat(0)}), Point({Rat(1), Rat(0)})).level, 1);
  EXPECT_EQ(congr_U(Point({Rat(0), Rat(0)}), Point({Rat(1), Rat(0)})).level, 2);
  Point a{Rat(0), Rat(0), Rat(0)}, b{Rat(0), Rat(0), Rat(7)};
  EXPECT_EQ(congr_V(a, b).level, 3);
  EXPECT_EQ(congr_U(a, b).level, 4);
  EXPECT_TRUE(congr_covers(congr_V(a, b), congr_U(a, b)));
  try {
    congr_V(a, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IdenticalPoints);
  }
}

// Brute force: V is the largest level whose classes contain both points.
TEST(Congruence, VMatchesBruteForceOverLevels) {
  Rng rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    int depth = static_cast<int>(rng.range(1, kMaxDepth));
    Point a = gen_point(rng, depth), b = gen_point(rng, depth);
    if (a == b) continue;
    int best = 0;
    for (int l = 1; l <= depth + 1; ++l) {
      if (block_of(a, l) == block_of(b, l)) best = l;
    }
    ASSERT_EQ(congr_V(a, b).level, best);
    ASSERT_TRUE(congr_covers(congr_V(a, b), congr_U(a, b)));
    ASSERT_FALSE(block_of(a, congr_U(a, b).level) == block_of(b, congr_U(a, b).level));
  }
}

TEST(Congruence, KappaAndSpine) {
  EXPECT_EQ(kappa(OBlock::whole()).level, 1);
  EXPECT_EQ(kappa(OBlock({Rat(3)})).level, 2);
  std::vector<SpineEntry> sp1 = spine(TowerModel{{ComponentKind::PL2T}});
  ASSERT_EQ(sp1.size(), 1u);
  EXPECT_EQ(sp1[0].level.level, 1);
  std::vector<SpineEntry> sp3 = spine(kPL3);
  ASSERT_EQ(sp3.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(sp3[static_cast<std::size_t>(i)].level.level, i + 1);
    EXPECT_EQ(congr_V(sp3[static_cast<std::size_t>(i)].alpha, sp3[static_cast<std::size_t>(i)].beta),
              sp3[static_cast<std::size_t>(i)].level);
  }
  // Delta is the V-class of any alpha in it with a partner at level kappa.
  OBlock d({Rat(1), Rat(2)});
  Point a{Rat(1), Rat(2), Rat(0)}, b{Rat(1), Rat(2), Rat(5)};
  ASSERT_EQ(congr_V(a, b), kappa(d));
  EXPECT_EQ(block_of(a, congr_V(a, b).level), d);
}

TEST(Stabilizers, Examples) {
  OBlock fiber0({Rat(0)});
  LexAut id = LexAut::identity(2);
  for (const OBlock& b : {OBlock::whole(), fiber0}) {
    EXPECT_TRUE(in_st(id, b));
    EXPECT_TRUE(in_rst(id, b));
    EXPECT_TRUE(in_ptstab(id, b));
  }
  LexAut g = depth2(PLMap::identity(), {{Rat(0), LexAut::of(bump0123())}});
  EXPECT_TRUE(in_rst(g, fiber0));
  EXPECT_TRUE(in_st(g, fiber0));
  EXPECT_FALSE(in_ptstab(g, fiber0));
  EXPECT_TRUE(in_ptstab(g, OBlock({Rat(1)})));
  EXPECT_FALSE(in_st(depth2(T(1)), fiber0));
  EXPECT_FALSE(in_rst(depth2(T(1)), fiber0));
}

TEST(Stabilizers, QExamples) {
  OBlock fiber0({Rat(0)});
  EXPECT_FALSE(in_Q(LexAut::identity(2), fiber0));
  EXPECT_FALSE(in_Q(LexAut::identity(2), OBlock::whole()));
  LexAut h = depth2(PLMap::identity(), {{Rat(0), LexAut::of(T(1))}});
  EXPECT_TRUE(in_Q(h, fiber0));
  Point a{Rat(0), Rat(0)};
  EXPECT_EQ(congr_V(lex_apply(h, a), a), kappa(fiber0));
  EXPECT_FALSE(in_Q(h, OBlock::whole()));
  Rng rng(33);
  for (int i = 0; i < 50; ++i) {
    Point p = gen_point(rng, 2);
    Point q = lex_apply(h, p);
    if (q != p) {
      EXPECT_NE(congr_V(q, p).level, 1);
    }
  }
}

TEST(Stabilizers, InducedActionExamples) {
  EXPECT_EQ(induced_action(LexAut::identity(2), OBlock::whole()), PLMap::identity());
  LexAut g = depth2(PLMap::identity(), {{Rat(0), LexAut::of(bump0123())}});
  EXPECT_EQ(induced_action(g, OBlock({Rat(0)})), bump0123());
  OBlock d({Rat(1)});
  LexAut g3 = LexAut::make(3, PLMap::identity(), {{Rat(1), LexAut::make(2, T(2))}});
  EXPECT_EQ(induced_action(g3, d), T(2));
  for (long c : {-1L, 0L, 5L}) {
    OBlock child({Rat(1), Rat(c)});
    EXPECT_EQ(block_image(g3, child), OBlock({Rat(1), Rat(c + 2)}));
  }
  try {
    induced_action(depth2(T(1)), OBlock({Rat(0)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInStabilizer);
  }
}

TEST(Depression, Examples) {
  LexAut g = depth2(PLMap::identity(), {{Rat(0), LexAut::of(T(1))}, {Rat(1), LexAut::of(bump0123())}});
  EXPECT_EQ(lex_dep(g, {}), LexAut::identity(2));
  EXPECT_EQ(lex_dep(g, {OBlock::whole()}), g);
  LexAut d = lex_dep(g, {OBlock({Rat(0)})});
  EXPECT_EQ(d, depth2(PLMap::identity(), {{Rat(0), LexAut::of(T(1))}}));
  Point in0{Rat(0), Rat(1, 2)}, in1{Rat(1), Rat(1, 2)};
  EXPECT_EQ(lex_apply(d, in0), lex_apply(g, in0));
  EXPECT_EQ(lex_apply(d, in1), in1);
  try {
    lex_dep(depth2(T(1)), {OBlock({Rat(0)})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvariant);
  }
  try {
    lex_dep(g, {OBlock({Rat(0)}), OBlock::whole()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OverlappingBlocks);
  }
}

TEST(LexProperty, GroupAndLatticeAgainstOracle) {
  Rng rng(34);
  for (const TowerModel& m : {kPL2, kPL3, kMixed}) {
    for (int trial = 0; trial < 150; ++trial) {
      LexAut f = gen_lexaut(rng, m), g = gen_lexaut(rng, m), h = gen_lexaut(rng, m);
      ASSERT_TRUE(conforms(m, f * g));
      ASSERT_EQ((f * g) * h, f * (g * h));
      ASSERT_EQ(f * lex_inverse(f), LexAut::identity(m.depth()));
      LexAut fg = f * g, v = lex_vee(f, g), w = lex_wedge(f, g);
      ASSERT_EQ(lex_wedge(f, v), f);
      ASSERT_EQ(lex_vee(f, w), f);
      for (int i = 0; i < 10; ++i) {
        Point p = gen_point(rng, m.depth());
        Point pf = oracle_apply(f, p), pg = oracle_apply(g, p);
        ASSERT_EQ(lex_apply(fg, p), oracle_apply(g, pf));
        ASSERT_EQ(lex_apply(v, p), std::max(pf, pg));
        ASSERT_EQ(lex_apply(w, p), std::min(pf, pg));
        ASSERT_EQ(lex_apply_inverse(f, pf), p);
      }
      ASSERT_EQ(parse_lexaut(f.str(), m.depth()), f);
    }
  }
}

TEST(LexProperty, LevelsTotallyOrderedAndVInSpine) {
  Rng rng(35);
  for (int depth = 1; depth <= kMaxDepth; ++depth) {
    TowerModel m{std::vector<ComponentKind>(static_cast<std::size_t>(depth), ComponentKind::PL2T)};
    std::vector<SpineEntry> sp = spine(m);
    for (int a = 1; a <= depth + 1; ++a) {
      for (int b = 1; b <= depth + 1; ++b) {
        bool ab = congr_contained({a}, {b}), ba = congr_contained({b}, {a});
        ASSERT_TRUE(ab || ba);
        ASSERT_EQ(ab && ba, a == b);
        ASSERT_EQ(congr_covers({a}, {b}), b == a + 1);
      }
    }
    for (int trial = 0; trial < 100; ++trial) {
      Point p = gen_point(rng, depth), q = gen_point(rng, depth);
      if (p == q) continue;
      CongruenceLevel v = congr_V(p, q);
      ASSERT_TRUE(std::any_of(sp.begin(), sp.end(), [&](const SpineEntry& e) { return e.level == v; }));
    }
  }
}

TEST(LexProperty, SupportOfConjugateIsImageAtFiberLevel) {
  Rng rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    LexAut g = gen_lexaut(rng, kPL2), f = gen_lexaut(rng, kPL2);
    LexSupport sg = lex_support(g), sgf = lex_support(lex_conj(g, f));
    ASSERT_EQ(sgf.whole, pl_image(sg.whole, f.top()));
    for (int i = 0; i < 20; ++i) {
      Point p = gen_point(rng, 2);
      ASSERT_EQ(ls_contains(sg, p), ls_contains(sgf, lex_apply(f, p)));
    }
  }
}

TEST(LexProperty, RigidStabilizersOfMovedBlocksCommute) {
  Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    OBlock d({Rat(rng.range(-2, 2))});
    LexAut f = gen_lexaut(rng, kPL3);
    OBlock df = block_image(f, d);
    if (df == d) continue;
    LexAut a = nest(d.prefix, gen_lexaut(rng, kPL3.tail()));
    LexAut b = nest(df.prefix, gen_lexaut(rng, kPL3.tail()));
    ASSERT_TRUE(in_rst(a, d));
    ASSERT_TRUE(in_rst(b, df));
    ASSERT_EQ(lex_comm(a, b), LexAut::identity(3));
  }
}

TEST(LexProperty, PointwiseStabilizerIffSupportMissesBlock) {
  Rng rng(38);
  for (const TowerModel& m : {kPL2, kPL3}) {
    for (int trial = 0; trial < 300; ++trial) {
      LexAut g = gen_lexaut(rng, m);
      int level = static_cast<int>(rng.range(1, m.depth()));
      OBlock d = block_of(gen_point(rng, m.depth()), level);
      LexSupport meet = ls_intersection(lex_support(g), block_support(d, m.depth()));
      ASSERT_EQ(in_ptstab(g, d), meet.empty()) << g << " " << d.str();
      // Support agrees with pointwise movement.
      for (int i = 0; i < 10; ++i) {
        Point p = gen_point(rng, m.depth());
        ASSERT_EQ(ls_contains(lex_support(g), p), lex_apply(g, p) != p);
      }
      if (!lex_support(g).empty()) {
        Point p = ls_point(lex_support(g));
        ASSERT_NE(lex_apply(g, p), p);
        Point q = ls_sample(lex_support(g), rng);
        ASSERT_NE(lex_apply(g, q), q);
      }
    }
  }
}

TEST(LexProperty, TransportMapsAlphaToBeta) {
  Rng rng(39);
  for (const TowerModel& m : {kPL2, kPL3, kMixed}) {
    for (int trial = 0; trial < 200; ++trial) {
      Point a = gen_point(rng, m.depth()), b = gen_point(rng, m.depth());
      LexAut t = lex_transport(a, b);
      ASSERT_TRUE(conforms(m, t));
      ASSERT_EQ(lex_apply(t, a), b);
    }
  }
}

TEST(LexProperty, DepressionAgreesInsideAndFixesOutside) {
  Rng rng(40);
  for (int trial = 0; trial < 200; ++trial) {
    LexAut g = gen_lexaut(rng, kPL3);
    std::vector<OBlock> blocks;
    for (const auto& o : g.overrides()) {
      OBlock b({o.fiber});
      if (in_st(g, b)) blocks.push_back(b);
    }
    LexAut d = lex_dep(g, blocks);
    for (int i = 0; i < 20; ++i) {
      Point p = gen_point(rng, 3);
      bool inside = std::any_of(blocks.begin(), blocks.end(), [&](const OBlock& b) { return b.contains(p); });
      ASSERT_EQ(lex_apply(d, p), inside ? lex_apply(g, p) : p);
    }
  }
}

TEST(SubAt, MissingFibersKeepTailDepth) {
  LexAut g = LexAut::make(5, PLMap::translation(Rat(1)));
  for (std::size_t k = 0; k <= 4; ++k) {
    std::vector<Rat> prefix(k, Rat(1));
    EXPECT_EQ(sub_at(g, prefix).depth(), 5 - static_cast<int>(k));
  }
  LexAut f = nest({Rat(1), Rat(1), Rat(1)}, LexAut::make(2, PLMap::translation(Rat(3, 2))));
  EXPECT_EQ(lex_dep(f, {OBlock({Rat(2), Rat(0), Rat(0)})}), LexAut::identity(5));
  EXPECT_EQ(lex_dep(f, {OBlock({Rat(1), Rat(1), Rat(1)})}), f);
}

#include <gtest/gtest.h>

#include <set>

#include "ordperm/generators.hpp"

using namespace ordperm;

namespace {

PLMap P(std::string_view text) { return parse_plmap(text); }
IntervalSet S(std::string_view text) { return parse_interval_set(text); }

// Breakpoints of both maps, midpoints between them, and points beyond.
std::vector<Rat> probes(std::initializer_list<const PLMap*> maps) {
  std::set<Rat> xs{Rat(-50), Rat(0), Rat(50)};
  for (const PLMap* m : maps) {
    for (const auto& a : m->anchors()) {
      xs.insert(a.x);
      xs.insert(a.x - Rat(1, 2));
      xs.insert(a.x + Rat(1, 2));
    }
  }
  std::vector<Rat> v(xs.begin(), xs.end());
  for (std::size_t i = 0, n = v.size(); i + 1 < n; ++i) v.push_back(midpoint(v[i], v[i + 1]));
  return v;
}

}  // namespace

TEST(PLMap, EvalExamples) {
  EXPECT_EQ(PLMap::identity()(Rat(7, 3)), Rat(7, 3));
  EXPECT_EQ(P("PL[(0,1)]")(Rat(5)), Rat(6));
  EXPECT_EQ(P("PL[(0,0),(1,2),(3,3)]")(Rat(1, 2)), Rat(1));
  EXPECT_EQ(P("PL[(0,0),(1,2),(3,3)]").inverse_at(Rat(1)), Rat(1, 2));
}

TEST(PLMap, CanonicalizationDropsRemovableAnchors) {
  EXPECT_EQ(pl_interpolate({{Rat(0), Rat(0)}}), PLMap::identity());
  EXPECT_EQ(pl_interpolate({{Rat(0), Rat(1)}}), PLMap::translation(Rat(1)));
  EXPECT_EQ(pl_interpolate({{Rat(2), Rat(3)}, {Rat(5), Rat(6)}}).str(), "PL[(0,1)]");
  EXPECT_EQ(pl_interpolate({{Rat(0), Rat(0)}, {Rat(1), Rat(2)}, {Rat(2), Rat(4)}, {Rat(3), Rat(5)}}).str(),
            "PL[(0,0),(2,4)]");
  EXPECT_THROW(pl_interpolate({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}), Error);
  EXPECT_THROW(pl_interpolate({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}), Error);
  EXPECT_THROW(pl_interpolate({}), Error);
}

TEST(PLMap, ComposeExamples) {
  PLMap f = P("PL[(0,0),(1,2)]"), g = P("PL[(0,0),(2,1)]");
  EXPECT_EQ(f * PLMap::identity(), f);
  EXPECT_EQ(PLMap::translation(Rat(1)) * PLMap::translation(Rat(-1)), PLMap::identity());
  PLMap fg = pl_compose(f, g);
  for (const Rat& x : {Rat(-1), Rat(1, 2), Rat(1), Rat(3)}) EXPECT_EQ(fg(x), g(f(x))) << x;
  EXPECT_LE(fg.anchors().size(), f.anchors().size() + g.anchors().size());
}

TEST(PLMap, VeeWedgeExamples) {
  PLMap f = P("PL[(0,0),(1,2),(3,3)]");
  EXPECT_EQ(pl_vee(f, f), f);
  EXPECT_EQ(pl_vee(PLMap::translation(Rat(1)), PLMap::identity()), PLMap::translation(Rat(1)));
  EXPECT_EQ(pl_vee(P("PL[(0,1)]"), P("PL[(0,-1)]")), P("PL[(0,1)]"));
  // Crossing inside a piece: f - t changes sign between 0 and 1 and between 1 and 3.
  PLMap t = PLMap::translation(Rat(1, 2));
  PLMap v = pl_vee(f, t), w = pl_wedge(f, t);
  for (const Rat& x : probes({&f, &t})) {
    EXPECT_EQ(v(x), max(f(x), t(x))) << x;
    EXPECT_EQ(w(x), min(f(x), t(x))) << x;
  }
  bool has_crossing = std::any_of(v.anchors().begin(), v.anchors().end(),
                                  [](const Anchor& a) { return a.x == Rat(1, 2); });
  EXPECT_TRUE(has_crossing) << v;
}

TEST(PLMap, SupportExamples) {
  EXPECT_EQ(pl_support(PLMap::identity()), S("{}"));
  EXPECT_EQ(pl_support(PLMap::translation(Rat(1))), S("(-inf,+inf)"));
  EXPECT_EQ(pl_support(P("PL[(0,0),(1,2),(3,3)]")), S("(0,3)"));
  // Crosses the diagonal at 0: an isolated fixed point.
  EXPECT_EQ(pl_support(P("PL[(-2,-1),(2,1)]")), S("(-inf,0)\xE2\x88\xAA(0,+inf)"));
  EXPECT_EQ(pl_support(P("PL[(-1,-1),(0,1/2),(1,1)]")), S("(-1,1)"));
}

TEST(PLMap, BumpExamples) {
  PLMap b = pl_bump(Rat(0), Rat(1), Rat(2), Rat(3));
  EXPECT_EQ(b.str(), "PL[(0,0),(1,2),(3,3)]");
  EXPECT_EQ(pl_support(b), S("(0,3)"));
  EXPECT_EQ(b(Rat(1)), Rat(2));
  for (const Rat& x : {Rat(-5), Rat(0), Rat(3), Rat(7, 2)}) EXPECT_EQ(b(x), x);
  PLMap near = pl_bump(Rat(0), Rat(1), Rat(1) + Rat(1, 1000), Rat(3));
  EXPECT_EQ(pl_support(near), S("(0,3)"));
  EXPECT_THROW(pl_bump(Rat(0), Rat(1), Rat(1), Rat(3)), Error);
  try {
    pl_bump(Rat(0), Rat(1), Rat(1), Rat(3));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonMonotonicInput);
  }
}

TEST(PLMap, DepExamples) {
  PLMap b = pl_bump(Rat(0), Rat(1), Rat(2), Rat(3));
  EXPECT_EQ(pl_dep(b, S("{}")), PLMap::identity());
  EXPECT_EQ(pl_dep(b, pl_support(b)), b);
  PLMap two = pl_bump(Rat(0), Rat(1, 4), Rat(3, 4), Rat(1)) * pl_bump(Rat(2), Rat(9, 4), Rat(11, 4), Rat(3));
  ASSERT_EQ(pl_support(two), S("(0,1)\xE2\x88\xAA(2,3)"));
  PLMap d = pl_dep(two, S("(0,1)"));
  EXPECT_EQ(d(Rat(1, 2)), two(Rat(1, 2)));
  EXPECT_EQ(d(Rat(5, 2)), Rat(5, 2));
  EXPECT_EQ(pl_support(d), S("(0,1)"));
  try {
    pl_dep(b, S("(1,5)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvariant);
  }
}

TEST(PLMap, ConjugationExamples) {
  PLMap b = pl_bump(Rat(0), Rat(1), Rat(2), Rat(3));
  PLMap t = PLMap::translation(Rat(10));
  EXPECT_EQ(pl_conj(b, PLMap::identity()), b);
  EXPECT_EQ(pl_comm(b, b), PLMap::identity());
  EXPECT_EQ(pl_support(pl_conj(b, t)), S("(10,13)"));
}

TEST(PLMap, TextRoundTrip) {
  for (const char* t : {"PL[]", "PL[(0,1)]", "PL[(-1/2,0),(3,7/3)]"}) EXPECT_EQ(P(t).str(), t);
  EXPECT_THROW(P("PL[(0,0)]"), ParseError);           // removable anchor
  EXPECT_THROW(P("PL[(0,1),(1,0)]"), ParseError);     // not monotone
  EXPECT_THROW(P("PL[(0,1)"), ParseError);
}

TEST(PLMapProperty, GroupAxioms) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    PLMap f = gen_plmap(rng), g = gen_plmap(rng), h = gen_plmap(rng);
    ASSERT_EQ((f * g) * h, f * (g * h));
    ASSERT_EQ(f * pl_inverse(f), PLMap::identity());
    ASSERT_EQ(pl_inverse(f) * f, PLMap::identity());
    PLMap fg = f * g;
    for (const Rat& x : probes({&f, &g})) ASSERT_EQ(fg(x), g(f(x)));
  }
}

TEST(PLMapProperty, SupportOfConjugateIsImage) {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    PLMap g = gen_plmap(rng), f = gen_plmap(rng);
    ASSERT_EQ(pl_support(pl_conj(g, f)), pl_image(pl_support(g), f)) << g << " " << f;
  }
}

TEST(PLMapProperty, SupportMatchesPointwiseOracle) {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    PLMap f = gen_plmap(rng, 5);
    IntervalSet s = pl_support(f);
    for (const Rat& x : probes({&f})) ASSERT_EQ(s.contains(x), f(x) != x) << f << " at " << x;
  }
}

TEST(PLMapProperty, SupportOfProductAndDisjointCommute) {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    PLMap f = gen_plmap(rng), g = gen_plmap(rng);
    ASSERT_TRUE(iset_subset(pl_support(f * g), iset_union(pl_support(f), pl_support(g))));
    PLMap a = gen_bump(rng, -8, 0), b = gen_bump(rng, 0, 8);
    ASSERT_EQ(iset_relate(pl_support(a), pl_support(b)), Relation::Disjoint);
    ASSERT_EQ(pl_comm(a, b), PLMap::identity());
  }
}

TEST(PLMapProperty, LatticeLaws) {
  Rng rng(25);
  for (int trial = 0; trial < 300; ++trial) {
    PLMap f = gen_plmap(rng), g = gen_plmap(rng);
    PLMap v = pl_vee(f, g), w = pl_wedge(f, g);
    ASSERT_EQ(v, pl_vee(g, f));
    ASSERT_EQ(pl_wedge(f, v), f);
    ASSERT_EQ(pl_vee(f, w), f);
    ASSERT_EQ(pl_wedge(v, w), w);
    for (const Rat& x : probes({&f, &g})) {
      ASSERT_GE(v(x), f(x));
      ASSERT_EQ(v(x), max(f(x), g(x)));
      ASSERT_EQ(w(x), min(f(x), g(x)));
    }
  }
}

TEST(PLMapProperty, InterpolationRoundTrips) {
  Rng rng(26);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.range(1, 8));
    auto xs = gen_sorted(rng, n), ys = gen_sorted(rng, n);
    std::vector<std::pair<Rat, Rat>> pts;
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(xs[i], ys[i]);
    PLMap f = pl_interpolate(pts);
    for (const auto& [x, y] : pts) {
      ASSERT_EQ(f(x), y);
      ASSERT_EQ(f.inverse_at(y), x);
    }
    ASSERT_EQ(parse_plmap(f.str()), f);
  }
}

TEST(PLMapProperty, DepAgreesOnDomainOnly) {
  Rng rng(27);
  for (int trial = 0; trial < 200; ++trial) {
    PLMap f = gen_plmap(rng, 5);
    IntervalSet supp = pl_support(f);
    if (supp.empty()) continue;
    // Any sub-collection of support components is invariant.
    std::vector<Interval> chosen;
    for (const auto& p : supp.parts()) if (rng.coin()) chosen.push_back(p);
    IntervalSet lam = IntervalSet::from(chosen);
    PLMap d = pl_dep(f, lam);
    ASSERT_EQ(pl_support(d), iset_intersection(supp, lam));
    for (const Rat& x : probes({&f})) ASSERT_EQ(d(x), lam.contains(x) ? f(x) : x);
  }
}

// If an order-automorphism permutes finitely many pairwise-disjoint
// intervals, it fixes each of them.
TEST(PLMapProperty, PermutedDisjointIntervalsAreEachFixed) {
  Rng rng(28);
  int permuting = 0;
  for (int trial = 0; trial < 300; ++trial) {
    PLMap f = gen_bump(rng) * gen_bump(rng);
    std::vector<Interval> family;
    IntervalSet supp = pl_support(f), rest = iset_exterior(supp);
    for (const auto& p : supp.parts()) family.push_back(p);
    // Components of the complement of the support are permuted too.
    for (const auto& p : rest.parts()) family.push_back(p);
    if (pl_permutes(f, family)) {
      ++permuting;
      ASSERT_TRUE(pl_fixes_each(f, family));
    }
    // A family that f shifts is not permuted.
    PLMap t = PLMap::translation(Rat(1));
    std::vector<Interval> blocks{{Rat(0), Rat(1)}, {Rat(1), Rat(2)}};
    ASSERT_FALSE(pl_permutes(t, blocks));
  }
  EXPECT_EQ(permuting, 300);
}

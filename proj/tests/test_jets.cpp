#include <gtest/gtest.h>

#include "jetkernel/error.hpp"
#include "jetkernel/jets.hpp"
#include "jetkernel/parse.hpp"
#include "jetkernel/random.hpp"

using namespace jetkernel;

namespace {

Polynomial P(const std::string& s) { return parse_polynomial(s); }
Rational Q(long v) { return Rational(v); }

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

FormalSpace source_ux() {
  WeilOptions o;
  o.vars = {"x"};
  return FormalSpace("S", {"u"}, make_weil(1, {P("x^2")}, o));
}

}  // namespace

TEST(JetSpace, CoordinateOrderAndKeys) {
  JetSpace j(2, 1, 2);
  std::vector<std::string> keys;
  for (const auto& c : j.fiber_coordinates()) keys.push_back(j.key(c));
  EXPECT_EQ(keys, (std::vector<std::string>{"u[0,0]", "u[1,0]", "u[0,1]", "u[2,0]", "u[1,1]", "u[0,2]"}));
  EXPECT_EQ(j.coordinate_names().front(), "x1");
  EXPECT_EQ(j.coordinate_names()[2], "u_0_0");
  EXPECT_EQ(j.dim(), 8u);

  JetSpace two(1, 2, 1);
  std::vector<std::string> k2;
  for (const auto& c : two.fiber_coordinates()) k2.push_back(two.key(c));
  EXPECT_EQ(k2, (std::vector<std::string>{"u1[0]", "u2[0]", "u1[1]", "u2[1]"}));
}

TEST(JetSpaceProperty, FiberDimensionMatchesBinomial) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (unsigned k = 0; k <= 4; ++k) {
        JetSpace j(n, m, k);
        ASSERT_EQ(j.fiber_dim(), m * binomial(n + k, n));
        ASSERT_EQ(jet_fiber_dim(n, m, k), j.fiber_dim());
        if (k > 0) {
          // Lower levels are prefixes.
          JetSpace lower(n, m, k - 1);
          for (std::size_t i = 0; i < lower.fiber_dim(); ++i) {
            ASSERT_EQ(lower.fiber_coordinates()[i], j.fiber_coordinates()[i]);
          }
        }
      }
    }
  }
}

TEST(Prolong, Examples) {
  JetPoint a = prolong({P("x^2")}, {"x"}, 2, {Q(0)});
  EXPECT_EQ(a.values, (std::vector<Rational>{Q(0), Q(0), Q(2)}));

  JetPoint b = prolong({P("7")}, {"x"}, 3, {Q(5)});
  EXPECT_EQ(b.values, (std::vector<Rational>{Q(7), Q(0), Q(0), Q(0)}));

  JetPoint c = prolong({P("x*y")}, {"x", "y"}, 2, {Q(1), Q(1)});
  EXPECT_EQ(c.values, (std::vector<Rational>{Q(1), Q(1), Q(1), Q(0), Q(1), Q(0)}));

  JetPoint d = prolong({P("x^3"), P("x")}, {"x"}, 1, {Q(2)});
  EXPECT_EQ(d.value({0, {1}}), Q(12));
  EXPECT_EQ(d.value({1, {0}}), Q(2));
}

TEST(Prolong, Errors) {
  try {
    prolong({P("x")}, {"x"}, 1, {Q(0), Q(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::shape);
  }
  try {
    prolong({P("x*z")}, {"x"}, 1, {Q(0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::missing_variable);
  }
}

TEST(Project, Examples) {
  JetPoint p = prolong({P("x^3 + x")}, {"x"}, 3, {Q(1)});
  JetPoint q = project(p);
  EXPECT_EQ(q.space.k(), 2u);
  EXPECT_EQ(q.values, (std::vector<Rational>{Q(2), Q(4), Q(6)}));
  JetPoint z = prolong({P("x")}, {"x"}, 0, {Q(1)});
  try {
    project(z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
}

TEST(ProjectProperty, ProjectionCommutesWithProlongation) {
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    std::vector<std::string> vars{"x1", "x2"};
    std::vector<Polynomial> s{random_polynomial(rng, vars, 4, 5), random_polynomial(rng, vars, 4, 5)};
    std::vector<Rational> base{rng.rational(), rng.rational()};
    unsigned k = 1 + static_cast<unsigned>(rng.below(3));
    JetPoint hi = prolong(s, vars, k, base);
    JetPoint lo = prolong(s, vars, k - 1, base);
    ASSERT_EQ(project(hi).values, lo.values);
  }
}

TEST(DiskJets, Examples) {
  JetPoint a = disk_section_to_jet({P("1 + e1")}, disk(1, 1));
  EXPECT_EQ(a.values, (std::vector<Rational>{Q(1), Q(1)}));
  JetPoint z = disk_section_to_jet({P("0")}, disk(1, 1));
  EXPECT_EQ(z.values, (std::vector<Rational>{Q(0), Q(0)}));
  JetPoint b = disk_section_to_jet({P("3*e1*e2")}, disk(2, 2));
  EXPECT_EQ(b.value({0, {1, 1}}), Q(3));
  JetPoint c = disk_section_to_jet({P("e1^2")}, disk(1, 2));
  EXPECT_EQ(c.value({0, {2}}), Q(2));
}

TEST(DiskJetsProperty, RoundTripAndProlongation) {
  Rng rng(29);
  WeilAlgebra d = disk(2, 3);
  for (int i = 0; i < 100; ++i) {
    std::vector<Polynomial> s{random_polynomial(rng, d.vars(), 5, 6)};
    JetPoint j = disk_section_to_jet(s, d);
    std::vector<Polynomial> back = jet_to_disk_section(j, d);
    ASSERT_EQ(back[0], d.reduce(s[0]));
    // Taylor's theorem at the origin: the disk element is the jet of s at 0.
    std::map<std::string, std::string> names{{"e1", "x1"}, {"e2", "x2"}};
    JetPoint p = prolong({rename(s[0], names)}, {"x1", "x2"}, 3, {Q(0), Q(0)});
    ASSERT_EQ(p.values, j.values);
  }
}

TEST(Cone, DimsAndCompatibility) {
  EXPECT_EQ(rinf_dims(3), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(jet_dims(1, 1, 2), (std::vector<std::size_t>{2, 3, 4}));

  FormalSpace S = source_ux();
  TruncatedProPlot good{S, {1, 2, 3}, {{P("u")}, {P("u"), P("x")}, {P("u"), P("x"), P("u*x")}}};
  EXPECT_FALSE(first_incompatible_level(good).has_value());
  FormalMorphism top = cone_to_plot(good);
  EXPECT_EQ(top.target().dim(), 3u);
  TruncatedProPlot again = plot_to_cone(top, good.dims);
  EXPECT_EQ(again.levels, good.levels);

  TruncatedProPlot bad = good;
  bad.levels[2][1] = P("2*x");
  EXPECT_EQ(first_incompatible_level(bad), std::optional<std::size_t>(2));
  try {
    cone_to_plot(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::incompatible_cone);
    EXPECT_NE(std::string(e.what()).find("level 2"), std::string::npos);
  }
}

TEST(Cone, LiftJetPlot) {
  FormalSpace S = source_ux();
  std::vector<Polynomial> top{P("u + x*u^2"), P("x"), P("u^3")};
  TruncatedProPlot fam = plot_to_cone(FormalMorphism(S, rk_space(3), top), rinf_dims(3));
  JetLift lift = lift_jet_plot(fam);
  for (bool ok : lift.level_ok) EXPECT_TRUE(ok);
  EXPECT_EQ(composite(lift.pair).components(), top);
}

TEST(Cone, BrokenLevelThreeIsReported) {
  FormalSpace S = source_ux();
  std::vector<Polynomial> f{P("u"), P("x"), P("u^2"), P("u*x"), P("1")};
  TruncatedProPlot fam = plot_to_cone(FormalMorphism(S, rk_space(5), f), rinf_dims(5));
  fam.levels[3][0] = P("u + x");
  try {
    cone_to_plot(fam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::incompatible_cone);
    EXPECT_NE(std::string(e.what()).find("level 3"), std::string::npos) << e.what();
  }
}

TEST(Cone, ConstantFamilyIsConstantPlot) {
  FormalSpace S("D", {}, disk(1, 1));
  TruncatedProPlot fam{S, {1, 2}, {{P("2")}, {P("2"), P("-1")}}};
  FormalMorphism top = cone_to_plot(fam);
  EXPECT_EQ(top.components(), (std::vector<Polynomial>{P("2"), P("-1")}));
  JetLift lift = lift_jet_plot(fam);
  for (bool ok : lift.level_ok) EXPECT_TRUE(ok);
}

TEST(Project, OrderOneKeepsValues) {
  JetPoint p = prolong({P("x^2 + 3"), P("5*x")}, {"x"}, 1, {Q(1)});
  JetPoint q = project(p);
  EXPECT_EQ(q.values, (std::vector<Rational>{Q(4), Q(5)}));
}

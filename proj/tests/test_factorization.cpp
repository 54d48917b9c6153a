#include <gtest/gtest.h>

#include "jetkernel/error.hpp"
#include "jetkernel/factorization.hpp"
#include "jetkernel/parse.hpp"
#include "jetkernel/random.hpp"

using namespace jetkernel;

namespace {

Polynomial P(const std::string& s) { return parse_polynomial(s); }

WeilAlgebra weil(const std::vector<std::string>& vars, const std::vector<std::string>& gens) {
  WeilOptions o;
  o.vars = vars;
  std::vector<Polynomial> g;
  for (const auto& s : gens) g.push_back(parse_polynomial(s, vars));
  return make_weil(vars.size(), g, o);
}

FormalSpace R(std::vector<std::string> coords) { return FormalSpace::cartesian("V", std::move(coords)); }

FactorizationPair pair(const FormalSpace& s, const std::vector<std::string>& vcoords,
                       const std::vector<std::string>& iota, const std::vector<std::string>& f) {
  FormalSpace V = R(vcoords);
  return FactorizationPair(FormalMorphism::parse(s, V, iota),
                           FormalMorphism::parse(V, rk_space(f.size()), f));
}

FormalSpace D1() { return FormalSpace("D", {}, weil({"t"}, {"t^2"})); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::internal_consistency;
}

void expect_exact(const VerificationRecord& r) {
  EXPECT_FALSE(r.empty());
  EXPECT_TRUE(all_exact(r)) << first_violation(r);
}

}  // namespace

TEST(Pair, ConstructionChecks) {
  FormalSpace V = R({"a"});
  FormalMorphism iota = FormalMorphism::parse(D1(), V, {"t"});
  EXPECT_EQ(kind_of([&] {
              FactorizationPair(iota, FormalMorphism::parse(R({"a", "b"}), rk_space(1), {"a"}));
            }),
            ErrorKind::type_mismatch);
  EXPECT_EQ(kind_of([&] {
              FactorizationPair(FormalMorphism::identity(D1()),
                                FormalMorphism::parse(D1(), rk_space(1), {"t"}));
            }),
            ErrorKind::shape);
}

TEST(Pair, CompositeExamples) {
  FactorizationPair p = pair(D1(), {"a", "w"}, {"t", "0"}, {"a + w"});
  EXPECT_EQ(composite(p).component(0), P("t"));
  FactorizationPair q = pair(D1(), {"a"}, {"t"}, {"a^2"});
  EXPECT_TRUE(composite(q).component(0).is_zero());
  EXPECT_EQ(p.level(), 1u);
}

TEST(Pair, EqualCompositesWorkedPair) {
  FactorizationPair p = pair(D1(), {"a", "w"}, {"t", "0"}, {"a + w"});
  FactorizationPair q = pair(D1(), {"b", "z"}, {"t", "0"}, {"b + z + b^2"});
  EXPECT_TRUE(equal_composites(p, q));
  FactorizationPair r = pair(D1(), {"b", "z"}, {"t", "0"}, {"2*b + z"});
  EXPECT_FALSE(equal_composites(p, r));
  EXPECT_EQ(first_composite_difference(p, r), std::optional<std::size_t>(0));
  FactorizationPair two = pair(D1(), {"a"}, {"t"}, {"a", "a"});
  EXPECT_EQ(kind_of([&] { first_composite_difference(p, two); }), ErrorKind::shape);
}

TEST(Embed, Examples) {
  FormalSpace S("S", {"u"}, weil({"t"}, {"t^2"}));
  FactorizationPair p = pair(S, {"a", "b"}, {"u + t", "u^2"}, {"a*b", "b"});
  EmbeddedFactorization e = embed_factorization(p);
  expect_exact(verify_step(e.step));
  EXPECT_TRUE(is_rectified(shear_rectify(e.pair.iota()).rectified));
  EXPECT_EQ(composite(e.pair), composite(p));
  EXPECT_EQ(e.pair.middle().dim(), 4u);
}

TEST(EmbedProperty, RandomPairs) {
  Rng rng(31);
  FormalSpace S("S", {"u"}, disk(2, 2));
  for (int i = 0; i < 40; ++i) {
    FormalSpace V = R({"a", "b"});
    std::vector<Polynomial> ic, fc;
    for (int k = 0; k < 2; ++k) ic.push_back(random_polynomial(rng, S.coordinates(), 3, 4));
    for (int k = 0; k < 3; ++k) fc.push_back(random_polynomial(rng, V.coordinates(), 3, 4));
    FactorizationPair p(FormalMorphism(S, V, ic), FormalMorphism(V, rk_space(3), fc));
    EmbeddedFactorization e = embed_factorization(p);
    ASSERT_TRUE(all_exact(verify_step(e.step)));
    ASSERT_EQ(composite(e.pair), composite(p));
  }
}

TEST(WitnessD1, WorkedPair) {
  FactorizationPair p = pair(D1(), {"a"}, {"t"}, {"a"});
  FactorizationPair q = pair(D1(), {"b"}, {"t"}, {"b + b^2"});
  WitnessSpan s = witness_d1(p, q);
  expect_exact(s.verification);
  expect_exact(verify_witness(s, p, q));
  ASSERT_EQ(s.delta.size(), 1u);
  EXPECT_EQ(s.delta[0], P("t^2"));
  EXPECT_EQ(s.h, (std::vector<Polynomial>{P("t^2")}));
  EXPECT_EQ(s.mu[0][0], P("1"));
}

TEST(WitnessD1, DiagonalAndHigherOrder) {
  FactorizationPair p = pair(D1(), {"a", "c"}, {"t", "t"}, {"a - c"});
  FactorizationPair q = pair(D1(), {"b"}, {"t"}, {"b^3"});
  WitnessSpan s = witness_d1(p, q);
  expect_exact(verify_witness(s, p, q));

  FactorizationPair r = pair(D1(), {"a"}, {"t"}, {"a^2"});
  FactorizationPair r2 = pair(D1(), {"b"}, {"2*t"}, {"b^3"});
  expect_exact(verify_witness(witness_d1(r, r2), r, r2));
}

TEST(WitnessD1, Errors) {
  FactorizationPair p = pair(D1(), {"a"}, {"t"}, {"a"});
  FactorizationPair flat = pair(D1(), {"a"}, {"0"}, {"a"});
  EXPECT_EQ(kind_of([&] { witness_d1(p, flat); }), ErrorKind::non_mono);
  FactorizationPair other = pair(D1(), {"a"}, {"t"}, {"a + 1"});
  EXPECT_EQ(kind_of([&] { witness_d1(p, other); }), ErrorKind::nonvanishing_jet);
  FormalSpace D2("D", {}, disk(1, 2));
  FactorizationPair thick = pair(D2, {"a"}, {"e1"}, {"a"});
  EXPECT_EQ(kind_of([&] { witness_d1(thick, thick); }), ErrorKind::shape);
}

TEST(WitnessPoint, MonomialAlgebra) {
  FormalSpace S("S", {}, weil({"x", "y"}, {"x^2", "x*y", "y^3"}));
  FactorizationPair p = pair(S, {"a", "b"}, {"x", "y"}, {"a + b"});
  FactorizationPair q = pair(S, {"c", "d"}, {"x", "y"}, {"c + d + c^2 + c*d + d^3"});
  WitnessSpan s = witness_point(p, q);
  expect_exact(verify_witness(s, p, q));
  EXPECT_EQ(s.delta[0], P("x^2 + x*y + y^3"));
  EXPECT_EQ(s.mu[0][0], P("1"));
  EXPECT_EQ(s.mu[1][0], P("1"));
  EXPECT_EQ(s.mu[2][0], P("1"));

  FactorizationPair bad = pair(S, {"c", "d"}, {"x", "y"}, {"c + d + d^2"});
  EXPECT_EQ(kind_of([&] { witness_point(p, bad); }), ErrorKind::not_in_ideal);
  FactorizationPair unrect = pair(S, {"c", "d"}, {"y", "x"}, {"c + d"});
  EXPECT_EQ(kind_of([&] { witness_point(p, unrect); }), ErrorKind::not_rectified);
}

TEST(WitnessGeneral, ParameterizedExample) {
  FormalSpace S("S", {"u"}, weil({"t"}, {"t^2"}));
  FactorizationPair p = pair(S, {"p", "a", "w"}, {"u", "t", "0"}, {"p*a + w"});
  FactorizationPair q = pair(S, {"p", "a", "w"}, {"u", "t", "0"}, {"p*a + w + p*a^2"});
  WitnessSpan s = witness_general(p, q);
  expect_exact(verify_witness(s, p, q));
  EXPECT_EQ(s.delta[0], P("u*t^2"));
  EXPECT_EQ(s.mu[0][0], P("u"));
}

TEST(WitnessGeneral, AgreesWithD1OnThePoint) {
  FactorizationPair p = pair(D1(), {"a", "w"}, {"t", "0"}, {"a + w"});
  FactorizationPair q = pair(D1(), {"b", "z"}, {"t", "0"}, {"b + z + 3*b^2"});
  WitnessSpan g = witness_general(p, q);
  WitnessSpan d = witness_d1(p, q);
  EXPECT_EQ(g.delta, d.delta);
  EXPECT_EQ(g.mu, d.mu);
}

TEST(Decide, Examples) {
  FactorizationPair p = pair(D1(), {"a", "w"}, {"t", "0"}, {"a + w"});
  EquivalenceDecision self = decide_equivalence(p, p);
  EXPECT_TRUE(self.equivalent);
  ASSERT_TRUE(self.chain.has_value());
  EXPECT_TRUE(self.chain->steps.empty());

  FactorizationPair q = pair(D1(), {"b", "z"}, {"t", "0"}, {"b + z + b^2"});
  EquivalenceDecision d = decide_equivalence(p, q);
  EXPECT_TRUE(d.equivalent);
  ASSERT_TRUE(d.chain.has_value());
  EXPECT_FALSE(d.chain->steps.empty());
  expect_exact(d.verification);
  expect_exact(verify_chain(*d.chain, p, q));
  for (const auto& step : d.chain->steps) expect_exact(verify_step(step));

  FactorizationPair r = pair(D1(), {"b"}, {"t"}, {"b + 1"});
  EquivalenceDecision n = decide_equivalence(p, r);
  EXPECT_FALSE(n.equivalent);
  EXPECT_FALSE(n.chain.has_value());
  EXPECT_EQ(n.first_difference, std::optional<std::size_t>(0));
}

TEST(DecideProperty, RandomPairsOverParameters) {
  Rng rng(37);
  FormalSpace S("S", {"u"}, disk(1, 2));
  for (int i = 0; i < 25; ++i) {
    FormalSpace V = R({"a", "b"});
    std::vector<Polynomial> ic, fc;
    for (int k = 0; k < 2; ++k) ic.push_back(random_polynomial(rng, S.coordinates(), 2, 3));
    for (int k = 0; k < 2; ++k) fc.push_back(random_polynomial(rng, V.coordinates(), 2, 3));
    FactorizationPair p(FormalMorphism(S, V, ic), FormalMorphism(V, rk_space(2), fc));
    FactorizationPair q = lift_plot(S, composite(p).components());
    EquivalenceDecision d = decide_equivalence(p, q);
    ASSERT_TRUE(d.equivalent);
    ASSERT_TRUE(all_exact(d.verification)) << first_violation(d.verification);
  }
}

TEST(LiftPlot, Example) {
  FormalSpace S("S", {"u"}, weil({"e"}, {"e^2"}));
  FactorizationPair l = lift_plot(S, {P("u + e"), P("e^2")});
  EXPECT_EQ(l.f().component(0), P("u + e"));
  EXPECT_TRUE(l.f().component(1).is_zero());
  EXPECT_EQ(composite(l).components(), (std::vector<Polynomial>{P("u + e"), Polynomial()}));
  EXPECT_EQ(l.level(), 2u);
}

TEST(WitnessD1, DiagonalCaseHasZeroDelta) {
  FactorizationPair p = pair(D1(), {"a", "w"}, {"t", "0"}, {"a*w + a^2 + 3*w"});
  WitnessSpan s = witness_d1(p, p);
  expect_exact(verify_witness(s, p, p));
  EXPECT_TRUE(s.delta[0].is_zero());
  EXPECT_TRUE(s.mu[0][0].is_zero());
}

TEST(WitnessD1, CubicDeltaHasLinearQuotient) {
  FactorizationPair p = pair(D1(), {"a", "w"}, {"t", "0"}, {"a^2"});
  FactorizationPair q = pair(D1(), {"b", "z"}, {"t", "0"}, {"b^2 + b^3"});
  WitnessSpan s = witness_d1(p, q);
  expect_exact(verify_witness(s, p, q));
  EXPECT_EQ(s.delta[0], P("t^3"));
  EXPECT_EQ(s.mu[0][0], P("t"));
}

TEST(WitnessPoint, LinearPerturbationIsNotInIdeal) {
  FormalSpace S("S", {}, weil({"x", "y"}, {"x^2", "x*y", "y^3"}));
  FactorizationPair p = pair(S, {"a", "b"}, {"x", "y"}, {"a*b + b^2"});
  FactorizationPair q = pair(S, {"c", "d"}, {"x", "y"}, {"c*d + d^2 + c"});
  EXPECT_EQ(kind_of([&] { witness_point(p, q); }), ErrorKind::not_in_ideal);
}

TEST(WitnessGeneral, PointParameterAgreesWithWitnessPoint) {
  FormalSpace S("S", {}, disk(2, 2));
  FactorizationPair p = pair(S, {"a", "b", "w"}, {"e1", "e2", "0"}, {"a + b*w", "w^2"});
  FactorizationPair q = pair(S, {"c", "d", "z"}, {"e1", "e2", "0"}, {"c + d*z + c^3", "z^2 + c*d^2"});
  WitnessSpan g = witness_general(p, q);
  WitnessSpan w = witness_point(p, q);
  expect_exact(verify_witness(g, p, q));
  EXPECT_EQ(g.phi, w.phi);
  EXPECT_EQ(g.mu, w.mu);
}

TEST(LiftPlot, ZeroPlot) {
  FormalSpace S("S", {"u"}, weil({"e"}, {"e^2"}));
  FactorizationPair l = lift_plot(S, {Polynomial(), Polynomial(), Polynomial()});
  for (const auto& c : l.f().components()) EXPECT_TRUE(c.is_zero());
  for (const auto& c : composite(l).components()) EXPECT_TRUE(c.is_zero());
}

TEST(LiftPlotProperty, SectionOfComposite) {
  Rng rng(41);
  FormalSpace S("S", {"u1", "u2"}, disk(2, 2));
  for (int i = 0; i < 50; ++i) {
    std::vector<Polynomial> plot;
    for (int k = 0; k < 8; ++k) plot.push_back(random_polynomial(rng, S.coordinates(), 4, 5));
    FactorizationPair l = lift_plot(S, plot);
    for (std::size_t k = 0; k < plot.size(); ++k) {
      ASSERT_EQ(composite(l).component(k), S.thickening().reduce(plot[k]));
    }
  }
}

#include <gtest/gtest.h>

#include <cstdlib>

#include "jetkernel/error.hpp"
#include "jetkernel/groebner.hpp"
#include "jetkernel/parse.hpp"
#include "jetkernel/random.hpp"

using namespace jetkernel;

namespace {

Polynomial P(const std::string& s, const std::vector<std::string>& vars = {}) {
  return parse_polynomial(s, vars);
}

// Evaluates at a handful of integer points; an independent check of algebraic
// identities that does not go through the term representation.
bool agree_pointwise(const Polynomial& a, const Polynomial& b, Rng& rng) {
  auto vars = union_vars(a.vars(), b.vars());
  for (int trial = 0; trial < 6; ++trial) {
    std::map<std::string, Rational> pt;
    for (const auto& v : vars) pt[v] = Rational(static_cast<long>(rng.range(-4, 4)));
    if (evaluate(a, pt) != evaluate(b, pt)) return false;
  }
  return true;
}

}  // namespace

TEST(Polynomial, ArithmeticExamples) {
  EXPECT_EQ(P("x + 1") + P("-1"), P("x"));
  EXPECT_EQ(P("t + x") * P("t - x"), P("t^2 - x^2"));
  EXPECT_EQ(P("x^2") * P("x"), P("x^3"));
  EXPECT_TRUE((P("x + y") - P("y + x")).is_zero());
}

TEST(Polynomial, SubstituteExamples) {
  EXPECT_EQ(substitute(P("t^2"), {{"t", P("x + y")}}), P("x^2 + 2*x*y + y^2"));
  EXPECT_TRUE(substitute(P("t"), {{"t", P("0")}}).is_zero());
  EXPECT_EQ(substitute(P("t + x"), {{"t", P("t")}, {"x", P("0")}}), P("t"));
}

TEST(Polynomial, SubstituteMissingVariable) {
  try {
    substitute(P("t + x"), {{"t", P("1")}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::missing_variable);
  }
}

TEST(Polynomial, GrevlexOrderAndPrinting) {
  Polynomial p = P("1 + x + y^2 + x*y + x^2", {"x", "y"});
  // Descending grevlex: x^2 > x*y > y^2 > x > 1.
  EXPECT_EQ(p.to_string(), "x^2 + x*y + y^2 + x + 1");
  EXPECT_EQ(grevlex_compare({1, 0, 1}, {0, 2, 0}), std::strong_ordering::less);
  EXPECT_EQ(P("3/2*x^2*y - x + 1", {"x", "y"}).to_string(), "3/2*x^2*y - x + 1");
}

TEST(Polynomial, ParseErrors) {
  for (const char* bad : {"x +", "2**x", "x^", "1/0", "x^9999999", "(x)"}) {
    try {
      parse_polynomial(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::parse) << bad;
    }
  }
  EXPECT_THROW(parse_polynomial("x + z", {"x"}, true), Error);
}

TEST(PolynomialProperty, RingAxiomsPointwise) {
  Rng rng(7);
  std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 200; ++i) {
    Polynomial a = random_polynomial(rng, vars, 4, 5);
    Polynomial b = random_polynomial(rng, vars, 4, 5);
    Polynomial c = random_polynomial(rng, vars, 3, 4);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * b, b * a);
    ASSERT_TRUE(agree_pointwise(a * b - c, (b * a) - c, rng));
    ASSERT_EQ(parse_polynomial(a.to_string(), vars), a);
  }
}

TEST(PolynomialProperty, DerivativeMatchesPowerRule) {
  // Oracle: the power rule applied to the sparse form.
  Rng rng(11);
  std::vector<std::string> vars{"x", "y"};
  for (int i = 0; i < 100; ++i) {
    Polynomial p = random_polynomial(rng, vars, 5, 6);
    std::map<Monomial, Rational> expected;
    for (const auto& [m, c] : p.to_sparse()) {
      auto it = m.exponents.find("x");
      if (it == m.exponents.end()) continue;
      Monomial d = m;
      if (--d.exponents["x"] == 0) d.exponents.erase("x");
      expected[d] += c * it->second;
    }
    ASSERT_EQ(p.derivative("x"), Polynomial::from_sparse(vars, expected));
  }
}

TEST(Groebner, Examples) {
  GroebnerBasis a = buchberger({P("x^2")});
  ASSERT_EQ(a.basis.size(), 1u);
  EXPECT_EQ(a.basis[0], P("x^2"));
  EXPECT_EQ(a.cofactors[0][0], P("1"));

  GroebnerBasis b = buchberger({P("x^2"), P("x*y"), P("y^3")}, {"x", "y"});
  ASSERT_EQ(b.basis.size(), 3u);
  for (const auto& g : {P("x^2"), P("x*y"), P("y^3")}) {
    EXPECT_NE(std::find(b.basis.begin(), b.basis.end(), g), b.basis.end());
  }

  GroebnerBasis c = buchberger({P("x - y"), P("y^2")}, {"x", "y"});
  ASSERT_EQ(c.basis.size(), 2u);
  EXPECT_NE(std::find(c.basis.begin(), c.basis.end(), P("x - y")), c.basis.end());
  EXPECT_NE(std::find(c.basis.begin(), c.basis.end(), P("y^2")), c.basis.end());
}

TEST(Groebner, DivisionExamples) {
  GroebnerBasis gb = buchberger({P("x^2")});
  Division d1 = divide(P("x^2"), gb);
  EXPECT_EQ(d1.quotients[0], P("1"));
  EXPECT_TRUE(d1.remainder.is_zero());
  Division d2 = divide(P("x^2 + x"), gb);
  EXPECT_EQ(d2.quotients[0], P("1"));
  EXPECT_EQ(d2.remainder, P("x"));
  Division d3 = divide(P("u*x^2"), gb);
  EXPECT_EQ(d3.quotients[0], P("u"));
  EXPECT_TRUE(d3.remainder.is_zero());
}

TEST(GroebnerProperty, BasisInvariants) {
  Rng rng(3);
  std::vector<std::string> vars{"x", "y"};
  for (int i = 0; i < 60; ++i) {
    std::vector<Polynomial> gens;
    for (std::uint64_t j = 0, n = 1 + rng.below(3); j < n; ++j) {
      gens.push_back(random_polynomial(rng, vars, 3, 3));
    }
    GroebnerBasis gb = buchberger(gens, vars);
    // Every generator reduces to zero and every S-polynomial too.
    for (const auto& g : gens) ASSERT_TRUE(reduce(g, gb).is_zero());
    for (std::size_t a = 0; a < gb.basis.size(); ++a) {
      ASSERT_EQ(gb.basis[a].leading_term().coeff, 1);
      for (std::size_t b = a + 1; b < gb.basis.size(); ++b) {
        ASSERT_TRUE(reduce(s_polynomial(gb.basis[a], gb.basis[b]), gb).is_zero());
      }
      // Cofactor identity.
      Polynomial sum;
      for (std::size_t k = 0; k < gens.size(); ++k) sum += gb.cofactors[a][k] * gens[k];
      ASSERT_EQ(sum, gb.basis[a]);
    }
    // Division identity.
    Polynomial p = random_polynomial(rng, vars, 5, 6);
    Division d = divide(p, gb);
    Polynomial back = d.remainder;
    for (std::size_t k = 0; k < gb.basis.size(); ++k) back += d.quotients[k] * gb.basis[k];
    ASSERT_EQ(back, p);
    const Polynomial rem = d.remainder.aligned(vars);
    for (const auto& t : rem.terms()) {
      for (const auto& g : gb.basis) ASSERT_FALSE(divides(g.leading_term().exp, t.exp));
    }
  }
}

TEST(Groebner, PairCapRaisesResourceLimit) {
  GroebnerOptions o;
  o.pair_cap = 1;
  try {
    buchberger({P("x^2 - y"), P("x*y - 1"), P("y^2 - x")}, {"x", "y"}, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource_limit);
  }
}

TEST(Groebner, PairCapFromEnvironment) {
  setenv("JETKERNEL_PAIR_CAP", "17", 1);
  EXPECT_EQ(default_groebner_options().pair_cap, 17u);
  unsetenv("JETKERNEL_PAIR_CAP");
  EXPECT_EQ(default_groebner_options().pair_cap, 100000u);
}

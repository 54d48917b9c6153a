#include "jetkernel/selftest.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "jetkernel/error.hpp"
#include "jetkernel/parse.hpp"
#include "jetkernel/random.hpp"

namespace jetkernel {

namespace {

using Case = std::function<std::string(Rng&)>;

std::vector<std::string> names(const std::string& base, std::size_t n, std::size_t from = 1) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(base + std::to_string(from + i));
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Polynomial var(const std::vector<std::string>& vars, const std::string& v) {
  return Polynomial::variable(vars, v);
}

WeilAlgebra named_weil(const std::vector<std::string>& vars, const std::vector<std::string>& gens,
                       const std::string& name) {
  WeilOptions o;
  o.vars = vars;
  o.name = name;
  std::vector<Polynomial> g;
  for (const auto& s : gens) g.push_back(parse_polynomial(s, vars, true));
  return make_weil(vars.size(), g, o);
}

const std::vector<WeilAlgebra>& algebra_pool() {
  static const std::vector<WeilAlgebra> pool = [] {
    std::vector<WeilAlgebra> p;
    p.push_back(disk(1, 1));
    p.push_back(disk(1, 2));
    p.push_back(disk(1, 3));
    p.push_back(disk(2, 1));
    p.push_back(disk(2, 2));
    p.push_back(disk(3, 1));
    p.push_back(named_weil({"x", "y"}, {"x^2", "x*y", "y^3"}, "A3"));
    p.push_back(named_weil({"x", "y"}, {"x^2", "y^2"}, "A4"));
    return p;
  }();
  return pool;
}

const WeilAlgebra& d1_algebra() {
  static const WeilAlgebra a = named_weil({"x"}, {"x^2"}, "D1(1)");
  return a;
}

Rational binomial_oracle(std::size_t n, std::size_t k) {
  // Pascal's triangle.
  std::vector<std::vector<Rational>> c(n + 1, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return k <= n ? c[n][k] : Rational(0);
}

std::string expect(bool ok, const std::string& what) { return ok ? std::string() : what; }

// Checks a span, or, in fault mode, perturbs phi and reports the identity the
// re-verification flags.
std::string check_span(const WitnessSpan& span, const FactorizationPair& p,
                       const FactorizationPair& q, bool inject) {
  if (!all_exact(span.verification)) return "span returned unverified: " + first_violation(span.verification);
  WitnessSpan s = span;
  if (inject) {
    std::vector<Polynomial> comps = s.phi.components();
    comps[0] += Polynomial::constant(s.w.coordinates(), Rational(1));
    s.phi = FormalMorphism(s.w, s.phi.target(), comps);
  }
  VerificationRecord r = verify_witness(s, p, q);
  if (!all_exact(r)) return "violated identity: " + first_violation(r);
  return {};
}

FormalSpace random_source(Rng& rng, std::size_t max_params) {
  const auto& pool = algebra_pool();
  WeilAlgebra a = pool[rng.below(pool.size())];
  return FormalSpace("S", names("u", rng.below(max_params + 1)), a);
}

// ---------------------------------------------------------------- hadamard

std::string hadamard_case(Rng& rng) {
  auto x = names("x", rng.below(4));
  auto y = names("y", 1 + rng.below(3));
  auto all = concat(x, y);
  Polynomial f = random_polynomial(rng, all, 6, 8);
  for (unsigned l = 0; l <= 4; ++l) {
    HadamardExpansion h = hadamard_expand(f, x, y, l);
    if (!(h.reconstruct() == f)) return "reconstruction fails at order " + std::to_string(l);
    for (const auto& [tau, r] : h.remainders) {
      if (order(tau) != l + 1) return "remainder index of wrong order";
    }
    std::map<std::string, Polynomial> y0;
    for (const auto& v : y) y0.emplace(v, Polynomial(x));
    for (unsigned s = 0; s <= l; ++s) {
      for (const auto& sigma : monomials_of_degree(y.size(), s)) {
        Polynomial d = f;
        Rational fact(1);
        for (std::size_t i = 0; i < y.size(); ++i) {
          for (std::uint32_t r = 0; r < sigma[i]; ++r) {
            d = d.derivative(y[i]);
            fact *= r + 1;
          }
        }
        Polynomial expected = substitute_partial(d, y0).scaled(1 / fact);
        if (!(h.taylor(sigma) == expected)) {
          return "Taylor coefficient " + format_multi_index(sigma) + " differs at order " +
                 std::to_string(l);
        }
      }
    }
  }
  return {};
}

std::vector<Case> hadamard_cases() { return std::vector<Case>(500, hadamard_case); }

// -------------------------------------------------------------------- weil

std::vector<Case> weil_cases() {
  std::vector<Case> cases;
  for (std::size_t d = 0; d <= 5; ++d) {
    for (unsigned k = 0; k <= 5; ++k) {
      cases.push_back([d, k](Rng&) {
        return expect(Rational(static_cast<long>(disk(d, k).dim())) == binomial_oracle(d + k, d),
                      "dim disk(" + std::to_string(d) + "," + std::to_string(k) + ")");
      });
    }
  }
  for (int i = 0; i < 500; ++i) {
    cases.push_back([](Rng& rng) {
      const WeilAlgebra& A = rng.pick(algebra_pool());
      unsigned deg = 2 * A.nilpotency_order() + 2;
      Polynomial a = random_polynomial(rng, A.vars(), deg, 6);
      Polynomial b = random_polynomial(rng, A.vars(), deg, 6);
      if (!(A.reduce(a * b) == A.reduce(A.reduce(a) * A.reduce(b)))) return std::string("NF(ab)");
      return expect(A.reduce(a + b) == A.reduce(a) + A.reduce(b), "NF(a+b)");
    });
  }
  for (int i = 0; i < 200; ++i) {
    cases.push_back([](Rng& rng) {
      const WeilAlgebra& A = rng.pick(algebra_pool());
      auto vars = concat(A.vars(), names("u", rng.below(2)));
      Polynomial p(vars);
      for (const auto& h : A.generators()) p += h * random_polynomial(rng, vars, 3, 4);
      auto mu = ideal_decompose(p, A);
      Polynomial sum;
      for (std::size_t j = 0; j < mu.size(); ++j) sum += A.generators()[j] * mu[j];
      return expect(mu.size() == A.generators().size() && sum == p, "ideal_decompose roundtrip");
    });
  }
  for (int i = 0; i < 50; ++i) {
    cases.push_back([](Rng& rng) {
      const WeilAlgebra& A = rng.pick(algebra_pool());
      const WeilAlgebra& B = rng.pick(algebra_pool());
      return expect(weil_tensor(A, B).dim() == A.dim() * B.dim(), "tensor dimension");
    });
  }
  return cases;
}

// -------------------------------------------------------------- witness_d1

std::vector<Case> witness_d1_cases(bool inject) {
  std::vector<Case> cases;
  const WeilAlgebra& A = d1_algebra();
  FormalSpace S("D", {}, A);
  cases.push_back([=](Rng&) {
    std::vector<std::string> vc{"t", "v1"};
    FormalSpace V = FormalSpace::cartesian("V", vc);
    FormalMorphism iota = FormalMorphism::parse(S, V, {"x", "0"});
    FactorizationPair p(iota, FormalMorphism::parse(V, rk_space(1), {"t + v1"}));
    FactorizationPair q(iota, FormalMorphism::parse(V, rk_space(1), {"t + v1 + t^2"}));
    WitnessSpan span = witness_d1(p, q);
    const auto& wc = span.w.coordinates();
    if (!(span.delta[0] == parse_polynomial("x^2")) || !(span.mu[0][0] == parse_polynomial("1"))) {
      return std::string("delta = t^2, mu = 1 expected");
    }
    if (!(span.phi.component(0) == parse_polynomial("a_t + a_v1 + b_v1 + j1", wc, true))) {
      return "phi = t + x + x' + j expected, got " + span.phi.component(0).to_string();
    }
    return check_span(span, p, q, inject);
  });
  cases.push_back([=](Rng&) {
    std::vector<std::string> vc{"t", "v1"};
    FormalSpace V = FormalSpace::cartesian("V", vc);
    FormalMorphism iota = FormalMorphism::parse(S, V, {"x", "0"});
    FactorizationPair p(iota, FormalMorphism::parse(V, rk_space(1), {"t^2"}));
    FactorizationPair q(iota, FormalMorphism::parse(V, rk_space(1), {"t^2 + t^3"}));
    WitnessSpan span = witness_d1(p, q);
    if (!(span.delta[0] == parse_polynomial("x^3")) || !(span.mu[0][0] == parse_polynomial("x"))) {
      return std::string("delta = t^3, mu = t expected");
    }
    return check_span(span, p, q, inject);
  });
  for (int i = 0; i < 98; ++i) {
    cases.push_back([=](Rng& rng) {
      const std::size_t K = 4;
      auto random_iota = [&](const FormalSpace& V, std::size_t& pivot, Rational& a0, Rational& b0) {
        std::vector<Polynomial> comps;
        pivot = rng.below(V.dim());
        for (std::size_t j = 0; j < V.dim(); ++j) {
          Rational a = rng.rational();
          Rational b = j == pivot ? rng.nonzero_rational() : rng.rational();
          if (j == pivot) {
            a0 = a;
            b0 = b;
          }
          comps.push_back(Polynomial::constant(S.coordinates(), a) + var(S.coordinates(), "x").scaled(b));
        }
        return FormalMorphism(S, V, comps);
      };
      auto vc = names("v", 1 + rng.below(3));
      FormalSpace V = FormalSpace::cartesian("V", vc);
      std::size_t pivot;
      Rational a0, b0;
      FormalMorphism iota = random_iota(V, pivot, a0, b0);
      std::vector<Polynomial> f;
      for (std::size_t k = 0; k < K; ++k) f.push_back(random_polynomial(rng, vc, 5, 6));
      FactorizationPair p(iota, FormalMorphism(V, rk_space(K), f));

      auto wc = names("w", 1 + rng.below(3));
      FormalSpace V2 = FormalSpace::cartesian("V2", wc);
      const bool same = rng.coin();
      const auto& tc = same ? vc : wc;
      std::size_t piv2 = pivot;
      Rational a2 = a0, b2 = b0;
      FormalMorphism iota2 = same ? iota : random_iota(V2, piv2, a2, b2);
      // lambda o iota2 = x
      Polynomial lambda = (var(tc, tc[piv2]) - Polynomial::constant(tc, a2)).scaled(1 / b2);
      FormalMorphism c = composite(p);
      std::vector<Polynomial> f2;
      for (std::size_t k = 0; k < K; ++k) {
        Polynomial g = substitute(c.component(k), {{"x", lambda}}, &tc);
        g += lambda * lambda * random_polynomial(rng, tc, 3, 4);
        if (tc.size() >= 2) {
          // m vanishes along the image line of the second embedding.
          const std::size_t o = (piv2 + 1) % tc.size();
          const Polynomial& ic = (same ? iota : iota2).component(o);
          const Rational bo = ic.coefficient(Polynomial(S.coordinates()).monomial_of({1}));
          Polynomial m = var(tc, tc[o]) - Polynomial::constant(tc, ic.constant_term()) - lambda.scaled(bo);
          g += m * random_polynomial(rng, tc, 2, 3);
        }
        f2.push_back(std::move(g));
      }
      FactorizationPair q(iota2, FormalMorphism(same ? V : V2, rk_space(K), f2));
      if (!equal_composites(p, q)) return std::string("generator produced unequal composites");
      return check_span(witness_d1(p, q), p, q, inject);
    });
  }
  return cases;
}

// ----------------------------------------------------------- witness_point

// Rectified pair over S with middle coordinates [param copies, t.., v..].
struct RectifiedInstance {
  FactorizationPair p;
  FactorizationPair q;
};

RectifiedInstance rectified_instance(Rng& rng, const FormalSpace& S, std::size_t K, bool perturb) {
  const std::size_t q0 = S.params().size();
  const std::size_t d = S.thickening().embedding_dim();
  auto base = concat(names("p", q0), names("t", d));
  auto make_middle = [&](const std::string& name, std::size_t extra) {
    return FormalSpace::cartesian(name, concat(base, names("v", extra)));
  };
  auto rect = [&](const FormalSpace& V) {
    std::vector<Polynomial> comps;
    const auto& sc = S.coordinates();
    for (std::size_t i = 0; i < V.dim(); ++i) comps.push_back(i < sc.size() ? var(sc, sc[i]) : Polynomial(sc));
    return FormalMorphism(S, V, comps);
  };
  FormalSpace V = make_middle("V", rng.below(3));
  FormalSpace V2 = make_middle("V2", rng.below(3));
  const auto& vc = V.coordinates();
  const auto& wc = V2.coordinates();

  std::map<std::string, Polynomial> eps_to_t;
  for (std::size_t i = 0; i < d; ++i) eps_to_t.emplace(S.thickening().vars()[i], var(wc, base[q0 + i]));
  std::map<std::string, Polynomial> drop_v;
  for (std::size_t j = base.size(); j < vc.size(); ++j) drop_v.emplace(vc[j], Polynomial(wc));

  std::vector<Polynomial> f, f2;
  for (std::size_t k = 0; k < K; ++k) {
    f.push_back(random_polynomial(rng, vc, 3, 6));
    Polynomial g = substitute_partial(f.back(), drop_v).aligned(wc);
    for (const auto& h : S.thickening().generators()) {
      g += substitute(h, eps_to_t, &wc) * random_polynomial(rng, wc, 2, 3);
    }
    for (std::size_t j = base.size(); j < wc.size(); ++j) g += var(wc, wc[j]) * random_polynomial(rng, wc, 2, 3);
    f2.push_back(std::move(g));
  }
  if (perturb) {
    const std::size_t k = rng.below(K);
    if (d > 0) {
      f2[k] += var(wc, base[q0 + rng.below(d)]).scaled(rng.nonzero_rational());
    } else {
      f2[k] += Polynomial::constant(wc, rng.nonzero_rational());
    }
  }
  return {FactorizationPair(rect(V), FormalMorphism(V, rk_space(K), f)),
          FactorizationPair(rect(V2), FormalMorphism(V2, rk_space(K), f2))};
}

std::vector<Case> witness_point_cases(bool inject) {
  static const std::vector<WeilAlgebra> algebras = {
      disk(1, 2), disk(2, 2), named_weil({"x", "y"}, {"x^2", "x*y", "y^3"}, "A3")};
  std::vector<Case> cases;
  for (int i = 0; i < 100; ++i) {
    const bool negative = i % 10 == 9;
    cases.push_back([=](Rng& rng) {
      FormalSpace S("D", {}, algebras[static_cast<std::size_t>(i) % algebras.size()]);
      RectifiedInstance inst = rectified_instance(rng, S, 3, negative);
      if (!negative) return check_span(witness_point(inst.p, inst.q), inst.p, inst.q, inject);
      try {
        witness_point(inst.p, inst.q);
      } catch (const Error& e) {
        return expect(e.kind() == ErrorKind::not_in_ideal, "expected not-in-ideal, got " +
                                                               std::string(to_string(e.kind())));
      }
      return std::string("perturbed instance was accepted");
    });
  }
  return cases;
}

// --------------------------------------------------------- witness_general

std::vector<Case> witness_general_cases(bool inject) {
  std::vector<Case> cases;
  for (int i = 0; i < 50; ++i) {
    cases.push_back([=](Rng& rng) {
      const auto& pool = algebra_pool();
      FormalSpace S("S", names("u", 1 + rng.below(2)), pool[rng.below(pool.size())]);
      RectifiedInstance inst = rectified_instance(rng, S, 3, false);
      return check_span(witness_general(inst.p, inst.q), inst.p, inst.q, inject);
    });
  }
  for (int i = 0; i < 10; ++i) {
    cases.push_back([=](Rng& rng) {
      FormalSpace S("D", {}, disk(1, 1));
      RectifiedInstance inst = rectified_instance(rng, S, 3, false);
      WitnessSpan a = witness_point(inst.p, inst.q);
      WitnessSpan b = witness_d1(inst.p, inst.q);
      if (!(a.phi == b.phi) || !(a.alpha == b.alpha) || !(a.alpha_prime == b.alpha_prime) ||
          !(a.mu == b.mu) || !(a.delta == b.delta)) {
        return std::string("witness_point and witness_d1 disagree");
      }
      return check_span(a, inst.p, inst.q, inject);
    });
  }
  return cases;
}

// ------------------------------------------------------------- equivalence

std::vector<Case> equivalence_cases() {
  std::vector<Case> cases;
  for (int i = 0; i < 200; ++i) {
    const bool perturbed = i % 2 == 1;
    cases.push_back([=](Rng& rng) {
      const std::size_t K = 3;
      FormalSpace S = random_source(rng, 2);
      const auto& sc = S.coordinates();
      auto vc = names("v", 1 + rng.below(3));
      FormalSpace V = FormalSpace::cartesian("V", vc);
      std::vector<Polynomial> iota;
      for (std::size_t j = 0; j < vc.size(); ++j) {
        Polynomial c = random_polynomial(rng, sc, 2, 3);
        if (j < S.params().size() && rng.coin()) c += var(sc, sc[j]);
        iota.push_back(c);
      }
      std::vector<Polynomial> f;
      for (std::size_t k = 0; k < K; ++k) f.push_back(random_polynomial(rng, vc, 3, 5));
      FactorizationPair p(FormalMorphism(S, V, iota), FormalMorphism(V, rk_space(K), f));
      FormalMorphism c = composite(p);

      // iota2 carries every source coordinate in some slot; the other slots
      // hold arbitrary functions g_j.
      const std::size_t n2 = sc.size() + rng.below(3);
      auto wc = names("w", n2);
      std::vector<std::size_t> slots(n2);
      for (std::size_t j = 0; j < n2; ++j) slots[j] = j;
      for (std::size_t j = n2; j > 1; --j) std::swap(slots[j - 1], slots[rng.below(j)]);
      std::vector<Polynomial> iota2(n2, Polynomial(sc));
      std::map<std::string, Polynomial> src_to_w;
      for (std::size_t i2 = 0; i2 < sc.size(); ++i2) {
        iota2[slots[i2]] = var(sc, sc[i2]);
        src_to_w.emplace(sc[i2], var(wc, wc[slots[i2]]));
      }
      std::vector<std::pair<std::size_t, Polynomial>> others;
      for (std::size_t i2 = sc.size(); i2 < n2; ++i2) {
        Polynomial g = random_polynomial(rng, sc, 2, 3);
        iota2[slots[i2]] = g;
        others.emplace_back(slots[i2], substitute(g, src_to_w, &wc));
      }
      std::vector<Polynomial> f2;
      for (std::size_t k = 0; k < K; ++k) {
        Polynomial g = substitute(c.component(k), src_to_w, &wc);
        for (const auto& [slot, gw] : others) {
          g += (var(wc, wc[slot]) - gw) * random_polynomial(rng, wc, 1, 2);
        }
        for (const auto& h : S.thickening().generators()) {
          g += substitute(h, src_to_w, &wc) * random_polynomial(rng, wc, 1, 2);
        }
        f2.push_back(std::move(g));
      }
      std::size_t bumped = 0;
      if (perturbed) {
        bumped = rng.below(K);
        f2[bumped] += Polynomial::constant(wc, rng.nonzero_rational());
      }
      FormalSpace V2 = FormalSpace::cartesian("V2", wc);
      FactorizationPair q(FormalMorphism(S, V2, iota2), FormalMorphism(V2, rk_space(K), f2));
      EquivalenceDecision dec = decide_equivalence(p, q);
      if (perturbed) {
        if (dec.equivalent) return std::string("perturbed pair classified equivalent");
        return expect(dec.first_difference == bumped, "wrong first differing component");
      }
      if (!dec.equivalent || !dec.chain) return std::string("equal composites classified inequivalent");
      if (dec.chain->steps.size() != 6) return std::string("expected a six-step chain");
      VerificationRecord r = verify_chain(*dec.chain, p, q);
      if (!all_exact(r)) return "chain violates " + first_violation(r);
      for (const auto& s : dec.chain->steps) {
        if (!equal_composites(s.from, p)) return std::string("composite changes along the chain");
      }
      return std::string();
    });
  }
  return cases;
}

// --------------------------------------------------------------- lift_plot

std::vector<Case> lift_plot_cases() {
  std::vector<Case> cases;
  for (int i = 0; i < 200; ++i) {
    cases.push_back([](Rng& rng) {
      FormalSpace S = random_source(rng, 2);
      std::vector<Polynomial> plot;
      for (int k = 0; k < 8; ++k) plot.push_back(random_polynomial(rng, S.coordinates(), 4, 5));
      FactorizationPair lifted = lift_plot(S, plot);
      FormalMorphism c = composite(lifted);
      for (std::size_t k = 0; k < plot.size(); ++k) {
        if (!(c.component(k) == S.thickening().reduce(plot[k]))) {
          return "composite differs in component " + std::to_string(k);
        }
      }
      return std::string();
    });
  }
  return cases;
}

// -------------------------------------------------------------------- jets

TruncatedProPlot random_family(Rng& rng, const FormalSpace& S, std::vector<std::size_t> dims) {
  std::vector<Polynomial> top;
  for (std::size_t c = 0; c < dims.back(); ++c) {
    top.push_back(S.thickening().reduce(random_polynomial(rng, S.coordinates(), 3, 4)));
  }
  return plot_to_cone(FormalMorphism(S, rk_space(dims.back()), top), dims);
}

std::vector<std::size_t> random_dims(Rng& rng) {
  if (rng.coin()) return rinf_dims(2 + rng.below(5));
  return jet_dims(1 + rng.below(2), 1 + rng.below(2), static_cast<unsigned>(1 + rng.below(3)));
}

std::vector<Case> jet_cases() {
  std::vector<Case> cases;
  for (std::size_t n = 0; n <= 5; ++n) {
    for (unsigned k = 0; k <= 5; ++k) {
      cases.push_back([n, k](Rng&) {
        for (std::size_t m = 1; m <= 3; ++m) {
          Rational expected = binomial_oracle(n + k, n) * static_cast<long>(m);
          JetSpace J(n, m, k);
          if (Rational(static_cast<long>(J.fiber_dim())) != expected ||
              Rational(static_cast<long>(jet_fiber_dim(n, m, k))) != expected) {
            return std::string("fiber dimension");
          }
        }
        return std::string();
      });
    }
  }
  for (int i = 0; i < 100; ++i) {
    cases.push_back([](Rng& rng) {
      auto x = names("x", 1 + rng.below(2));
      std::vector<Polynomial> s;
      for (std::size_t a = 0, m = 1 + rng.below(2); a < m; ++a) s.push_back(random_polynomial(rng, x, 5, 6));
      std::vector<Rational> base;
      for (std::size_t j = 0; j < x.size(); ++j) base.push_back(rng.rational());
      unsigned k = static_cast<unsigned>(rng.below(4));
      JetPoint hi = prolong(s, x, k + 1, base);
      JetPoint lo = prolong(s, x, k, base);
      JetPoint pr = project(hi);
      return expect(pr.values == lo.values && pr.base == lo.base && pr.space.k() == k,
                    "project o prolong differs from prolong");
    });
  }
  for (int i = 0; i < 200; ++i) {
    cases.push_back([](Rng& rng) {
      const std::size_t n = 1 + rng.below(3);
      const unsigned k = static_cast<unsigned>(rng.below(4));
      WeilAlgebra D = disk(n, k);
      std::vector<Polynomial> el;
      for (std::size_t a = 0, m = 1 + rng.below(2); a < m; ++a) {
        el.push_back(D.reduce(random_polynomial(rng, D.vars(), k + 1, 6)));
      }
      JetPoint j = disk_section_to_jet(el, D);
      if (!(jet_to_disk_section(j, D) == el)) return std::string("disk -> jet -> disk");
      JetPoint r{j.space, j.base, {}};
      for (std::size_t c = 0; c < j.values.size(); ++c) r.values.push_back(rng.rational());
      return expect(disk_section_to_jet(jet_to_disk_section(r, D), D).values == r.values,
                    "jet -> disk -> jet");
    });
  }
  for (int i = 0; i < 100; ++i) {
    cases.push_back([](Rng& rng) {
      FormalSpace S = random_source(rng, 2);
      TruncatedProPlot fam = random_family(rng, S, random_dims(rng));
      FormalMorphism plot = cone_to_plot(fam);
      TruncatedProPlot back = plot_to_cone(plot, fam.dims);
      if (!(back.levels == fam.levels)) return std::string("plot_to_cone o cone_to_plot");
      return expect(cone_to_plot(back) == plot, "cone_to_plot o plot_to_cone");
    });
  }
  for (int i = 0; i < 20; ++i) {
    cases.push_back([](Rng& rng) {
      FormalSpace S = random_source(rng, 1);
      TruncatedProPlot fam = random_family(rng, S, random_dims(rng));
      const std::size_t L = 1 + rng.below(fam.levels.size() - 1);
      auto& c = fam.levels[L][rng.below(fam.dims[L - 1])];
      c += Polynomial::constant(S.coordinates(), rng.nonzero_rational());
      if (first_incompatible_level(fam) != L) return std::string("wrong failing level");
      try {
        cone_to_plot(fam);
      } catch (const Error& e) {
        return expect(e.kind() == ErrorKind::incompatible_cone, "wrong error kind");
      }
      return std::string("incompatible family accepted");
    });
  }
  for (int i = 0; i < 50; ++i) {
    cases.push_back([](Rng& rng) {
      FormalSpace S = random_source(rng, 2);
      const unsigned K = static_cast<unsigned>(rng.below(4));
      TruncatedProPlot fam = random_family(rng, S, jet_dims(1 + rng.below(2), 1 + rng.below(2), K));
      JetLift lift = lift_jet_plot(fam);
      if (!std::all_of(lift.level_ok.begin(), lift.level_ok.end(), [](bool b) { return b; })) {
        return std::string("composite misses a level");
      }
      return expect(composite(lift.pair).components() == fam.levels.back(), "top level");
    });
  }
  return cases;
}

std::vector<Case> cases_for(Suite suite, bool inject) {
  switch (suite) {
    case Suite::hadamard: return hadamard_cases();
    case Suite::weil: return weil_cases();
    case Suite::witness_d1: return witness_d1_cases(inject);
    case Suite::witness_point: return witness_point_cases(inject);
    case Suite::witness_general: return witness_general_cases(inject);
    case Suite::equivalence: return equivalence_cases();
    case Suite::lift_plot: return lift_plot_cases();
    case Suite::jets: return jet_cases();
  }
  return {};
}

}  // namespace

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s = {Suite::hadamard,        Suite::weil,
                                       Suite::witness_d1,      Suite::witness_point,
                                       Suite::witness_general, Suite::equivalence,
                                       Suite::lift_plot,       Suite::jets};
  return s;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::hadamard: return "hadamard";
    case Suite::weil: return "weil";
    case Suite::witness_d1: return "witness_d1";
    case Suite::witness_point: return "witness_point";
    case Suite::witness_general: return "witness_general";
    case Suite::equivalence: return "equivalence";
    case Suite::lift_plot: return "lift_plot";
    case Suite::jets: return "jets";
  }
  return "unknown";
}

SuiteResult run_suite(Suite suite, std::uint64_t seed, const SelftestOptions& options) {
  std::vector<Case> cases = cases_for(suite, options.inject_fault);
  const auto stream = static_cast<std::uint64_t>(suite) + 1;
  std::vector<std::string> outcome(cases.size());
  for_each_index(cases.size(), options.execution, [&](std::size_t i) {
    Rng rng(mix_seed(seed, stream, i));
    try {
      outcome[i] = cases[i](rng);
    } catch (const Error& e) {
      outcome[i] = std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
      outcome[i] = std::string("exception: ") + e.what();
    }
  });
  SuiteResult r{suite_name(suite), cases.size(), 0, {}};
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i].empty()) {
      ++r.passed;
    } else {
      r.failures.push_back("case " + std::to_string(i) + ": " + outcome[i]);
    }
  }
  return r;
}

bool SelftestReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

SelftestReport selftest(std::uint64_t seed, const SelftestOptions& options) {
  SelftestReport r;
  r.seed = seed;
  for (Suite s : all_suites()) r.suites.push_back(run_suite(s, seed, options));
  return r;
}

Json to_json(const SelftestReport& report, std::size_t max_failures) {
  Json j;
  j["prng"] = Rng::algorithm;
  j["seed"] = report.seed;
  Json suites = Json::array();
  std::size_t cases = 0, passed = 0;
  for (const auto& s : report.suites) {
    Json e;
    e["name"] = s.name;
    e["cases"] = s.cases;
    e["passed"] = s.passed;
    e["failed"] = s.cases - s.passed;
    Json f = Json::array();
    for (std::size_t i = 0; i < s.failures.size() && i < max_failures; ++i) f.push_back(s.failures[i]);
    e["failures"] = f;
    suites.push_back(e);
    cases += s.cases;
    passed += s.passed;
  }
  j["suites"] = suites;
  j["total_cases"] = cases;
  j["total_passed"] = passed;
  j["status"] = report.ok() ? "pass" : "fail";
  return j;
}

}  // namespace jetkernel

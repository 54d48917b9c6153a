#include "jetkernel/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <string>

#include "jetkernel/error.hpp"

namespace jetkernel {

namespace {

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Exponents quotient_exp(const Exponents& num, const Exponents& den) {
  Exponents out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) out[i] = num[i] - den[i];
  return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

// Division of a polynomial by divisors sharing its exact variable list.
Division divide_same_vars(const Polynomial& p, const std::vector<Polynomial>& divisors) {
  const auto& vars = p.vars();
  Division out;
  out.quotients.assign(divisors.size(), Polynomial(vars));
  std::vector<std::vector<Term>> qterms(divisors.size());
  std::vector<Term> rterms;
  Polynomial rest = p;
  while (!rest.is_zero()) {
    const Term lt = rest.leading_term();
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const Term& dl = divisors[i].leading_term();
      if (!divides(dl.exp, lt.exp)) continue;
      Exponents e = quotient_exp(lt.exp, dl.exp);
      Rational c = lt.coeff / dl.coeff;
      rest -= divisors[i].times_monomial(e, c);
      qterms[i].push_back({std::move(e), std::move(c)});
      reduced = true;
      break;
    }
    if (!reduced) {
      rterms.push_back(lt);
      rest -= Polynomial::monomial(vars, lt.exp, lt.coeff);
    }
  }
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    out.quotients[i] = Polynomial::from_terms(vars, std::move(qterms[i]));
  }
  out.remainder = Polynomial::from_terms(vars, std::move(rterms));
  return out;
}

std::size_t pair_cap_from_env() {
  const char* env = std::getenv("JETKERNEL_PAIR_CAP");
  if (env == nullptr || *env == '\0') return 100000;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return 100000;
  return static_cast<std::size_t>(v);
}

}  // namespace

GroebnerOptions default_groebner_options() {
  GroebnerOptions options;
  options.pair_cap = pair_cap_from_env();
  return options;
}

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b) {
  const Term& la = a.leading_term();
  const Term& lb = b.leading_term();
  Exponents l = lcm(la.exp, lb.exp);
  return a.times_monomial(quotient_exp(l, la.exp), Rational(1) / la.coeff) -
         b.times_monomial(quotient_exp(l, lb.exp), Rational(1) / lb.coeff);
}

GroebnerBasis buchberger(const std::vector<Polynomial>& generators,
                         const std::vector<std::string>& vars, const GroebnerOptions& options) {
  GroebnerBasis gb;
  gb.vars = vars;
  if (gb.vars.empty()) {
    for (const auto& g : generators) gb.vars = union_vars(gb.vars, g.vars());
  }
  const auto& V = gb.vars;
  const std::size_t n = generators.size();
  for (const auto& g : generators) gb.generators.push_back(g.aligned(V));

  auto unit_row = [&](std::size_t i) {
    std::vector<Polynomial> row(n, Polynomial(V));
    row[i] = Polynomial::constant(V, Rational(1));
    return row;
  };

  std::vector<Polynomial> G;
  std::vector<std::vector<Polynomial>> C;
  for (std::size_t i = 0; i < n; ++i) {
    if (gb.generators[i].is_zero()) continue;
    G.push_back(gb.generators[i]);
    C.push_back(unit_row(i));
  }

  // Reduces `s` (with cofactor row `row`) fully against G, tracking cofactors.
  auto reduce_tracked = [&](Polynomial s, std::vector<Polynomial> row) {
    Division d = divide_same_vars(s, G);
    for (std::size_t k = 0; k < G.size(); ++k) {
      if (d.quotients[k].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) row[i] -= d.quotients[k] * C[k][i];
    }
    return std::make_pair(std::move(d.remainder), std::move(row));
  };

  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < G.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  while (!pairs.empty()) {
    if (pairs.size() > options.pair_cap) {
      throw Error(ErrorKind::resource_limit,
                  "Buchberger pair queue exceeded cap of " + std::to_string(options.pair_cap));
    }
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const Term& li = G[i].leading_term();
    const Term& lj = G[j].leading_term();
    if (coprime(li.exp, lj.exp)) continue;
    Exponents l = lcm(li.exp, lj.exp);
    Exponents ei = quotient_exp(l, li.exp);
    Exponents ej = quotient_exp(l, lj.exp);
    Rational ci = Rational(1) / li.coeff;
    Rational cj = Rational(1) / lj.coeff;
    Polynomial s = G[i].times_monomial(ei, ci) - G[j].times_monomial(ej, cj);
    std::vector<Polynomial> row(n, Polynomial(V));
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = C[i][k].times_monomial(ei, ci) - C[j][k].times_monomial(ej, cj);
    }
    auto [r, rrow] = reduce_tracked(std::move(s), std::move(row));
    if (r.is_zero()) continue;
    G.push_back(std::move(r));
    C.push_back(std::move(rrow));
    for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace_back(k, G.size() - 1);
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<bool> keep(G.size(), true);
  for (std::size_t a = 0; a < G.size(); ++a) {
    for (std::size_t b = 0; b < G.size() && keep[a]; ++b) {
      if (a == b || !keep[b]) continue;
      const auto& ea = G[a].leading_term().exp;
      const auto& eb = G[b].leading_term().exp;
      if (divides(eb, ea) && (ea != eb || b < a)) keep[a] = false;
    }
  }
  std::vector<Polynomial> M;
  std::vector<std::vector<Polynomial>> MC;
  for (std::size_t a = 0; a < G.size(); ++a) {
    if (!keep[a]) continue;
    M.push_back(G[a]);
    MC.push_back(C[a]);
  }

  // Auto-reduce each element against the others; leading terms are unchanged.
  for (std::size_t a = 0; a < M.size(); ++a) {
    const Term lt = M[a].leading_term();
    Polynomial tail = M[a] - Polynomial::monomial(V, lt.exp, lt.coeff);
    std::vector<Polynomial> others;
    std::vector<std::size_t> idx;
    for (std::size_t b = 0; b < M.size(); ++b) {
      if (b == a) continue;
      others.push_back(M[b]);
      idx.push_back(b);
    }
    Division d = divide_same_vars(tail, others);
    M[a] = Polynomial::monomial(V, lt.exp, lt.coeff) + d.remainder;
    for (std::size_t k = 0; k < others.size(); ++k) {
      if (d.quotients[k].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) MC[a][i] -= d.quotients[k] * MC[idx[k]][i];
    }
  }

  std::vector<std::size_t> order(M.size());
  for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grevlex_compare(M[a].leading_term().exp, M[b].leading_term().exp) ==
           std::strong_ordering::less;
  });
  for (std::size_t a : order) {
    Rational inv = Rational(1) / M[a].leading_term().coeff;
    gb.basis.push_back(M[a].scaled(inv));
    std::vector<Polynomial> row;
    for (auto& c : MC[a]) row.push_back(c.scaled(inv));
    gb.cofactors.push_back(std::move(row));
  }
  return gb;
}

Division divide(const Polynomial& p, const std::vector<Polynomial>& divisors,
                const std::vector<std::string>& vars) {
  std::vector<std::string> extra;
  for (const auto& v : p.used_vars()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) extra.push_back(v);
  }
  std::vector<Polynomial> divs;
  for (const auto& d : divisors) divs.push_back(d.aligned(vars));
  if (extra.empty()) return divide_same_vars(p.aligned(vars), divs);

  // Block order: slice p by its exponent in the coefficient variables.
  const auto all = union_vars(vars, extra);
  const Polynomial pa = p.aligned(all);
  const std::size_t nb = vars.size();
  std::map<Exponents, std::vector<Term>> slices;
  for (const auto& t : pa.terms()) {
    Exponents ext(t.exp.begin() + static_cast<std::ptrdiff_t>(nb), t.exp.end());
    Exponents base(t.exp.begin(), t.exp.begin() + static_cast<std::ptrdiff_t>(nb));
    slices[ext].push_back({std::move(base), t.coeff});
  }
  Division out;
  out.quotients.assign(divisors.size(), Polynomial(all));
  out.remainder = Polynomial(all);
  for (auto& [ext, terms] : slices) {
    Division d = divide_same_vars(Polynomial::from_terms(vars, std::move(terms)), divs);
    Exponents shift(nb, 0);
    shift.insert(shift.end(), ext.begin(), ext.end());
    for (std::size_t i = 0; i < divs.size(); ++i) {
      out.quotients[i] += d.quotients[i].aligned(all).times_monomial(shift, Rational(1));
    }
    out.remainder += d.remainder.aligned(all).times_monomial(shift, Rational(1));
  }
  return out;
}

Division divide(const Polynomial& p, const GroebnerBasis& gb) {
  return divide(p, gb.basis, gb.vars);
}

Polynomial reduce(const Polynomial& p, const GroebnerBasis& gb) {
  return divide(p, gb).remainder;
}

std::vector<Polynomial> lift_to_generators(const std::vector<Polynomial>& quotients,
                                           const GroebnerBasis& gb) {
  std::vector<Polynomial> out(gb.generators.size(), Polynomial(gb.vars));
  for (std::size_t j = 0; j < quotients.size(); ++j) {
    if (quotients[j].is_zero()) continue;
    for (std::size_t i = 0; i < gb.generators.size(); ++i) {
      out[i] += quotients[j] * gb.cofactors[j][i];
    }
  }
  return out;
}

}  // namespace jetkernel

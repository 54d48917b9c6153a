#include "jetkernel/hadamard.hpp"

#include <algorithm>

#include "jetkernel/error.hpp"

namespace jetkernel {

std::uint32_t order(const MultiIndex& sigma) { return total_degree(sigma); }

std::string format_multi_index(const MultiIndex& sigma) {
  std::string out = "[";
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(sigma[i]);
  }
  return out + "]";
}

Polynomial HadamardExpansion::reconstruct() const {
  const auto vars = union_vars(x_vars, y_vars);
  const std::size_t nx = x_vars.size();
  auto y_power = [&](const MultiIndex& s) {
    Exponents e(vars.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) e[nx + i] = s[i];
    return e;
  };
  Polynomial f(vars);
  for (const auto& [s, c] : taylor_terms) f += c.aligned(vars).times_monomial(y_power(s), Rational(1));
  for (const auto& [t, c] : remainders) f += c.aligned(vars).times_monomial(y_power(t), Rational(1));
  return f;
}

Polynomial HadamardExpansion::taylor(const MultiIndex& sigma) const {
  auto it = taylor_terms.find(sigma);
  return it == taylor_terms.end() ? Polynomial(x_vars) : it->second;
}

Polynomial HadamardExpansion::remainder(const MultiIndex& tau) const {
  auto it = remainders.find(tau);
  return it == remainders.end() ? Polynomial(union_vars(x_vars, y_vars)) : it->second;
}

HadamardExpansion hadamard_expand(const Polynomial& f, const std::vector<std::string>& x_vars,
                                  const std::vector<std::string>& y_vars, unsigned l) {
  for (const auto& v : x_vars) {
    if (std::find(y_vars.begin(), y_vars.end(), v) != y_vars.end()) {
      throw Error(ErrorKind::shape, "variable '" + v + "' is in both blocks");
    }
  }
  const auto vars = union_vars(x_vars, y_vars);
  if (vars.size() != x_vars.size() + y_vars.size()) {
    throw Error(ErrorKind::shape, "duplicate variable in a block");
  }
  Polynomial g;
  try {
    g = f.aligned(vars);
  } catch (const Error&) {
    throw Error(ErrorKind::shape, "variable blocks do not cover " + f.to_string());
  }
  HadamardExpansion out;
  out.x_vars = x_vars;
  out.y_vars = y_vars;
  out.order = l;
  const std::size_t nx = x_vars.size();
  const std::size_t ny = y_vars.size();
  std::map<MultiIndex, std::vector<Term>> taylor;
  std::map<MultiIndex, std::vector<Term>> rem;
  for (const auto& t : g.terms()) {
    MultiIndex beta(t.exp.begin() + static_cast<std::ptrdiff_t>(nx), t.exp.end());
    if (order(beta) <= l) {
      Exponents xe(t.exp.begin(), t.exp.begin() + static_cast<std::ptrdiff_t>(nx));
      taylor[beta].push_back({std::move(xe), t.coeff});
      continue;
    }
    MultiIndex tau(ny, 0);
    std::uint32_t left = l + 1;
    for (std::size_t i = 0; i < ny && left > 0; ++i) {
      tau[i] = std::min(beta[i], left);
      left -= tau[i];
    }
    Exponents e = t.exp;
    for (std::size_t i = 0; i < ny; ++i) e[nx + i] -= tau[i];
    rem[tau].push_back({std::move(e), t.coeff});
  }
  for (auto& [s, terms] : taylor) {
    Polynomial p = Polynomial::from_terms(x_vars, std::move(terms));
    if (!p.is_zero()) out.taylor_terms.emplace(s, std::move(p));
  }
  for (auto& [s, terms] : rem) {
    Polynomial p = Polynomial::from_terms(vars, std::move(terms));
    if (!p.is_zero()) out.remainders.emplace(s, std::move(p));
  }
  return out;
}

std::map<MultiIndex, Polynomial> vanishing_quotient(const Polynomial& f,
                                                    const std::vector<std::string>& y_vars,
                                                    unsigned l) {
  std::vector<std::string> x_vars;
  for (const auto& v : f.vars()) {
    if (std::find(y_vars.begin(), y_vars.end(), v) == y_vars.end()) x_vars.push_back(v);
  }
  HadamardExpansion h = hadamard_expand(f, x_vars, y_vars, l);
  if (!h.taylor_terms.empty()) {
    std::vector<MultiIndex> offending;
    for (const auto& [sigma, coeff] : h.taylor_terms) offending.push_back(sigma);
    std::stable_sort(offending.begin(), offending.end(), [](const MultiIndex& a, const MultiIndex& b) {
      return order(a) < order(b);
    });
    std::string list;
    for (const auto& s : offending) list += (list.empty() ? "" : " ") + format_multi_index(s);
    throw Error(ErrorKind::nonvanishing_jet, "nonvanishing Taylor coefficients at " + list);
  }
  return h.remainders;
}

}  // namespace jetkernel

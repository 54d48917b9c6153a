#include "jetkernel/weil.hpp"

#include <algorithm>

#include "jetkernel/error.hpp"

namespace jetkernel {

namespace {

void monomials_rec(std::size_t n, std::size_t i, std::uint32_t left, Exponents& cur,
                   std::vector<Exponents>& out) {
  if (i + 1 == n) {
    cur[i] = left;
    out.push_back(cur);
    return;
  }
  for (std::uint32_t k = left + 1; k-- > 0;) {
    cur[i] = k;
    monomials_rec(n, i + 1, left - k, cur, out);
  }
  cur[i] = 0;
}

}  // namespace

std::vector<Exponents> monomials_of_degree(std::size_t n, std::uint32_t degree) {
  std::vector<Exponents> out;
  if (n == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponents cur(n, 0);
  monomials_rec(n, 0, degree, cur, out);
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) {
    return grevlex_compare(a, b) == std::strong_ordering::greater;
  });
  return out;
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
  auto free = [&](const std::string& s) {
    return std::find(taken.begin(), taken.end(), s) == taken.end();
  };
  if (free(base)) return base;
  for (std::size_t i = 2;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (free(candidate)) return candidate;
  }
}

std::vector<Monomial> WeilAlgebra::basis_monomials() const {
  std::vector<Monomial> out;
  Polynomial carrier(vars());
  for (const auto& e : basis()) out.push_back(carrier.monomial_of(e));
  return out;
}

Polynomial WeilAlgebra::reduce(const Polynomial& p) const {
  if (data_->ideal.basis.empty()) return p;
  return divide(p, data_->ideal.basis, data_->vars).remainder;
}

RationalVector WeilAlgebra::coordinates(const Polynomial& normal_form) const {
  RationalVector out(dim(), Rational(0));
  const Polynomial p = normal_form.aligned(vars());
  for (const auto& t : p.terms()) {
    auto it = std::find(basis().begin(), basis().end(), t.exp);
    if (it == basis().end()) {
      throw Error(ErrorKind::invalid_argument,
                  "polynomial is not in normal form: " + p.to_string());
    }
    out[static_cast<std::size_t>(it - basis().begin())] = t.coeff;
  }
  return out;
}

Polynomial WeilAlgebra::from_coordinates(const RationalVector& coords) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coords.size(); ++i) terms.push_back({basis()[i], coords[i]});
  return Polynomial::from_terms(vars(), std::move(terms));
}

bool operator==(const WeilAlgebra& a, const WeilAlgebra& b) {
  if (a.data_ == b.data_) return true;
  return a.vars() == b.vars() && a.ideal().basis == b.ideal().basis;
}

WeilAlgebra make_weil(std::size_t d, const std::vector<Polynomial>& generators,
                      const WeilOptions& options) {
  if (options.k_max < 1) throw Error(ErrorKind::invalid_argument, "k_max must be at least 1");
  auto data = std::make_shared<WeilAlgebra::Data>();
  data->name = options.name;
  std::vector<std::string> vars = options.vars;
  if (vars.empty()) {
    for (const auto& g : generators) vars = union_vars(vars, g.used_vars());
    for (std::size_t i = 1; vars.size() < d; ++i) {
      vars.push_back(fresh_name("e" + std::to_string(i), vars));
    }
  }
  if (vars.size() != d) {
    throw Error(ErrorKind::invalid_argument,
                "expected " + std::to_string(d) + " variables, got " + std::to_string(vars.size()));
  }
  for (const auto& g : generators) {
    for (const auto& v : g.used_vars()) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        throw Error(ErrorKind::invalid_argument,
                    "generator " + g.to_string() + " uses variable '" + v +
                        "' outside the algebra");
      }
    }
  }
  data->vars = vars;
  data->ideal = buchberger(generators, vars, options.groebner);
  // buchberger() over an empty generator list keeps `vars` as given.
  data->ideal.vars = vars;

  auto nf = [&](const Exponents& e) {
    return divide(Polynomial::monomial(vars, e, Rational(1)), data->ideal.basis, vars).remainder;
  };
  if (nf(Exponents(d, 0)).is_zero()) {
    throw Error(ErrorKind::not_nilpotent, "generators span the unit ideal");
  }
  bool found = false;
  for (unsigned k = 0; k <= options.k_max; ++k) {
    bool all_zero = true;
    for (const auto& e : monomials_of_degree(d, k + 1)) {
      if (!nf(e).is_zero()) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) {
      data->k = k;
      found = true;
      break;
    }
  }
  if (!found) {
    throw Error(ErrorKind::not_nilpotent,
                "some monomial of degree " + std::to_string(options.k_max + 1) +
                    " has nonzero normal form");
  }
  std::vector<Exponents> leading;
  for (const auto& b : data->ideal.basis) leading.push_back(b.leading_term().exp);
  for (std::uint32_t deg = 0; deg <= data->k; ++deg) {
    for (const auto& e : monomials_of_degree(d, deg)) {
      bool standard = std::none_of(leading.begin(), leading.end(),
                                   [&](const Exponents& l) { return divides(l, e); });
      if (standard) data->basis.push_back(e);
    }
  }
  return WeilAlgebra(std::move(data));
}

WeilAlgebra disk(std::size_t d, unsigned k, const std::vector<std::string>& vars) {
  std::vector<std::string> names = vars;
  if (names.empty()) {
    for (std::size_t i = 1; i <= d; ++i) names.push_back("e" + std::to_string(i));
  }
  std::vector<Polynomial> gens;
  for (const auto& e : monomials_of_degree(d, k + 1)) {
    gens.push_back(Polynomial::monomial(names, e, Rational(1)));
  }
  WeilOptions options;
  options.vars = names;
  options.k_max = std::max(1U, k + 1);
  options.name = "D" + std::to_string(d) + "(" + std::to_string(k) + ")";
  if (d == 0) gens.clear();
  return make_weil(d, gens, options);
}

WeilAlgebra point_algebra() {
  static const WeilAlgebra point = disk(0, 0);
  return point;
}

WeilAlgebra weil_tensor(const WeilAlgebra& a, const WeilAlgebra& b) {
  std::vector<std::string> vars = a.vars();
  std::map<std::string, std::string> renames;
  for (const auto& v : b.vars()) {
    std::string n = fresh_name(v, union_vars(vars, b.vars()));
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) n = v;
    renames[v] = n;
    vars.push_back(n);
  }
  std::vector<Polynomial> gens = a.generators();
  for (const auto& g : b.generators()) gens.push_back(rename(g, renames));
  WeilOptions options;
  options.vars = vars;
  options.k_max = std::max(1U, a.nilpotency_order() + b.nilpotency_order() + 1);
  options.name = a.name() + "*" + b.name();
  return make_weil(vars.size(), gens, options);
}

WeilElement normal_form(const Polynomial& p, const WeilAlgebra& algebra) {
  return {algebra, algebra.reduce(p)};
}

std::vector<Polynomial> ideal_decompose(const Polynomial& p, const WeilAlgebra& algebra) {
  Division d = divide(p, algebra.ideal().basis, algebra.vars());
  if (!d.remainder.is_zero()) {
    throw Error(ErrorKind::not_in_ideal,
                "polynomial has nonzero normal form " + d.remainder.to_string());
  }
  return lift_to_generators(d.quotients, algebra.ideal());
}

}  // namespace jetkernel

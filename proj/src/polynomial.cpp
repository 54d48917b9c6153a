#include "jetkernel/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "jetkernel/error.hpp"

namespace jetkernel {

namespace {

struct GrevlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return grevlex_compare(a, b) == std::strong_ordering::greater;
  }
};

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorKind::parse, "malformed rational '" + text + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw Error(ErrorKind::parse, "zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

std::strong_ordering grevlex_compare(const Exponents& a, const Exponents& b) {
  auto da = total_degree(a);
  auto db = total_degree(b);
  if (da != db) return da <=> db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

bool divides(const Exponents& divisor, const Exponents& e) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (divisor[i] > e[i]) return false;
  }
  return true;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [v, k] : exponents) d += k;
  return d;
}

std::string Monomial::to_string() const {
  if (exponents.empty()) return "1";
  std::string out;
  for (const auto& [v, k] : exponents) {
    if (!out.empty()) out += '*';
    out += v;
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial::Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

Polynomial Polynomial::constant(std::vector<std::string> vars, const Rational& c) {
  Polynomial p(std::move(vars));
  if (c != 0) p.terms_.push_back({Exponents(p.vars_.size(), 0), c});
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> vars, const std::string& name) {
  Polynomial p(std::move(vars));
  int idx = p.var_index(name);
  if (idx < 0) {
    p.vars_.push_back(name);
    idx = static_cast<int>(p.vars_.size()) - 1;
  }
  Exponents e(p.vars_.size(), 0);
  e[static_cast<std::size_t>(idx)] = 1;
  p.terms_.push_back({std::move(e), Rational(1)});
  return p;
}

Polynomial Polynomial::monomial(std::vector<std::string> vars, Exponents exp,
                                const Rational& c) {
  Polynomial p(std::move(vars));
  if (exp.size() != p.vars_.size()) {
    throw Error(ErrorKind::shape, "exponent vector length does not match variable count");
  }
  if (c != 0) p.terms_.push_back({std::move(exp), c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
  Polynomial p(std::move(vars));
  for (const auto& t : terms) {
    if (t.exp.size() != p.vars_.size()) {
      throw Error(ErrorKind::shape, "exponent vector length does not match variable count");
    }
  }
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

Polynomial Polynomial::from_sparse(std::vector<std::string> vars,
                                   const std::map<Monomial, Rational>& terms) {
  for (const auto& [m, c] : terms) {
    for (const auto& [v, k] : m.exponents) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& [m, c] : terms) {
    Exponents e(vars.size(), 0);
    for (const auto& [v, k] : m.exponents) {
      auto it = std::find(vars.begin(), vars.end(), v);
      e[static_cast<std::size_t>(it - vars.begin())] = k;
    }
    out.push_back({std::move(e), c});
  }
  return from_terms(std::move(vars), std::move(out));
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return grevlex_compare(a.exp, b.exp) == std::strong_ordering::greater;
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(merged);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && jetkernel::total_degree(terms_.back().exp) == 0) {
    return terms_.back().coeff;
  }
  return Rational(0);
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::invalid_argument, "zero polynomial has no leading term");
  return terms_.front();
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(jetkernel::total_degree(terms_.front().exp));
}

std::uint32_t Polynomial::degree_in(const std::string& var) const {
  int idx = var_index(var);
  if (idx < 0) return 0;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp[static_cast<std::size_t>(idx)]);
  return d;
}

bool Polynomial::has_var(const std::string& var) const { return var_index(var) >= 0; }

int Polynomial::var_index(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

std::vector<std::string> Polynomial::used_vars() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    bool used = std::any_of(terms_.begin(), terms_.end(),
                            [i](const Term& t) { return t.exp[i] > 0; });
    if (used) out.push_back(vars_[i]);
  }
  return out;
}

Polynomial Polynomial::aligned(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> target(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it != vars.end()) target[i] = static_cast<int>(it - vars.begin());
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(vars.size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (target[i] < 0) {
        throw Error(ErrorKind::missing_variable,
                    "variable '" + vars_[i] + "' is not in the target variable list");
      }
      e[static_cast<std::size_t>(target[i])] = t.exp[i];
    }
    out.push_back({std::move(e), t.coeff});
  }
  return from_terms(vars, std::move(out));
}

Monomial Polynomial::monomial_of(const Exponents& e) const {
  Monomial m;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (e[i] > 0) m.exponents[vars_[i]] = e[i];
  }
  return m;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (monomial_of(t.exp) == m) return t.coeff;
  }
  return Rational(0);
}

std::map<Monomial, Rational> Polynomial::to_sparse() const {
  std::map<Monomial, Rational> out;
  for (const auto& t : terms_) out.emplace(monomial_of(t.exp), t.coeff);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

// Merges two sorted term lists over identical variable lists.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                              bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::strong_ordering c = std::strong_ordering::equal;
    if (i == a.size()) {
      c = std::strong_ordering::less;
    } else if (j == b.size()) {
      c = std::strong_ordering::greater;
    } else {
      c = grevlex_compare(a[i].exp, b[j].exp);
    }
    if (c == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (c == std::strong_ordering::less) {
      Term t = b[j++];
      if (subtract) t.coeff = -t.coeff;
      out.push_back(std::move(t));
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].exp, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (vars_ != other.vars_) {
    auto u = union_vars(vars_, other.vars_);
    *this = aligned(u);
    terms_ = merge_terms(terms_, other.aligned(u).terms_, false);
  } else {
    terms_ = merge_terms(terms_, other.terms_, false);
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (vars_ != other.vars_) {
    auto u = union_vars(vars_, other.vars_);
    *this = aligned(u);
    terms_ = merge_terms(terms_, other.aligned(u).terms_, true);
  } else {
    terms_ = merge_terms(terms_, other.terms_, true);
  }
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return Polynomial(vars_);
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::times_monomial(const Exponents& e, const Rational& c) const {
  if (c == 0) return Polynomial(vars_);
  Polynomial p = *this;
  for (auto& t : p.terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) t.exp[i] += e[i];
    t.coeff *= c;
  }
  return p;
}

Polynomial Polynomial::derivative(const std::string& var) const {
  int idx = var_index(var);
  Polynomial p(vars_);
  if (idx < 0) return p;
  auto k = static_cast<std::size_t>(idx);
  for (const auto& t : terms_) {
    if (t.exp[k] == 0) continue;
    Term d = t;
    d.coeff *= t.exp[k];
    d.exp[k] -= 1;
    p.terms_.push_back(std::move(d));
  }
  // Differentiation is injective on the surviving exponents, so order and
  // distinctness are preserved up to re-sorting.
  p.normalize();
  return p;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(vars_, Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (t.exp[i] != 1) mono += "^" + std::to_string(t.exp[i]);
    }
    if (mono.empty()) {
      out << format_rational(c);
    } else if (c == 1) {
      out << mono;
    } else {
      out << format_rational(c) << '*' << mono;
    }
  }
  return out.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.vars_ == b.vars_) {
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) {
        return false;
      }
    }
    return true;
  }
  return a.to_sparse() == b.to_sparse();
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.vars() != b.vars()) {
    auto u = union_vars(a.vars(), b.vars());
    return a.aligned(u) * b.aligned(u);
  }
  std::map<Exponents, Rational, GrevlexGreater> acc;
  const auto n = a.vars().size();
  Exponents e(n, 0);
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ta.exp[i] + tb.exp[i];
      auto [it, inserted] = acc.try_emplace(e, ta.coeff * tb.coeff);
      if (!inserted) it->second += ta.coeff * tb.coeff;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [exp, c] : acc) {
    if (c != 0) terms.push_back({exp, c});
  }
  return Polynomial::from_terms(a.vars(), std::move(terms));
}

std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& assignment,
                      const std::vector<std::string>* result_vars) {
  std::vector<std::string> out_vars;
  if (result_vars != nullptr) {
    out_vars = *result_vars;
  } else {
    for (const auto& v : p.vars()) {
      auto it = assignment.find(v);
      if (it != assignment.end()) out_vars = union_vars(out_vars, it->second.vars());
    }
  }
  const auto& vars = p.vars();
  // Powers of each image, computed lazily up to the degree needed.
  std::vector<std::vector<Polynomial>> powers(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::uint32_t deg = p.degree_in(vars[i]);
    if (deg == 0) continue;
    auto it = assignment.find(vars[i]);
    if (it == assignment.end()) {
      throw Error(ErrorKind::missing_variable, "no image assigned to variable '" + vars[i] + "'");
    }
    Polynomial img = it->second.aligned(union_vars(out_vars, it->second.used_vars()));
    if (img.vars() != out_vars) {
      out_vars = img.vars();
      for (auto& row : powers) {
        for (auto& q : row) q = q.aligned(out_vars);
      }
    }
    powers[i].push_back(Polynomial::constant(out_vars, Rational(1)));
    for (std::uint32_t k = 1; k <= deg; ++k) powers[i].push_back(powers[i].back() * img);
  }
  Polynomial result(out_vars);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(out_vars, t.coeff);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (t.exp[i] > 0) term = term * powers[i][t.exp[i]].aligned(out_vars);
    }
    result += term;
  }
  return result.aligned(out_vars);
}

Polynomial substitute_partial(const Polynomial& p,
                              const std::map<std::string, Polynomial>& assignment) {
  std::map<std::string, Polynomial> full = assignment;
  std::vector<std::string> out_vars;
  for (const auto& v : p.vars()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) {
      full.emplace(v, Polynomial::variable({v}, v));
      out_vars = union_vars(out_vars, {v});
    } else {
      out_vars = union_vars(out_vars, it->second.vars());
    }
  }
  return substitute(p, full, &out_vars);
}

Polynomial rename(const Polynomial& p, const std::map<std::string, std::string>& names) {
  std::vector<std::string> vars = p.vars();
  for (auto& v : vars) {
    auto it = names.find(v);
    if (it != names.end()) v = it->second;
  }
  std::vector<std::string> seen;
  for (const auto& v : vars) {
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) {
      throw Error(ErrorKind::invalid_argument, "renaming is not injective at '" + v + "'");
    }
    seen.push_back(v);
  }
  return Polynomial::from_terms(std::move(vars), p.terms());
}

Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point) {
  const auto& vars = p.vars();
  std::vector<const Rational*> values(vars.size(), nullptr);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = point.find(vars[i]);
    if (it != point.end()) values[i] = &it->second;
  }
  Rational sum(0);
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (values[i] == nullptr) {
        throw Error(ErrorKind::missing_variable, "no value for variable '" + vars[i] + "'");
      }
      mpq_class pw(1);
      for (std::uint32_t k = 0; k < t.exp[i]; ++k) pw *= *values[i];
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

}  // namespace jetkernel

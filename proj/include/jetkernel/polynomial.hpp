#pragma once

// Exact multivariate polynomials over the rationals.
//
// A Polynomial carries its own declared variable list; exponent vectors are
// dense with respect to that list and terms are kept sorted in descending
// graded-reverse-lexicographic order. Binary operations on polynomials with
// different variable lists first align both operands to the union list
// (left operand's variables first).

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace jetkernel {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws Error(parse).
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& value);

using Exponents = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponents& e);

/// Three-way grevlex comparison of exponent vectors of equal length.
std::strong_ordering grevlex_compare(const Exponents& a, const Exponents& b);

/// True when every entry of `divisor` is <= the matching entry of `e`.
bool divides(const Exponents& divisor, const Exponents& e);

/// Sparse, variable-keyed monomial. Only positive exponents are stored.
struct Monomial {
  std::map<std::string, std::uint32_t> exponents;

  std::uint32_t total_degree() const;
  std::string to_string() const;
  auto operator<=>(const Monomial&) const = default;
};

struct Term {
  Exponents exp;
  Rational coeff;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> vars);

  static Polynomial constant(std::vector<std::string> vars, const Rational& c);
  static Polynomial variable(std::vector<std::string> vars, const std::string& name);
  static Polynomial monomial(std::vector<std::string> vars, Exponents exp,
                             const Rational& c);
  /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
  /// terms; the result is normalized.
  static Polynomial from_terms(std::vector<std::string> vars, std::vector<Term> terms);
  static Polynomial from_sparse(std::vector<std::string> vars,
                                const std::map<Monomial, Rational>& terms);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (coefficient of the empty monomial).
  Rational constant_term() const;
  const Term& leading_term() const;
  int total_degree() const;  // -1 for the zero polynomial
  std::uint32_t degree_in(const std::string& var) const;
  bool has_var(const std::string& var) const;
  int var_index(const std::string& var) const;  // -1 when not declared
  /// Variables that actually occur with positive exponent, in declared order.
  std::vector<std::string> used_vars() const;

  /// Same polynomial over `vars`, which must contain every used variable.
  Polynomial aligned(const std::vector<std::string>& vars) const;

  Rational coefficient(const Monomial& m) const;
  std::map<Monomial, Rational> to_sparse() const;
  Monomial monomial_of(const Exponents& e) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial scaled(const Rational& c) const;
  Polynomial times_monomial(const Exponents& e, const Rational& c) const;

  Polynomial derivative(const std::string& var) const;
  Polynomial pow(unsigned k) const;

  /// Human-readable form following the text grammar, e.g. "3/2*x^2*y - x + 1".
  std::string to_string() const;

  /// Equality of normalized term maps, independent of declared variable lists.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void normalize();

  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

/// Union of variable lists, preserving first-seen order.
std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b);

/// Simultaneous substitution of variables by polynomials. Every used variable
/// of `p` must be assigned, otherwise Error(missing_variable). The result is
/// declared over `result_vars` when given, else over the union of the images'
/// variable lists.
Polynomial substitute(const Polynomial& p,
                      const std::map<std::string, Polynomial>& assignment,
                      const std::vector<std::string>* result_vars = nullptr);

/// Substitutes a subset of variables, leaving the rest untouched.
Polynomial substitute_partial(const Polynomial& p,
                              const std::map<std::string, Polynomial>& assignment);

/// Renames variables (injective map); unmapped variables are kept.
Polynomial rename(const Polynomial& p, const std::map<std::string, std::string>& names);

/// Evaluates every variable at a rational point.
Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point);

}  // namespace jetkernel

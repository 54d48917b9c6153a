#pragma once

// Buchberger's algorithm with cofactor tracking, and multivariate division.

#include <cstddef>
#include <string>
#include <vector>

#include "jetkernel/polynomial.hpp"

namespace jetkernel {

struct GroebnerOptions {
  /// Upper bound on pending S-pairs; exceeding it raises Error(resource_limit).
  std::size_t pair_cap = 100000;
};

/// Default pair cap, overridden by the JETKERNEL_PAIR_CAP environment variable.
GroebnerOptions default_groebner_options();

struct GroebnerBasis {
  std::vector<std::string> vars;
  /// The generators exactly as supplied.
  std::vector<Polynomial> generators;
  /// Reduced basis: monic, auto-reduced, sorted by ascending leading monomial.
  std::vector<Polynomial> basis;
  /// cofactors[j][i]: basis[j] == sum_i cofactors[j][i] * generators[i].
  std::vector<std::vector<Polynomial>> cofactors;

  bool is_zero_ideal() const { return basis.empty(); }
};

/// Reduced Groebner basis of the ideal spanned by `generators`, over the union
/// of their variable lists (or `vars` when non-empty, which must cover them).
GroebnerBasis buchberger(const std::vector<Polynomial>& generators,
                         const std::vector<std::string>& vars = {},
                         const GroebnerOptions& options = default_groebner_options());

struct Division {
  std::vector<Polynomial> quotients;  // one per basis element
  Polynomial remainder;
};

/// Divides `p` by `divisors` (all over the same variable list `vars`).
/// Variables of `p` outside `vars` are treated as coefficients: p is split by
/// its exponent in those variables and each slice is divided separately.
/// Afterwards p == sum q_i * divisors_i + r exactly and no term of r is
/// divisible by a leading term of a divisor.
Division divide(const Polynomial& p, const std::vector<Polynomial>& divisors,
                const std::vector<std::string>& vars);

Division divide(const Polynomial& p, const GroebnerBasis& gb);

Polynomial reduce(const Polynomial& p, const GroebnerBasis& gb);

/// Rewrites basis-quotients as coefficients over the original generators:
/// result[i] = sum_j quotients[j] * cofactors[j][i].
std::vector<Polynomial> lift_to_generators(const std::vector<Polynomial>& quotients,
                                           const GroebnerBasis& gb);

/// S-polynomial of two polynomials over the same variable list.
Polynomial s_polynomial(const Polynomial& a, const Polynomial& b);

}  // namespace jetkernel

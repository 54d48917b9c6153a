#pragma once

// Exact Hadamard expansion of polynomials in a block of variables y with
// parameters x:
//
//   f = sum_{|s| <= l} y^s * taylor[s]  +  sum_{|t| = l+1} y^t * remainder[t]
//
// with taylor[s] = (1/s!) d^s f / dy^s (x, 0).

#include <map>
#include <string>
#include <vector>

#include "jetkernel/polynomial.hpp"

namespace jetkernel {

using MultiIndex = std::vector<std::uint32_t>;

std::uint32_t order(const MultiIndex& sigma);
std::string format_multi_index(const MultiIndex& sigma);

struct HadamardExpansion {
  std::vector<std::string> x_vars;
  std::vector<std::string> y_vars;
  unsigned order = 0;
  /// Nonzero Taylor coefficients, polynomials in x only.
  std::map<MultiIndex, Polynomial> taylor_terms;
  /// Nonzero remainder coefficients, polynomials in (x, y).
  std::map<MultiIndex, Polynomial> remainders;

  /// Rebuilds f from the expansion.
  Polynomial reconstruct() const;
  Polynomial taylor(const MultiIndex& sigma) const;
  Polynomial remainder(const MultiIndex& tau) const;
};

/// Splits each monomial of `f` by its y-part. A y-part of order <= l feeds the
/// Taylor coefficient; a higher one is charged to the divisor tau of order
/// l+1 whose sorted index sequence (i_1 <= ... <= i_{l+1}) is
/// lexicographically smallest, i.e. tau takes as much as possible from the
/// earliest y variables. Raises Error(shape) when the blocks overlap or miss
/// a variable of f.
HadamardExpansion hadamard_expand(const Polynomial& f, const std::vector<std::string>& x_vars,
                                  const std::vector<std::string>& y_vars, unsigned l);

/// Remainder coefficients of f when its Taylor part up to order l vanishes.
/// The x block is every other variable of f. Raises Error(nonvanishing_jet)
/// naming the first surviving multi-index otherwise.
std::map<MultiIndex, Polynomial> vanishing_quotient(const Polynomial& f,
                                                    const std::vector<std::string>& y_vars,
                                                    unsigned l);

}  // namespace jetkernel

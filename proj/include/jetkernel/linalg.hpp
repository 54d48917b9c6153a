#pragma once

// Dense exact linear algebra over the rationals, sized for desk-scale use.

#include <cstddef>
#include <optional>
#include <vector>

#include "jetkernel/polynomial.hpp"

namespace jetkernel {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major

std::size_t rank(RationalMatrix m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(RationalMatrix m);

RationalMatrix identity_matrix(std::size_t n);

/// Incrementally maintained row-echelon span of vectors.
class EchelonSpan {
 public:
  explicit EchelonSpan(std::size_t dim) : dim_(dim) {}

  /// Adds `v`; returns true if it was linearly independent of the span.
  bool insert(RationalVector v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  RationalVector reduce(RationalVector v) const;

  std::size_t dim_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace jetkernel

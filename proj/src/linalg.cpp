#include "jetkernel/linalg.hpp"

#include <utility>

namespace jetkernel {

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix id(n, RationalVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

std::optional<RationalMatrix> inverse(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[c], m[pivot]);
    std::swap(inv[c], inv[pivot]);
    Rational p = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[i][k] -= f * m[c][k];
        inv[i][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

RationalVector EchelonSpan::reduce(RationalVector v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (v[p] == 0) continue;
    Rational f = v[p];
    for (std::size_t k = 0; k < dim_; ++k) v[k] -= f * rows_[r][k];
  }
  return v;
}

bool EchelonSpan::insert(RationalVector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p] == 0) ++p;
  if (p == dim_) return false;
  Rational lead = v[p];
  for (auto& x : v) x /= lead;
  // Keep rows fully reduced so `reduce` is a single pass.
  for (auto& row : rows_) {
    if (row[p] == 0) continue;
    Rational f = row[p];
    for (std::size_t k = 0; k < dim_; ++k) row[k] -= f * v[k];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

}  // namespace jetkernel

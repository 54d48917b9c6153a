#pragma once

// Jet spaces J^k(R^n, R^m) as Cartesian spaces, prolongation of polynomial
// sections, and truncated towers of plots into R^inf or J^inf.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jetkernel/factorization.hpp"
#include "jetkernel/formal.hpp"
#include "jetkernel/hadamard.hpp"
#include "jetkernel/polynomial.hpp"

namespace jetkernel {

/// Fiber coordinate u^a_sigma; `component` is 0-based.
struct JetCoordinate {
  std::size_t component = 0;
  MultiIndex sigma;
  auto operator<=>(const JetCoordinate&) const = default;
};

class JetSpace {
 public:
  JetSpace(std::size_t n, std::size_t m, unsigned k);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  unsigned k() const { return k_; }
  /// Ordered by |sigma|, then component, then sigma in descending grevlex,
  /// so the coordinates of J^(k-1) form a prefix.
  const std::vector<JetCoordinate>& fiber_coordinates() const { return fiber_; }
  /// m * C(n + k, n).
  std::size_t fiber_dim() const { return fiber_.size(); }
  std::size_t dim() const { return n_ + fiber_.size(); }

  /// "u[2,1]" for m = 1, "u2[2,1]" otherwise (components numbered from 1).
  std::string key(const JetCoordinate& c) const;
  /// Identifier form of the coordinates: x1..xn, then "u_2_1" / "u2_2_1".
  std::vector<std::string> coordinate_names() const;
  FormalSpace cartesian() const;

 private:
  std::size_t n_;
  std::size_t m_;
  unsigned k_;
  std::vector<JetCoordinate> fiber_;
};

/// m * C(n + k, n), computed independently of the enumeration.
std::size_t jet_fiber_dim(std::size_t n, std::size_t m, unsigned k);

struct JetPoint {
  JetSpace space;
  std::vector<Rational> base;    // n entries
  std::vector<Rational> values;  // aligned with space.fiber_coordinates()

  Rational value(const JetCoordinate& c) const;
};

/// j^k s at `base`: u^a_sigma = d^sigma s^a (base).
JetPoint prolong(const std::vector<Polynomial>& sections, const std::vector<std::string>& base_vars,
                 unsigned k, const std::vector<Rational>& base);

/// J^k -> J^(k-1). Raises Error(invalid_argument) at k = 0.
JetPoint project(const JetPoint& point);

/// A k-jet at 0 of a map R^n -> R^m is the same as m elements of D_n(k):
/// u^a_sigma = sigma! * coefficient of e^sigma.
JetPoint disk_section_to_jet(const std::vector<Polynomial>& elements, const WeilAlgebra& disk);
std::vector<Polynomial> jet_to_disk_section(const JetPoint& point, const WeilAlgebra& disk);

/// Levels 0..N of a family of plots U x D -> R^(dims[i]); entry i is a plot
/// into the i-th truncation and truncations are coordinate prefixes.
struct TruncatedProPlot {
  FormalSpace source;
  std::vector<std::size_t> dims;
  std::vector<std::vector<Polynomial>> levels;
};

/// dims 1..N for R^inf.
std::vector<std::size_t> rinf_dims(std::size_t levels);
/// dims of J^0..J^N(R^n, R^m).
std::vector<std::size_t> jet_dims(std::size_t n, std::size_t m, unsigned levels);

/// First level i >= 1 whose truncation differs from level i-1, or nullopt.
/// Levels are checked independently in parallel.
std::optional<std::size_t> first_incompatible_level(const TruncatedProPlot& family);

/// The cone as a single plot into the top level R^(dims.back()). Raises
/// Error(incompatible_cone) naming the first failing level.
FormalMorphism cone_to_plot(const TruncatedProPlot& family);
/// Truncations of a plot into the top level.
TruncatedProPlot plot_to_cone(const FormalMorphism& plot, const std::vector<std::size_t>& dims);

struct JetLift {
  FactorizationPair pair;
  /// level_ok[i]: the truncation of the composite reproduces level i.
  std::vector<bool> level_ok;
};

/// Factors a compatible family through its top level.
JetLift lift_jet_plot(const TruncatedProPlot& family);

}  // namespace jetkernel

#pragma once

// Seeded randomness for the self-test generators. Draws are implemented here
// rather than through <random> distributions, whose output is not pinned
// across standard library implementations.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jetkernel/polynomial.hpp"

namespace jetkernel {

/// splitmix64 finalizer, used to derive independent per-instance seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

class Rng {
 public:
  static constexpr const char* algorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  bool coin() { return below(2) == 1; }
  /// Nonzero p/q with |p| <= magnitude and q in {1, 2, 3}.
  Rational nonzero_rational(std::int64_t magnitude = 5);
  Rational rational(std::int64_t magnitude = 5);

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Random polynomial over `vars` with at most `max_terms` terms of total
/// degree <= max_degree; may be zero.
Polynomial random_polynomial(Rng& rng, const std::vector<std::string>& vars,
                             unsigned max_degree, unsigned max_terms);

}  // namespace jetkernel

#include "jetkernel/random.hpp"

namespace jetkernel {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = seed;
  for (std::uint64_t v : {stream, index}) {
    z += 0x9e3779b97f4a7c15ULL + v;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
  }
  return z;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rational Rng::nonzero_rational(std::int64_t magnitude) {
  std::int64_t p = range(1, magnitude);
  if (coin()) p = -p;
  Rational r(static_cast<long>(p), static_cast<unsigned long>(range(1, 3)));
  r.canonicalize();
  return r;
}

Rational Rng::rational(std::int64_t magnitude) {
  if (below(4) == 0) return Rational(0);
  return nonzero_rational(magnitude);
}

Polynomial random_polynomial(Rng& rng, const std::vector<std::string>& vars,
                             unsigned max_degree, unsigned max_terms) {
  std::vector<Term> terms;
  const std::uint64_t count = rng.below(max_terms + 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    Exponents e(vars.size(), 0);
    std::uint64_t deg = rng.below(max_degree + 1);
    for (std::uint64_t j = 0; j < deg && !vars.empty(); ++j) ++e[rng.below(vars.size())];
    terms.push_back({std::move(e), rng.nonzero_rational()});
  }
  return Polynomial::from_terms(vars, std::move(terms));
}

}  // namespace jetkernel

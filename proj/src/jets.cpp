#include "jetkernel/jets.hpp"

#include <algorithm>
#include <map>

#include "jetkernel/error.hpp"
#include "jetkernel/parallel.hpp"
#include "jetkernel/weil.hpp"

namespace jetkernel {

namespace {

Rational factorial(const MultiIndex& sigma) {
  Rational out(1);
  for (auto s : sigma) {
    for (std::uint32_t i = 2; i <= s; ++i) out *= i;
  }
  return out;
}

std::string sigma_suffix(const MultiIndex& sigma) {
  std::string out;
  for (auto s : sigma) out += "_" + std::to_string(s);
  return out;
}

}  // namespace

JetSpace::JetSpace(std::size_t n, std::size_t m, unsigned k) : n_(n), m_(m), k_(k) {
  for (unsigned s = 0; s <= k; ++s) {
    auto sigmas = monomials_of_degree(n, s);
    for (std::size_t a = 0; a < m; ++a) {
      for (const auto& sigma : sigmas) fiber_.push_back({a, sigma});
    }
  }
}

std::string JetSpace::key(const JetCoordinate& c) const {
  std::string head = m_ == 1 ? "u" : "u" + std::to_string(c.component + 1);
  return head + format_multi_index(c.sigma);
}

std::vector<std::string> JetSpace::coordinate_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n_; ++i) out.push_back("x" + std::to_string(i));
  for (const auto& c : fiber_) {
    std::string head = m_ == 1 ? "u" : "u" + std::to_string(c.component + 1);
    out.push_back(head + sigma_suffix(c.sigma));
  }
  return out;
}

FormalSpace JetSpace::cartesian() const {
  return FormalSpace::cartesian("J" + std::to_string(k_), coordinate_names());
}

std::size_t jet_fiber_dim(std::size_t n, std::size_t m, unsigned k) {
  // C(n + k, n) by the multiplicative formula.
  std::size_t c = 1;
  for (std::size_t i = 1; i <= n; ++i) c = c * (k + i) / i;
  return m * c;
}

Rational JetPoint::value(const JetCoordinate& c) const {
  const auto& fc = space.fiber_coordinates();
  auto it = std::find(fc.begin(), fc.end(), c);
  if (it == fc.end()) throw Error(ErrorKind::invalid_argument, "no coordinate " + space.key(c));
  return values[static_cast<std::size_t>(it - fc.begin())];
}

JetPoint prolong(const std::vector<Polynomial>& sections, const std::vector<std::string>& base_vars,
                 unsigned k, const std::vector<Rational>& base) {
  if (base.size() != base_vars.size()) {
    throw Error(ErrorKind::shape, "base point has " + std::to_string(base.size()) +
                                      " entries for " + std::to_string(base_vars.size()) +
                                      " variables");
  }
  for (const auto& s : sections) {
    for (const auto& v : s.used_vars()) {
      if (std::find(base_vars.begin(), base_vars.end(), v) == base_vars.end()) {
        throw Error(ErrorKind::missing_variable, "section uses '" + v + "', not a base variable");
      }
    }
  }
  JetSpace space(base_vars.size(), sections.size(), k);
  std::map<std::string, Rational> at;
  for (std::size_t i = 0; i < base.size(); ++i) at[base_vars[i]] = base[i];
  JetPoint out{space, base, {}};
  for (const auto& c : space.fiber_coordinates()) {
    Polynomial d = sections[c.component];
    for (std::size_t i = 0; i < c.sigma.size(); ++i) {
      for (std::uint32_t r = 0; r < c.sigma[i]; ++r) d = d.derivative(base_vars[i]);
    }
    out.values.push_back(evaluate(d, at));
  }
  return out;
}

JetPoint project(const JetPoint& point) {
  if (point.space.k() == 0) {
    throw Error(ErrorKind::invalid_argument, "cannot project below order 0");
  }
  JetSpace lower(point.space.n(), point.space.m(), point.space.k() - 1);
  JetPoint out{lower, point.base, {}};
  out.values.assign(point.values.begin(),
                    point.values.begin() + static_cast<std::ptrdiff_t>(lower.fiber_dim()));
  return out;
}

JetPoint disk_section_to_jet(const std::vector<Polynomial>& elements, const WeilAlgebra& disk) {
  const std::size_t n = disk.embedding_dim();
  JetSpace space(n, elements.size(), disk.nilpotency_order());
  JetPoint out{space, std::vector<Rational>(n, Rational(0)), {}};
  std::vector<Polynomial> nf;
  for (const auto& e : elements) nf.push_back(disk.reduce(e.aligned(disk.vars())));
  for (const auto& c : space.fiber_coordinates()) {
    Monomial m = Polynomial(disk.vars()).monomial_of(c.sigma);
    out.values.push_back(nf[c.component].coefficient(m) * factorial(c.sigma));
  }
  return out;
}

std::vector<Polynomial> jet_to_disk_section(const JetPoint& point, const WeilAlgebra& disk) {
  if (point.space.n() != disk.embedding_dim() || point.space.k() != disk.nilpotency_order()) {
    throw Error(ErrorKind::shape, "jet order or dimension does not match " + disk.name());
  }
  std::vector<std::vector<Term>> terms(point.space.m());
  const auto& fc = point.space.fiber_coordinates();
  for (std::size_t i = 0; i < fc.size(); ++i) {
    terms[fc[i].component].push_back({fc[i].sigma, point.values[i] / factorial(fc[i].sigma)});
  }
  std::vector<Polynomial> out;
  for (auto& t : terms) out.push_back(Polynomial::from_terms(disk.vars(), std::move(t)));
  return out;
}

std::vector<std::size_t> rinf_dims(std::size_t levels) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= levels; ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> jet_dims(std::size_t n, std::size_t m, unsigned levels) {
  std::vector<std::size_t> out;
  for (unsigned k = 0; k <= levels; ++k) out.push_back(n + jet_fiber_dim(n, m, k));
  return out;
}

namespace {

void validate(const TruncatedProPlot& family) {
  if (family.dims.size() != family.levels.size() || family.dims.empty()) {
    throw Error(ErrorKind::shape, "family needs one dimension per level");
  }
  for (std::size_t i = 0; i < family.dims.size(); ++i) {
    if (family.levels[i].size() != family.dims[i]) {
      throw Error(ErrorKind::shape, "level " + std::to_string(i) + " has " +
                                        std::to_string(family.levels[i].size()) +
                                        " components, expected " + std::to_string(family.dims[i]));
    }
    if (i > 0 && family.dims[i] < family.dims[i - 1]) {
      throw Error(ErrorKind::shape, "level dimensions must not decrease");
    }
  }
}

}  // namespace

std::optional<std::size_t> first_incompatible_level(const TruncatedProPlot& family) {
  validate(family);
  const WeilAlgebra& A = family.source.thickening();
  const std::size_t n = family.levels.size();
  std::vector<char> bad(n, 0);
  for_each_index(n, Execution::parallel, [&](std::size_t i) {
    if (i == 0) return;
    for (std::size_t c = 0; c < family.dims[i - 1]; ++c) {
      if (!(A.reduce(family.levels[i][c]) == A.reduce(family.levels[i - 1][c]))) {
        bad[i] = 1;
        return;
      }
    }
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (bad[i]) return i;
  }
  return std::nullopt;
}

FormalMorphism cone_to_plot(const TruncatedProPlot& family) {
  if (auto bad = first_incompatible_level(family)) {
    throw Error(ErrorKind::incompatible_cone,
                "level " + std::to_string(*bad) + " does not truncate to level " +
                    std::to_string(*bad - 1));
  }
  return FormalMorphism(family.source, rk_space(family.dims.back()), family.levels.back());
}

TruncatedProPlot plot_to_cone(const FormalMorphism& plot, const std::vector<std::size_t>& dims) {
  TruncatedProPlot out{plot.source(), dims, {}};
  for (std::size_t d : dims) {
    if (d > plot.components().size()) {
      throw Error(ErrorKind::shape, "plot has fewer than " + std::to_string(d) + " components");
    }
    out.levels.emplace_back(plot.components().begin(),
                            plot.components().begin() + static_cast<std::ptrdiff_t>(d));
  }
  validate(out);
  return out;
}

JetLift lift_jet_plot(const TruncatedProPlot& family) {
  FormalMorphism top = cone_to_plot(family);
  FactorizationPair pair = lift_plot(family.source, top.components());
  FormalMorphism c = composite(pair);
  const WeilAlgebra& A = family.source.thickening();
  JetLift out{pair, std::vector<bool>(family.levels.size(), true)};
  for (std::size_t i = 0; i < family.levels.size(); ++i) {
    for (std::size_t j = 0; j < family.dims[i]; ++j) {
      if (!(c.component(j) == A.reduce(family.levels[i][j]))) out.level_ok[i] = false;
    }
  }
  return out;
}

}  // namespace jetkernel

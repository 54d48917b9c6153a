#include "jetkernel/formal.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "jetkernel/error.hpp"
#include "jetkernel/linalg.hpp"
#include "jetkernel/parse.hpp"

namespace jetkernel {

namespace {

std::map<std::string, Polynomial> coordinate_assignment(const FormalSpace& space,
                                                        const std::vector<Polynomial>& images) {
  std::map<std::string, Polynomial> out;
  const auto& coords = space.coordinates();
  for (std::size_t i = 0; i < coords.size(); ++i) out.emplace(coords[i], images[i]);
  return out;
}

// True when no term of `p` is free of the nilpotent variables.
bool vanishes_at_origin_of(const Polynomial& p, const std::vector<std::string>& eps) {
  std::vector<int> idx;
  for (const auto& e : eps) idx.push_back(p.var_index(e));
  for (const auto& t : p.terms()) {
    bool has_eps = false;
    for (int i : idx) {
      if (i >= 0 && t.exp[static_cast<std::size_t>(i)] > 0) has_eps = true;
    }
    if (!has_eps) return false;
  }
  return true;
}

std::map<std::string, Polynomial> zero_assignment(const std::vector<std::string>& vars) {
  std::map<std::string, Polynomial> out;
  for (const auto& v : vars) out.emplace(v, Polynomial());
  return out;
}

struct AffineParts {
  Rational constant;
  RationalVector linear;  // one entry per coordinate
};

std::optional<AffineParts> affine_parts(const Polynomial& p, const std::vector<std::string>& coords) {
  if (p.total_degree() > 1) return std::nullopt;
  const Polynomial a = p.aligned(union_vars(coords, p.used_vars()));
  if (a.vars().size() != coords.size()) return std::nullopt;
  AffineParts out{Rational(0), RationalVector(coords.size(), Rational(0))};
  for (const auto& t : a.terms()) {
    auto it = std::find(t.exp.begin(), t.exp.end(), 1U);
    if (it == t.exp.end()) {
      out.constant = t.coeff;
    } else {
      out.linear[static_cast<std::size_t>(it - t.exp.begin())] = t.coeff;
    }
  }
  return out;
}

// Determinant of a small square matrix of polynomials by cofactor expansion.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant({}, Rational(1));
  if (n == 1) return m[0][0];
  Polynomial sum;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * determinant(minor);
    if (c % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

// Calls fn on each k-subset of {0..n-1} until it returns false.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return true;
  for (;;) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr std::size_t kMinorLimit = 20000;

}  // namespace

FormalSpace::FormalSpace(std::string name, std::vector<std::string> params,
                         WeilAlgebra thickening)
    : name_(std::move(name)), params_(std::move(params)), thickening_(std::move(thickening)) {
  coords_ = params_;
  for (const auto& v : thickening_.vars()) {
    if (std::find(coords_.begin(), coords_.end(), v) != coords_.end()) {
      throw Error(ErrorKind::invalid_argument,
                  "coordinate '" + v + "' is both a parameter and a nilpotent variable");
    }
    coords_.push_back(v);
  }
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (std::find(params_.begin() + static_cast<std::ptrdiff_t>(i) + 1, params_.end(),
                  params_[i]) != params_.end()) {
      throw Error(ErrorKind::invalid_argument, "duplicate coordinate '" + params_[i] + "'");
    }
  }
}

FormalSpace FormalSpace::cartesian(std::string name, std::vector<std::string> coords) {
  return FormalSpace(std::move(name), std::move(coords), point_algebra());
}

FormalMorphism::FormalMorphism(Unchecked, FormalSpace source, FormalSpace target,
                               std::vector<Polynomial> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (components_.size() != target_.dim()) {
    throw Error(ErrorKind::shape, "morphism into " + target_.name() + " needs " +
                                      std::to_string(target_.dim()) + " components, got " +
                                      std::to_string(components_.size()));
  }
  for (auto& c : components_) {
    c = source_.thickening().reduce(c.aligned(union_vars(source_.coordinates(), c.used_vars())));
    for (const auto& v : c.used_vars()) {
      const auto& sc = source_.coordinates();
      if (std::find(sc.begin(), sc.end(), v) == sc.end()) {
        throw Error(ErrorKind::type_mismatch,
                    "component uses '" + v + "', which is not a coordinate of " + source_.name());
      }
    }
    c = c.aligned(source_.coordinates());
  }
}

FormalMorphism::FormalMorphism(FormalSpace source, FormalSpace target,
                               std::vector<Polynomial> components)
    : FormalMorphism(Unchecked{}, std::move(source), std::move(target), std::move(components)) {
  if (!is_well_defined(*this)) {
    throw Error(ErrorKind::invalid_argument,
                "components do not define an algebra map out of " + target_.name());
  }
}

FormalMorphism FormalMorphism::parse(FormalSpace source, FormalSpace target,
                                     const std::vector<std::string>& components) {
  std::vector<Polynomial> comps;
  for (const auto& c : components) comps.push_back(parse_polynomial(c, source.coordinates(), true));
  return FormalMorphism(std::move(source), std::move(target), std::move(comps));
}

FormalMorphism FormalMorphism::identity(const FormalSpace& space) {
  std::vector<Polynomial> comps;
  for (const auto& c : space.coordinates()) comps.push_back(Polynomial::variable(space.coordinates(), c));
  return FormalMorphism(Unchecked{}, space, space, std::move(comps));
}

bool is_well_defined(const FormalMorphism& m) {
  const auto& src = m.source();
  const auto& tgt = m.target();
  if (m.components().size() != tgt.dim()) return false;
  const std::size_t q = tgt.params().size();
  for (std::size_t i = q; i < tgt.dim(); ++i) {
    if (!vanishes_at_origin_of(m.component(i), src.thickening().vars())) return false;
  }
  if (tgt.thickening().generators().empty()) return true;
  auto assignment = coordinate_assignment(tgt, m.components());
  for (const auto& h : tgt.thickening().generators()) {
    Polynomial pulled = substitute(h, assignment, &src.coordinates());
    if (!src.thickening().reduce(pulled).is_zero()) return false;
  }
  return true;
}

FormalMorphism compose(const FormalMorphism& g, const FormalMorphism& f) {
  if (!(f.target() == g.source())) {
    throw Error(ErrorKind::type_mismatch, "cannot compose: target " + f.target().name() +
                                              " does not match source " + g.source().name());
  }
  auto assignment = coordinate_assignment(f.target(), f.components());
  std::vector<Polynomial> comps;
  comps.reserve(g.components().size());
  for (const auto& c : g.components()) {
    comps.push_back(substitute(c, assignment, &f.source().coordinates()));
  }
  return FormalMorphism(FormalMorphism::Unchecked{}, f.source(), g.target(), std::move(comps));
}

bool is_mono_point(const FormalMorphism& iota) {
  const auto& src = iota.source();
  if (!src.params().empty()) {
    throw Error(ErrorKind::shape, "is_mono_point expects a source without parameters");
  }
  const WeilAlgebra& A = src.thickening();
  EchelonSpan span(A.dim());
  Polynomial one = Polynomial::constant(A.vars(), Rational(1));
  span.insert(A.coordinates(one));
  std::vector<Polynomial> frontier{one};
  while (!frontier.empty() && span.rank() < A.dim()) {
    std::vector<Polynomial> next;
    for (const auto& x : frontier) {
      for (const auto& c : iota.components()) {
        Polynomial y = A.reduce(x * c);
        if (span.insert(A.coordinates(y))) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return span.rank() == A.dim();
}

bool is_formal_embedding(const FormalMorphism& iota) {
  const auto& src = iota.source();
  const auto& tgt = iota.target();
  if (!tgt.is_cartesian()) {
    throw Error(ErrorKind::type_mismatch, "formal embeddings map into Cartesian spaces");
  }
  const auto& params = src.params();
  const auto& eps = src.thickening().vars();
  const std::size_t q = params.size();
  const std::size_t d = eps.size();

  // Restriction to U x {0}.
  auto eps_zero = zero_assignment(eps);
  RationalMatrix base_linear;
  for (const auto& c : iota.components()) {
    Polynomial base = substitute_partial(c, eps_zero);
    auto parts = affine_parts(base, params);
    if (!parts) {
      throw Error(ErrorKind::undecidable_input,
                  "parameter part " + base.to_string() + " is not affine-linear");
    }
    base_linear.push_back(parts->linear);
  }
  if (q > 0 && rank(base_linear) < q) return false;
  if (src.thickening().is_point()) return true;

  // Fiber monomorphism: the first-order parts of the components together
  // with the linear parts of the ideal generators must span all d directions
  // at every parameter value.
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& c : iota.components()) {
    std::vector<Polynomial> row(d, Polynomial(params));
    const Polynomial a = c.aligned(src.coordinates());
    for (const auto& t : a.terms()) {
      std::size_t eps_deg = 0;
      std::size_t which = 0;
      for (std::size_t j = 0; j < d; ++j) {
        eps_deg += t.exp[q + j];
        if (t.exp[q + j] > 0) which = j;
      }
      if (eps_deg != 1) continue;
      Exponents pe(t.exp.begin(), t.exp.begin() + static_cast<std::ptrdiff_t>(q));
      row[which] += Polynomial::monomial(params, std::move(pe), t.coeff);
    }
    rows.push_back(std::move(row));
  }
  for (const auto& h : src.thickening().generators()) {
    std::vector<Polynomial> row(d, Polynomial(params));
    const Polynomial ha = h.aligned(eps);
    for (const auto& t : ha.terms()) {
      if (total_degree(t.exp) != 1) continue;
      auto it = std::find(t.exp.begin(), t.exp.end(), 1U);
      row[static_cast<std::size_t>(it - t.exp.begin())] = Polynomial::constant(params, t.coeff);
    }
    rows.push_back(std::move(row));
  }

  bool constant_entries = true;
  for (const auto& row : rows) {
    for (const auto& e : row) constant_entries = constant_entries && e.is_constant();
  }
  if (constant_entries) {
    RationalMatrix m;
    for (const auto& row : rows) {
      RationalVector r;
      for (const auto& e : row) r.push_back(e.constant_term());
      m.push_back(std::move(r));
    }
    return rank(m) == d;
  }
  if (binomial(rows.size(), d) > kMinorLimit) {
    throw Error(ErrorKind::undecidable_input, "too many minors to decide the fiber condition");
  }
  bool any_nonzero = false;
  bool constant_minor = false;
  for_each_subset(rows.size(), d, [&](const std::vector<std::size_t>& pick) {
    std::vector<std::vector<Polynomial>> m;
    for (std::size_t r : pick) m.push_back(rows[r]);
    Polynomial det = determinant(m);
    if (det.is_zero()) return true;
    any_nonzero = true;
    if (det.is_constant()) {
      constant_minor = true;
      return false;
    }
    return true;
  });
  if (constant_minor) return true;
  if (!any_nonzero) return false;
  throw Error(ErrorKind::undecidable_input,
              "fiber monomorphism depends on the real zero set of a parameter polynomial");
}

bool is_rectified(const FormalMorphism& iota) {
  const auto& src = iota.source();
  if (!iota.target().is_cartesian()) return false;
  const auto& coords = src.coordinates();
  if (iota.components().size() < coords.size()) return false;
  for (std::size_t i = 0; i < iota.components().size(); ++i) {
    Polynomial expected = i < coords.size() ? Polynomial::variable(coords, coords[i])
                                            : Polynomial(coords);
    if (!(iota.component(i) == expected)) return false;
  }
  return true;
}

EmbeddingForm classify_embedding(const FormalMorphism& iota) {
  if (is_rectified(iota)) return {iota, EmbeddingKind::rectified};
  if (iota.source().params().empty() && is_mono_point(iota)) {
    return {iota, EmbeddingKind::mono_at_point};
  }
  return {iota, EmbeddingKind::general};
}

AffineRectification rectify_affine(const FormalMorphism& iota) {
  const auto& src = iota.source();
  const auto& tgt = iota.target();
  if (!tgt.is_cartesian()) throw Error(ErrorKind::shape, "rectify_affine needs a Cartesian target");
  const auto& scoords = src.coordinates();
  const std::size_t s = scoords.size();
  const std::size_t n = tgt.dim();
  RationalMatrix A;
  RationalVector b;
  for (const auto& c : iota.components()) {
    auto parts = affine_parts(c, scoords);
    if (!parts) {
      throw Error(ErrorKind::shape, "component " + c.to_string() + " is not affine-linear");
    }
    A.push_back(parts->linear);
    b.push_back(parts->constant);
  }
  if (s > n || rank(A) < s) {
    throw Error(ErrorKind::rank_deficient, "linear part of the embedding is not of full rank");
  }
  // Complete the columns of A by unit vectors at the non-pivot rows.
  EchelonSpan rows(s);
  std::vector<std::size_t> complement;
  for (std::size_t j = 0; j < n; ++j) {
    if (!rows.insert(A[j])) complement.push_back(j);
  }
  RationalMatrix B(n, RationalVector(n, Rational(0)));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < s; ++c) B[j][c] = A[j][c];
  }
  for (std::size_t k = 0; k < complement.size(); ++k) B[complement[k]][s + k] = 1;
  auto M = inverse(B);
  if (!M) throw Error(ErrorKind::internal_consistency, "basis completion is singular");

  const auto& tc = tgt.coordinates();
  std::vector<Polynomial> shifted;
  for (std::size_t j = 0; j < n; ++j) {
    shifted.push_back(Polynomial::variable(tc, tc[j]) - Polynomial::constant(tc, b[j]));
  }
  std::vector<Polynomial> fwd(n, Polynomial(tc));
  std::vector<Polynomial> back(n, Polynomial(tc));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((*M)[k][j] != 0) fwd[k] += shifted[j].scaled((*M)[k][j]);
      if (B[k][j] != 0) back[k] += Polynomial::variable(tc, tc[j]).scaled(B[k][j]);
    }
    back[k] += Polynomial::constant(tc, b[k]);
  }
  return {FormalMorphism(tgt, tgt, std::move(fwd)), FormalMorphism(tgt, tgt, std::move(back))};
}

ShearRectification shear_rectify(const FormalMorphism& iota) {
  const auto& src = iota.source();
  const auto& tgt = iota.target();
  const auto& params = src.params();
  const auto& eps = src.thickening().vars();
  const std::size_t q = params.size();
  const std::size_t d = eps.size();
  if (!tgt.is_cartesian() || tgt.dim() < q + d) {
    throw Error(ErrorKind::shape, "shear_rectify expects a map into V x U x R^d");
  }
  const std::size_t p = tgt.dim() - q - d;
  const auto& tc = tgt.coordinates();
  const auto& sc = src.coordinates();
  for (std::size_t i = 0; i < q + d; ++i) {
    if (!(iota.component(p + i) == Polynomial::variable(sc, sc[i]))) {
      throw Error(ErrorKind::shape, "component " + std::to_string(p + i) +
                                        " is not the canonical coordinate " + sc[i]);
    }
  }
  // R = U x R^d x V, reusing the target's coordinate names.
  std::vector<std::string> rc(tc.begin() + static_cast<std::ptrdiff_t>(p), tc.end());
  rc.insert(rc.end(), tc.begin(), tc.begin() + static_cast<std::ptrdiff_t>(p));
  FormalSpace R = FormalSpace::cartesian(tgt.name() + "_r", rc);

  std::map<std::string, Polynomial> to_target;
  for (std::size_t i = 0; i < q + d; ++i) to_target.emplace(sc[i], Polynomial::variable(tc, tc[p + i]));
  std::vector<Polynomial> lift;
  for (std::size_t k = 0; k < p; ++k) lift.push_back(substitute(iota.component(k), to_target, &tc));

  std::vector<Polynomial> fwd;  // R -> T, written in R's coordinates (same names)
  std::vector<Polynomial> back;  // T -> R
  for (std::size_t k = 0; k < p; ++k) {
    fwd.push_back(Polynomial::variable(rc, tc[k]) + lift[k].aligned(rc));
  }
  for (std::size_t i = 0; i < q + d; ++i) fwd.push_back(Polynomial::variable(rc, tc[p + i]));
  for (std::size_t i = 0; i < q + d; ++i) back.push_back(Polynomial::variable(tc, tc[p + i]));
  for (std::size_t k = 0; k < p; ++k) back.push_back(Polynomial::variable(tc, tc[k]) - lift[k]);

  std::vector<Polynomial> rect;
  for (std::size_t i = 0; i < q + d; ++i) rect.push_back(Polynomial::variable(sc, sc[i]));
  for (std::size_t k = 0; k < p; ++k) rect.push_back(Polynomial(sc));

  return {FormalMorphism(R, tgt, std::move(fwd)), FormalMorphism(tgt, R, std::move(back)),
          FormalMorphism(src, R, std::move(rect))};
}

}  // namespace jetkernel

#pragma once

// Weil algebras: finite-dimensional quotients Q[e1..ed]/I with I nilpotent
// modulo the maximal ideal, presented by user-chosen generators.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "jetkernel/groebner.hpp"
#include "jetkernel/linalg.hpp"
#include "jetkernel/polynomial.hpp"

namespace jetkernel {

struct WeilOptions {
  unsigned k_max = 32;
  std::string name;
  /// Names of the nilpotent variables. When empty they are inferred from the
  /// generators and padded with e1, e2, ... up to the requested dimension.
  std::vector<std::string> vars;
  GroebnerOptions groebner = default_groebner_options();
};

/// Immutable value; copies share the underlying data.
class WeilAlgebra {
 public:
  const std::string& name() const { return data_->name; }
  const std::vector<std::string>& vars() const { return data_->vars; }
  std::size_t embedding_dim() const { return data_->vars.size(); }
  const GroebnerBasis& ideal() const { return data_->ideal; }
  /// The chosen generators h_1..h_n, verbatim.
  const std::vector<Polynomial>& generators() const { return data_->ideal.generators; }
  unsigned nilpotency_order() const { return data_->k; }
  /// Standard monomials, by ascending degree and descending grevlex within a
  /// degree; the first entry is the constant monomial.
  const std::vector<Exponents>& basis() const { return data_->basis; }
  std::vector<Monomial> basis_monomials() const;
  std::size_t dim() const { return data_->basis.size(); }
  bool is_point() const { return dim() == 1; }

  /// Normal form of `p` modulo the ideal. Variables other than the algebra's
  /// are treated as parameters (block order).
  Polynomial reduce(const Polynomial& p) const;

  /// Coefficients of a parameter-free normal form on the monomial basis.
  RationalVector coordinates(const Polynomial& normal_form) const;
  Polynomial from_coordinates(const RationalVector& coords) const;

  /// Same variables and the same ideal (reduced bases agree).
  friend bool operator==(const WeilAlgebra& a, const WeilAlgebra& b);

 private:
  struct Data {
    std::string name;
    std::vector<std::string> vars;
    GroebnerBasis ideal;
    unsigned k = 0;
    std::vector<Exponents> basis;
  };
  explicit WeilAlgebra(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;

  friend WeilAlgebra make_weil(std::size_t, const std::vector<Polynomial>&, const WeilOptions&);
};

/// Builds the Weil algebra presented by `generators` in `d` variables.
/// Raises Error(not_nilpotent) when some monomial of degree k_max + 1 has
/// nonzero normal form, or when the generators span the unit ideal.
WeilAlgebra make_weil(std::size_t d, const std::vector<Polynomial>& generators,
                      const WeilOptions& options = {});

/// Infinitesimal disk of dimension d and order k: Q[e1..ed]/(e1..ed)^(k+1).
WeilAlgebra disk(std::size_t d, unsigned k, const std::vector<std::string>& vars = {});

/// The algebra Q of the reduced point.
WeilAlgebra point_algebra();

/// Tensor product; colliding variable names of `b` are renamed apart.
WeilAlgebra weil_tensor(const WeilAlgebra& a, const WeilAlgebra& b);

/// All exponent vectors of total degree exactly `degree` in `n` variables,
/// in descending grevlex order.
std::vector<Exponents> monomials_of_degree(std::size_t n, std::uint32_t degree);

struct WeilElement {
  WeilAlgebra algebra;
  Polynomial value;  // normal form
};

WeilElement normal_form(const Polynomial& p, const WeilAlgebra& algebra);

/// Coefficients mu over the chosen generators with p == sum_i h_i * mu_i
/// exactly. Raises Error(not_in_ideal) when p does not reduce to zero.
std::vector<Polynomial> ideal_decompose(const Polynomial& p, const WeilAlgebra& algebra);

/// Returns a name not in `taken`, derived from `base`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

}  // namespace jetkernel

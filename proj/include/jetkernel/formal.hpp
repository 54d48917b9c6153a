#pragma once

// Formal Cartesian spaces U x D and their morphisms, given by the pullbacks
// of the target's coordinate functions.

#include <cstddef>
#include <string>
#include <vector>

#include "jetkernel/polynomial.hpp"
#include "jetkernel/weil.hpp"

namespace jetkernel {

class FormalSpace {
 public:
  FormalSpace() : FormalSpace("pt", {}, point_algebra()) {}
  FormalSpace(std::string name, std::vector<std::string> params, WeilAlgebra thickening);

  /// The ordinary Cartesian space with the given coordinate names.
  static FormalSpace cartesian(std::string name, std::vector<std::string> coords);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& params() const { return params_; }
  const WeilAlgebra& thickening() const { return thickening_; }
  /// Parameter coordinates followed by the thickening's nilpotent variables.
  const std::vector<std::string>& coordinates() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  bool is_cartesian() const { return thickening_.embedding_dim() == 0; }

  /// Names are not compared.
  friend bool operator==(const FormalSpace& a, const FormalSpace& b) {
    return a.params_ == b.params_ && a.thickening_ == b.thickening_;
  }

 private:
  std::string name_;
  std::vector<std::string> params_;
  WeilAlgebra thickening_;
  std::vector<std::string> coords_;
};

class FormalMorphism {
 public:
  /// Components are given in the source's coordinates, one per target
  /// coordinate, and are stored in normal form. Construction checks that the
  /// nilpotent target coordinates receive nilpotent components and that every
  /// target ideal generator pulls back to zero.
  FormalMorphism(FormalSpace source, FormalSpace target, std::vector<Polynomial> components);

  /// Parses component strings in the source's coordinates.
  static FormalMorphism parse(FormalSpace source, FormalSpace target,
                              const std::vector<std::string>& components);
  static FormalMorphism identity(const FormalSpace& space);

  const FormalSpace& source() const { return source_; }
  const FormalSpace& target() const { return target_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& component(std::size_t i) const { return components_.at(i); }

  friend bool operator==(const FormalMorphism& a, const FormalMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.components_ == b.components_;
  }

 private:
  struct Unchecked {};
  FormalMorphism(Unchecked, FormalSpace source, FormalSpace target,
                 std::vector<Polynomial> components);

  FormalSpace source_;
  FormalSpace target_;
  std::vector<Polynomial> components_;

  friend FormalMorphism compose(const FormalMorphism& g, const FormalMorphism& f);
};

/// Re-checks the construction invariants of a morphism.
bool is_well_defined(const FormalMorphism& m);

/// g o f. Raises Error(type_mismatch) unless f.target() == g.source().
FormalMorphism compose(const FormalMorphism& g, const FormalMorphism& f);

/// For a morphism out of a pure thickened point: whether the dual algebra map
/// is surjective, i.e. the components generate the Weil algebra.
bool is_mono_point(const FormalMorphism& iota);

/// Formal embedding test for maps into Cartesian spaces: the restriction to
/// U x {0} must be affine-linear and injective, and every fiber restriction
/// must be a monomorphism. Non-affine parameter parts, and fiber conditions
/// whose truth depends on the real zero set of a nonconstant polynomial,
/// raise Error(undecidable_input).
bool is_formal_embedding(const FormalMorphism& iota);

/// True when iota = (u, e, 0, ..., 0) into a Cartesian space.
bool is_rectified(const FormalMorphism& iota);

enum class EmbeddingKind { general, mono_at_point, rectified };

struct EmbeddingForm {
  FormalMorphism morphism;
  EmbeddingKind kind;
};

EmbeddingForm classify_embedding(const FormalMorphism& iota);

struct AffineRectification {
  FormalMorphism diffeo;   // target -> target, diffeo o iota is rectified
  FormalMorphism inverse;  // target -> target
};

/// Affine change of target coordinates putting an affine-linear iota of full
/// rank into rectified position. Raises Error(rank_deficient) or Error(shape).
AffineRectification rectify_affine(const FormalMorphism& iota);

struct ShearRectification {
  FormalMorphism diffeo;     // R -> T, diffeo o rectified == iota
  FormalMorphism inverse;    // T -> R
  FormalMorphism rectified;  // U x D -> R, components (u, e, 0)
};

/// For iota = (i, u, e) : U x D -> T = V x U x R^d, the polynomial shear
/// (u', t, v) -> (v + lift(u', t), u', t) from R = U x R^d x V onto T, where
/// lift is the normal-form representative of i. Raises Error(shape) when
/// iota is not of that shape.
ShearRectification shear_rectify(const FormalMorphism& iota);

}  // namespace jetkernel

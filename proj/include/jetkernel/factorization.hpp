#pragma once

// Factorizations of plots U x D -> V -> R^K through Cartesian spaces V, the
// generating relation between them, explicit witness spans for pairs with
// equal composites, and the resulting zig-zag equivalence decision.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jetkernel/formal.hpp"

namespace jetkernel {

/// (iota, f) with iota : U x D -> V and f : V -> R^K, V and R^K Cartesian.
class FactorizationPair {
 public:
  FactorizationPair(FormalMorphism iota, FormalMorphism f);

  const FormalMorphism& iota() const { return iota_; }
  const FormalMorphism& f() const { return f_; }
  const FormalSpace& source() const { return iota_.source(); }
  const FormalSpace& middle() const { return iota_.target(); }
  std::size_t level() const { return f_.target().dim(); }

  friend bool operator==(const FactorizationPair& a, const FactorizationPair& b) {
    return a.iota_ == b.iota_ && a.f_ == b.f_;
  }

 private:
  FormalMorphism iota_;
  FormalMorphism f_;
};

/// f o iota, in normal form on U x D.
FormalMorphism composite(const FactorizationPair& p);

/// Index of the first composite component that differs, or nullopt when the
/// composites agree. Raises Error(shape) for different sources or levels.
std::optional<std::size_t> first_composite_difference(const FactorizationPair& p,
                                                      const FactorizationPair& q);
bool equal_composites(const FactorizationPair& p, const FactorizationPair& q);

struct IdentityCheck {
  std::string identity;
  bool exact = false;
};
using VerificationRecord = std::vector<IdentityCheck>;

bool all_exact(const VerificationRecord& record);
/// Name of the first violated identity, or empty.
std::string first_violation(const VerificationRecord& record);

enum class Direction { forward, backward };

/// One instance of the generating relation. Forward: connecting maps
/// from.middle() -> to.middle() with connecting o iota_from = iota_to and
/// f_from = f_to o connecting. Backward: the same with from and to swapped.
struct RelationStep {
  FactorizationPair from;
  FactorizationPair to;
  FormalMorphism connecting;
  Direction direction = Direction::forward;
};

VerificationRecord verify_step(const RelationStep& step);

struct EmbeddedFactorization {
  FactorizationPair pair;  // iota = (i, u, e) into V x U x R^d, f o pr_V
  RelationStep step;       // pair -> original, connecting map pr_V
};

EmbeddedFactorization embed_factorization(const FactorizationPair& p);

struct WitnessSpan {
  FormalSpace w;
  FormalMorphism alpha;        // V -> W
  FormalMorphism alpha_prime;  // V' -> W
  FormalMorphism phi;          // W -> R^K
  /// delta[k] = f'_k(u, t, 0) - f_k(u, t, 0) in the source coordinates.
  std::vector<Polynomial> delta;
  /// mu[i][k], coefficient of generator i in delta[k].
  std::vector<std::vector<Polynomial>> mu;
  /// Generators h_i in the nilpotent variables.
  std::vector<Polynomial> h;
  /// The rectified pairs the span was built on.
  FactorizationPair rectified;
  FactorizationPair rectified_prime;
  VerificationRecord verification;
};

/// Checks the span identities against the original pairs.
VerificationRecord verify_witness(const WitnessSpan& span, const FactorizationPair& p,
                                  const FactorizationPair& q);

/// Witness for two monomorphisms out of D1(1) = Spec Q[x]/(x^2), affine-linear
/// into their Cartesian spaces; rectified internally, with mu extracted by the
/// order-1 Hadamard quotient and h = (t^2). Raises Error(non_mono),
/// Error(nonvanishing_jet) or Error(shape).
WitnessSpan witness_d1(const FactorizationPair& p, const FactorizationPair& q);

/// Witness over a pure thickened point with both iotas rectified; mu comes
/// from the ideal decomposition over the chosen generators.
/// Raises Error(not_rectified) or Error(not_in_ideal).
WitnessSpan witness_point(const FactorizationPair& p, const FactorizationPair& q);

/// Parameterized version of witness_point over U x D.
WitnessSpan witness_general(const FactorizationPair& p, const FactorizationPair& q);

struct EquivalenceChain {
  std::vector<RelationStep> steps;
  std::optional<WitnessSpan> span;
};

VerificationRecord verify_chain(const EquivalenceChain& chain, const FactorizationPair& p,
                                const FactorizationPair& q);

struct EquivalenceDecision {
  bool equivalent = false;
  std::optional<EquivalenceChain> chain;
  std::optional<std::size_t> first_difference;
  VerificationRecord verification;
};

/// Either a verified zig-zag p ~ ... ~ q, or the first differing composite
/// component. Raises Error(internal_consistency) if a constructed chain fails
/// verification.
EquivalenceDecision decide_equivalence(const FactorizationPair& p, const FactorizationPair& q);

/// Factorization of a plot through V = U x R^d using normal-form
/// representatives; composite(lift_plot(s, plot)) reproduces the plot.
FactorizationPair lift_plot(const FormalSpace& source, const std::vector<Polynomial>& plot);

/// R^K with coordinates y1..yK.
FormalSpace rk_space(std::size_t k);

}  // namespace jetkernel

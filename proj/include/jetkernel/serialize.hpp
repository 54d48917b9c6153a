#pragma once

// JSON persistence. Polynomials are embedded in the text grammar; spaces,
// algebras and morphisms may be referenced by name inside a Workspace or
// given inline.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jetkernel/factorization.hpp"
#include "jetkernel/formal.hpp"
#include "jetkernel/hadamard.hpp"
#include "jetkernel/jets.hpp"
#include "jetkernel/weil.hpp"

namespace jetkernel {

using Json = nlohmann::ordered_json;

Json to_json(const Polynomial& p);
Json to_json(const WeilAlgebra& a);
Json to_json(const FormalSpace& s);
Json to_json(const FormalMorphism& m);
Json to_json(const FactorizationPair& p);
Json to_json(const VerificationRecord& r);
Json to_json(const RelationStep& s);
Json to_json(const WitnessSpan& s);
Json to_json(const EquivalenceDecision& d);
Json to_json(const EmbeddedFactorization& e);
Json to_json(const JetPoint& p);
Json to_json(const HadamardExpansion& h);
Json to_json(const TruncatedProPlot& f);

/// Dimension, nilpotency order, reduced basis and monomial basis.
Json algebra_report(const WeilAlgebra& a);

struct WorkspaceConfig {
  unsigned k_max = 32;
  std::size_t level = 8;
  std::size_t pair_cap = 100000;
  std::uint64_t seed = 42;
};

class Workspace {
 public:
  WorkspaceConfig config;

  /// Raises Error(parse) on malformed documents, Error(invalid_argument) on
  /// duplicate names, and whatever construction raises for invalid objects.
  static Workspace from_json(const Json& doc, WorkspaceConfig defaults = {});
  Json to_json() const;

  void add(const std::string& name, WeilAlgebra a);
  void add(const std::string& name, FormalSpace s);
  void add(const std::string& name, FormalMorphism m);
  void add(const std::string& name, FactorizationPair p);

  const WeilAlgebra& algebra(const std::string& name) const;
  const FormalSpace& space(const std::string& name) const;
  const FormalMorphism& morphism(const std::string& name) const;
  const FactorizationPair& pair(const std::string& name) const;

  const std::vector<std::pair<std::string, WeilAlgebra>>& algebras() const { return algebras_; }
  const std::vector<std::pair<std::string, FormalSpace>>& spaces() const { return spaces_; }
  const std::vector<std::pair<std::string, FormalMorphism>>& morphisms() const { return morphisms_; }
  const std::vector<std::pair<std::string, FactorizationPair>>& pairs() const { return pairs_; }

  /// Readers accept a name (string) or an inline object. Unknown space names
  /// of the form "R^K" resolve to R^K with coordinates y1..yK, and "pt" to
  /// the point.
  WeilAlgebra read_algebra(const Json& j) const;
  FormalSpace read_space(const Json& j) const;
  FormalMorphism read_morphism(const Json& j) const;
  FactorizationPair read_pair(const Json& j) const;
  TruncatedProPlot read_family(const Json& j) const;

 private:
  WeilOptions weil_options() const;

  std::vector<std::pair<std::string, WeilAlgebra>> algebras_;
  std::vector<std::pair<std::string, FormalSpace>> spaces_;
  std::vector<std::pair<std::string, FormalMorphism>> morphisms_;
  std::vector<std::pair<std::string, FactorizationPair>> pairs_;
};

JetPoint read_jet_point(const Json& j);

}  // namespace jetkernel

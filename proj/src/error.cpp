#include "jetkernel/error.hpp"

namespace jetkernel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::missing_variable: return "missing-variable";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::not_nilpotent: return "not-nilpotent";
    case ErrorKind::not_in_ideal: return "not-in-ideal";
    case ErrorKind::type_mismatch: return "type-mismatch";
    case ErrorKind::undecidable_input: return "undecidable-input";
    case ErrorKind::rank_deficient: return "rank-deficient";
    case ErrorKind::shape: return "shape";
    case ErrorKind::nonvanishing_jet: return "nonvanishing-jet";
    case ErrorKind::non_mono: return "non-mono";
    case ErrorKind::not_rectified: return "not-rectified";
    case ErrorKind::incompatible_cone: return "incompatible-cone";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::internal_consistency: return "internal-consistency";
  }
  return "unknown";
}

}  // namespace jetkernel

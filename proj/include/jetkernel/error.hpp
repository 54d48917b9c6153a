#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jetkernel {

enum class ErrorKind {
  parse,
  missing_variable,
  resource_limit,
  not_nilpotent,
  not_in_ideal,
  type_mismatch,
  undecidable_input,
  rank_deficient,
  shape,
  nonvanishing_jet,
  non_mono,
  not_rectified,
  incompatible_cone,
  invalid_argument,
  internal_consistency,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every kernel operation. The kind is stable and
/// machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace jetkernel

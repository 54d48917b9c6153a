#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jetkernel/polynomial.hpp"

namespace jetkernel {

/// Parses the polynomial text grammar:
///
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := integer ['/' integer] | ident ['^' integer]
///
/// Identifiers match [A-Za-z_][A-Za-z0-9_]*. The result is declared over
/// `vars` followed by any further identifiers in order of first appearance.
/// With `strict`, identifiers outside `vars` raise Error(parse).
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars = {},
                            bool strict = false);

bool is_identifier(std::string_view name);

}  // namespace jetkernel

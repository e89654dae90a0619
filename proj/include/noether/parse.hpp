#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "noether/polynomial.hpp"

namespace noether {

/// Parses the polynomial grammar: integer (or integer/integer) constants,
/// variables `[a-z][0-9]*` drawn from `vars`, `+ - * ^`, parentheses.
/// Whitespace is ignored. Errors are ParseError with the 1-based column.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars,
                            const PolyRing& ring);

/// Renders in decreasing term order, e.g. `x^2*y - 3*x + 1/2`. Output parses back.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars);

}  // namespace noether

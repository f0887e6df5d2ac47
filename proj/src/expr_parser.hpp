#pragma once

#include <array>
#include <map>
#include <string_view>

#include "cremona/scalar.hpp"

namespace cremona::detail {

using Exponents = std::array<int, 3>;
using Terms = std::map<Exponents, CycScalar>;

// Parses sums/products/powers of rationals, zeta(n) and the variables x, y, z.
// Division is only allowed by a nonzero constant. Zero terms are dropped.
Terms parse_expression(std::string_view text);

}  // namespace cremona::detail

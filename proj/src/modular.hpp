#pragma once

#include <vector>

#include "cremona/poly.hpp"

namespace cremona::detail {

// True only when the nonzero polynomials are provably coprime: their
// restrictions to a random line, reduced modulo a prime splitting the
// cyclotomic field, have constant gcd. False means "unknown".
bool certainly_coprime(const std::vector<HomPoly>& polys);

}  // namespace cremona::detail

#pragma once

#include <string>
#include <string_view>

#include "bsq/symbol.hpp"

namespace bsq {

// Text form of a symbol: "F ; Q" where F is the real part f and Q the
// perturbation q of p = f + i eps q. When the ';' is absent the whole text is
// Q and F takes its default (I on the circle, x^2 + xi^2 on the plane).
//
// Expressions are sums of products over decimal literals, parentheses,
// non-negative integer powers '^', and the tokens
//   circle:  I, cos(theta), sin(theta), cos(k*theta), sin(k*theta)
//   plane:   x, xi
//
// Throws ParseError on malformed text and ConfigError when the parsed
// coefficients violate the symbol class invariants.
CircleSymbol parse_circle_symbol(std::string_view text);
PlaneSymbol parse_plane_symbol(std::string_view text, double epsilon);

// Canonical text; parsing it back reproduces the coefficient maps exactly.
std::string to_text(const CircleSymbol& sym);
std::string to_text(const PlaneSymbol& sym);

}  // namespace bsq

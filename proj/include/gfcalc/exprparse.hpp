#pragma once

#include <string>

#include "gfcalc/smoothfn.hpp"

namespace gfcalc {

// Parses a smooth expression over the variable x (and u when allow_u) into an
// expression tree. Grammar: + - * parenthesized terms, integer powers ^k,
// division by numeric literals, and the primitives bump, smoothstep, sin,
// cos, exp. Throws ParseError with a position.
SmoothFn parse_smoothfn(const std::string& text, bool allow_u = false);

}  // namespace gfcalc

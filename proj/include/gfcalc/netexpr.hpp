#pragma once

#include <string>

#include "gfcalc/asymptotics.hpp"

namespace gfcalc {

// Net-expression language over the single variable eps: numeric literals,
// + - * / ^, min, max, abs, sin, cos, exp, ln. Returns the evaluation rule.
// Throws ParseError with a position.
NetRule parse_net(const std::string& text);

}  // namespace gfcalc

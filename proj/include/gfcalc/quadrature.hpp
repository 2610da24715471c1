#pragma once

#include <functional>

namespace gfcalc {

using Integrand = std::function<double(double)>;

// Composite 15-point Gauss-Legendre with panel bisection until successive
// refinements differ by less than tol * (1 + |I|). Throws QuadratureError
// (carrying the best estimate and achieved tolerance) when the panel depth
// limit is hit before convergence.
double integrate_fn(const Integrand& f, double a, double b, double tol);

// Single unbisected GL15 panel; building block and cheap estimate.
double gl15(const Integrand& f, double a, double b);

}  // namespace gfcalc

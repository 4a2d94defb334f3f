#pragma once

#include "primecouple/quadrature.hpp"

namespace primecouple {

// Dickman rho: rho = 1 on [0,1], u rho'(u) = -rho(u-1) beyond.  Solved by
// RK4 on a dyadic grid with quartic-order history interpolation; the step is
// derived from quad.abs_tol.  Analytic on [1,2] (1 - log u).  Returns 0 for
// u > 64 where the value is far below double noise.
double dickman_rho(double u, const QuadratureSpec& quad = {});

}  // namespace primecouple

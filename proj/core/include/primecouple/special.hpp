#pragma once

namespace primecouple {

// exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0
double expint_e1(double x);

// regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a)
double gamma_q(double a, double x);

// Kolmogorov tail Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2)
double kolmogorov_q(double t);

}  // namespace primecouple

#pragma once

namespace primecouple {

struct ZetaPair {
    double zeta;        // zeta(1 + delta)
    double zeta_prime;  // zeta'(1 + delta)
};

// Riemann zeta and its derivative just right of the pole.  delta > 0.
// Euler-Maclaurin with a 100-term head and 10 Bernoulli corrections;
// a Laurent (Stieltjes) branch takes over below delta = 1e-5.
// Relative accuracy is a few ulp throughout [1e-12, 60].
ZetaPair zeta_pair_near_one(double delta);
double zeta_near_one(double delta);

// 1/zeta(1+w) for w >= 0.  Vanishes linearly at w = 0.
double inv_zeta_near_one(double w);

// -zeta'/zeta^2 at 1+w for w >= 0, i.e. d/ds [1/zeta(s)].  Equals 1 at w = 0.
double deriv_inv_zeta_near_one(double w);

}  // namespace primecouple

#include "primecouple/dickman.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace primecouple {

namespace {

// 4-point Lagrange read of grid values at real index s
double grid_at(const std::vector<double>& v, double s) {
    int j = static_cast<int>(s);
    if (j < 1) j = 1;
    if (j > static_cast<int>(v.size()) - 3) j = static_cast<int>(v.size()) - 3;
    const double t = s - j;
    const double a = v[j - 1], b = v[j], c = v[j + 1], d = v[j + 2];
    return b + t * ((c - a / 3.0 - b / 2.0 - d / 6.0) +
           t * ((a - 2 * b + c) / 2 + t * ((d - a) / 6 + (b - c) / 2)));
}

}  // namespace

double dickman_rho(double u, const QuadratureSpec& quad) {
    if (!(u >= 0.0)) throw std::domain_error("dickman_rho: u must be nonnegative");
    if (u <= 1.0) return 1.0;
    if (u <= 2.0) return 1.0 - std::log(u);
    if (u > 64.0) return 0.0;

    // dyadic step keeps u-1 exactly on the grid; global error ~ step^4
    int shift = 6;
    while (shift < 13 && std::pow(0.5, 4 * shift) > quad.abs_tol * 1e-2) ++shift;
    const int per_unit = 1 << shift;
    const double h = 1.0 / per_unit;

    const int last = static_cast<int>(std::ceil(u / h)) + 2;
    std::vector<double> rho(last + 1);
    for (int j = 0; j <= 2 * per_unit; ++j) {
        const double x = j * h;
        rho[j] = (x <= 1.0) ? 1.0 : 1.0 - std::log(x);
    }
    for (int j = 2 * per_unit; j < last; ++j) {
        const double x = j * h;
        const double k1 = -rho[j - per_unit] / x;
        const double mid = x + 0.5 * h;
        // the grid read would straddle the x=1 kink early on; both analytic
        // pieces are exact, so prefer them while the delayed point allows it
        const double marg = mid - 1.0;
        const double rm = marg <= 1.0 ? 1.0
                          : marg <= 2.0 ? 1.0 - std::log(marg)
                                        : grid_at(rho, j - per_unit + 0.5);
        const double k2 = -rm / mid;
        const double k3 = k2;
        const double k4 = -rho[j + 1 - per_unit] / (x + h);
        rho[j + 1] = rho[j] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return grid_at(rho, u / h);
}

}  // namespace primecouple

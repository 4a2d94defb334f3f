#include "primecouple/zeta.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "primecouple/mertens.hpp"

namespace primecouple {

namespace {

// Stieltjes constants gamma_1..gamma_4.
constexpr double kG1 = -0.07281584548367672;
constexpr double kG2 = -0.009690363192872318;
constexpr double kG3 = 0.002053834420303346;
constexpr double kG4 = 0.0023253700654673;

constexpr int kHead = 100;

const std::array<double, kHead>& log_table() {
    static const std::array<double, kHead> table = [] {
        std::array<double, kHead> t{};
        for (int m = 1; m < kHead; ++m) t[m] = std::log(static_cast<double>(m));
        return t;
    }();
    return table;
}

ZetaPair laurent_pair(double d) {
    ZetaPair out;
    out.zeta = 1.0 / d + kEulerGamma + d * (-kG1 + d * (kG2 / 2 + d * (-kG3 / 6 + d * kG4 / 24)));
    out.zeta_prime = -1.0 / (d * d) - kG1 + d * (kG2 + d * (-kG3 / 2 + d * kG4 / 6));
    return out;
}

ZetaPair euler_maclaurin_pair(double delta) {
    // B_2, B_4, ..., B_20
    static constexpr double kB[10] = {1.0 / 6,       -1.0 / 30,      1.0 / 42,      -1.0 / 30,
                                      5.0 / 66,      -691.0 / 2730,  7.0 / 6,       -3617.0 / 510,
                                      43867.0 / 798, -174611.0 / 330};
    const double s = 1.0 + delta;
    const auto& lg = log_table();
    double z = 0.0, zp = 0.0;
    for (int m = 1; m < kHead; ++m) {
        const double t = std::exp(-s * lg[m]);
        z += t;
        zp -= lg[m] * t;
    }
    const double lk = std::log(static_cast<double>(kHead));
    const double kp = std::exp(-s * lk);  // K^-s
    const double k1 = kp * kHead;         // K^(1-s)
    z += k1 / delta + 0.5 * kp;
    zp += -lk * k1 / delta - k1 / (delta * delta) - 0.5 * lk * kp;
    double poch = s;          // s(s+1)...(s+2j-2)
    double digam = 1.0 / s;   // sum of 1/(s+r) over the same factors
    double kpow = kp / kHead; // K^(1-s-2j)
    double fact = 2.0;        // (2j)!
    for (int j = 1; j <= 10; ++j) {
        const double t = (kB[j - 1] / fact) * poch * kpow;
        z += t;
        zp += t * (digam - lk);
        const double a = s + 2 * j - 1, b = s + 2 * j;
        poch *= a * b;
        digam += 1.0 / a + 1.0 / b;
        kpow /= static_cast<double>(kHead) * kHead;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return {z, zp};
}

}  // namespace

ZetaPair zeta_pair_near_one(double delta) {
    if (!(delta > 0.0)) throw std::domain_error("zeta_pair_near_one: delta must be positive");
    if (delta < 1e-5) return laurent_pair(delta);
    return euler_maclaurin_pair(delta);
}

double zeta_near_one(double delta) { return zeta_pair_near_one(delta).zeta; }

double inv_zeta_near_one(double w) {
    if (!(w >= 0.0)) throw std::domain_error("inv_zeta_near_one: w must be nonnegative");
    if (w < 1e-8) return w * (1.0 - kEulerGamma * w);
    return 1.0 / zeta_pair_near_one(w).zeta;
}

double deriv_inv_zeta_near_one(double w) {
    if (!(w >= 0.0)) throw std::domain_error("deriv_inv_zeta_near_one: w must be nonnegative");
    if (w < 1e-8) return 1.0 - 2.0 * kEulerGamma * w;
    const ZetaPair zp = zeta_pair_near_one(w);
    return -zp.zeta_prime / (zp.zeta * zp.zeta);
}

}  // namespace primecouple

#include "primecouple/exact_densities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "primecouple/special.hpp"
#include "primecouple/zeta.hpp"

namespace primecouple {

namespace {

// 1/zeta(1+w) and -zeta'/zeta^2(1+w) on a uniform w-grid with 4-point
// Lagrange interpolation.  Both are analytic on [0, oo), so the grid error
// is ~h^4 and far below the quadrature tolerances in use.
class ZetaComboGrid {
  public:
    static const ZetaComboGrid& get() {
        static const ZetaComboGrid grid;
        return grid;
    }

    double phi1(double w) const {  // 1/zeta(1+w)
        if (w >= kWMax) return inv_zeta_near_one(w);
        return interp(inv_, w);
    }
    double phi2(double w) const {  // -zeta'/zeta^2(1+w)
        if (w >= kWMax) return deriv_inv_zeta_near_one(w);
        return interp(drv_, w);
    }

  private:
    static constexpr double kWMax = 20.0;
    static constexpr double kStep = 5e-4;
    static constexpr int kCount = static_cast<int>(kWMax / kStep) + 4;

    ZetaComboGrid() : inv_(kCount), drv_(kCount) {
        inv_[0] = 0.0;
        drv_[0] = 1.0;
        for (int j = 1; j < kCount; ++j) {
            const double w = j * kStep;
            const ZetaPair z = zeta_pair_near_one(w);
            inv_[j] = 1.0 / z.zeta;
            drv_[j] = -z.zeta_prime / (z.zeta * z.zeta);
        }
    }

    double interp(const std::vector<double>& v, double w) const {
        const double s = w / kStep;
        int j = static_cast<int>(s);
        if (j < 1) j = 1;
        if (j > kCount - 3) j = kCount - 3;
        const double t = s - j;  // in [0,1) away from the clamps
        const double a = v[j - 1], b = v[j], c = v[j + 1], d = v[j + 2];
        // cubic through nodes at t = -1, 0, 1, 2
        return b + t * ((c - a / 3.0 - b / 2.0 - d / 6.0) +
               t * ((a - 2 * b + c) / 2 + t * ((d - a) / 6 + (b - c) / 2)));
    }

    std::vector<double> inv_;
    std::vector<double> drv_;
};

double harmonic_number(std::uint64_t n) {
    double h = 0.0;
    for (std::uint64_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
    return h;
}

}  // namespace

double Pmf::total() const {
    double s = 0.0;
    for (double v : mass) s += v;
    return s;
}

double Pmf::at(std::uint64_t i) const {
    if (i < 1 || i > n) throw std::out_of_range("Pmf::at: index outside support");
    return mass[i - 1];
}

Pmf pmf_J(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad) {
    if (n < 2 || n > 100000) throw std::domain_error("pmf_J: n must be in [2, 1e5]");
    if (tables.limit < n) throw std::domain_error("pmf_J: prime tables too small");
    const ZetaComboGrid& grid = ZetaComboGrid::get();
    const double L = std::log(static_cast<double>(n));
    Pmf out;
    out.n = n;
    out.mass.resize(n);

    QuadratureSpec per = quad;
    per.abs_tol = std::min(quad.abs_tol, 2e-7 / static_cast<double>(n));

    // prefix of prime powers with q <= n/i shrinks as i grows
    std::size_t cut_idx = 0;
    while (cut_idx < tables.prime_powers.size() && tables.prime_powers[cut_idx].q <= n) ++cut_idx;
    std::vector<double> log_q(cut_idx), log_p(cut_idx);
    for (std::size_t j = 0; j < cut_idx; ++j) {
        log_q[j] = std::log(static_cast<double>(tables.prime_powers[j].q));
        log_p[j] = std::log(static_cast<double>(tables.prime_powers[j].p));
    }

    double acc_err = 0.0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const std::uint64_t cut = n / i;
        while (cut_idx > 0 && tables.prime_powers[cut_idx - 1].q > cut) --cut_idx;
        const double alpha = std::log(static_cast<double>(i)) / L;
        const double beta_min =
            std::log(static_cast<double>(cut + 1)) / L;  // smallest tail exponent
        double c_max = (std::log(beta_min * static_cast<double>(n)) + 14.0 * std::log(10.0)) /
                       beta_min;
        if (c_max < 5.0) c_max = 5.0;
        if (c_max > out.c_max) out.c_max = c_max;

        const auto integrand = [&](double c) {
            const double w = c / L;
            double s = 0.0;
            for (std::size_t j = 0; j < cut_idx; ++j)
                s += log_p[j] * std::exp(-(1.0 + w) * log_q[j]);
            return (grid.phi2(w) - s * grid.phi1(w)) * std::exp(-alpha * c) / L;
        };
        const QuadratureResult r = integrate(integrand, 0.0, c_max, per);
        out.mass[i - 1] = r.value / static_cast<double>(i);
        acc_err += r.error_estimate / static_cast<double>(i);
    }
    out.tolerance = acc_err + 1e-13;  // the c_max cutoffs contribute below 1e-14 each
    return out;
}

double l1_J_harmonic(const Pmf& pj) {
    const double hn = harmonic_number(pj.n);
    double s = 0.0;
    for (std::uint64_t i = 1; i <= pj.n; ++i)
        s += std::fabs(pj.mass[i - 1] - (1.0 / static_cast<double>(i)) / hn);
    return s;
}

double dtv_J_harmonic(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad) {
    return l1_J_harmonic(pmf_J(n, tables, quad));
}

Pmf pmf_JP0_from(const Pmf& pj, const PrimeTables& tables) {
    const std::uint64_t n = pj.n;
    if (tables.limit < n) throw std::domain_error("pmf_JP0_from: prime tables too small");
    Pmf out;
    out.n = n;
    out.c_max = pj.c_max;
    // each source mass error redistributes with total weight exactly 1
    out.tolerance = pj.tolerance;
    out.mass.resize(n);
    for (std::uint64_t m = 1; m <= n; ++m) {
        double f = pj.mass[m - 1] / static_cast<double>(1 + tables.pi_u64(n / m));
        std::uint64_t rest = m;
        while (rest > 1) {
            const std::uint64_t p = tables.smallest_prime_factor[rest];
            f += pj.mass[m / p - 1] / static_cast<double>(1 + tables.pi_u64(n * p / m));
            while (rest % p == 0) rest /= p;
        }
        out.mass[m - 1] = f;
    }
    return out;
}

Pmf pmf_JP0(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad) {
    return pmf_JP0_from(pmf_J(n, tables, quad), tables);
}

TvForms tv_forms_uniform(const Pmf& f) {
    const double u = 1.0 / static_cast<double>(f.n);
    TvForms t{0.0, 0.0, 0.0};
    for (double v : f.mass) {
        const double d = v - u;
        if (d > 0)
            t.positive += d;
        else
            t.negative -= d;
        t.half_l1 += std::fabs(d);
    }
    t.half_l1 *= 0.5;
    return t;
}

double dtv_JP0_uniform(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad) {
    return tv_forms_uniform(pmf_JP0(n, tables, quad)).positive;
}

double g_fun(std::uint64_t n, std::uint64_t m, const PrimeTables& tables) {
    if (m < 1 || m > n) throw std::domain_error("g_fun: need 1 <= m <= n");
    const double L = std::log(static_cast<double>(n));
    const double scale = 1.0 / (static_cast<double>(n) * L);
    double s = static_cast<double>(n) / static_cast<double>(m) /
               static_cast<double>(1 + tables.pi_u64(n / m));
    std::uint64_t rest = m;
    while (rest > 1) {
        const std::uint64_t p = tables.smallest_prime_factor[rest];
        const double x = static_cast<double>(n) * static_cast<double>(p) / static_cast<double>(m);
        s += x / static_cast<double>(1 + tables.pi_u64(n * p / m));
        while (rest % p == 0) rest /= p;
    }
    return scale * s;
}

double h_fun(std::uint64_t n, std::uint64_t m, const PrimeTables& tables) {
    if (m < 1 || m > n) throw std::domain_error("h_fun: need 1 <= m <= n");
    const FactoredInteger fi = tables.factor(m);
    const double L = std::log(static_cast<double>(n));
    const double ls = std::log(static_cast<double>(fi.largest_squarefree_divisor()));
    const double w = static_cast<double>(1 + fi.small_omega());
    const double lr = std::log(static_cast<double>(n) / static_cast<double>(m));
    return (ls + w * (lr - 1.0)) / (static_cast<double>(n) * L);
}

namespace {

// antiderivative of (c - log x); zero at x = 0
double area_f(double x, double c) {
    if (x <= 0.0) return 0.0;
    return x * (c + 1.0) - x * std::log(x);
}

// integral of |c - log x| over (a, b)
double segment_abs(double a, double b, double c) {
    const double xs = std::exp(c);
    if (a < xs && xs < b)
        return 2.0 * area_f(xs, c) - area_f(a, c) - area_f(b, c);
    const double mid = 0.5 * (a + b);
    const double sign = (c - std::log(mid) >= 0.0) ? 1.0 : -1.0;
    return sign * (area_f(b, c) - area_f(a, c));
}

}  // namespace

B0Result b0_breakdown(const MertensMap& mertens, const QuadratureSpec& quad) {
    if (mertens.size() == 0) throw std::domain_error("b0_breakdown: empty map");
    B0Result out{};
    out.x_max = std::log(static_cast<double>(mertens.limit));
    const double log2 = std::log(2.0);
    out.analytic_piece = area_f(log2, -mertens.base_constant);

    double total = 0.0;
    double first_piece = 0.0;
    double m1 = 0.0;
    double a = 0.0;
    double c = -mertens.base_constant;
    const std::size_t count = mertens.size();
    for (std::size_t j = 0; j <= count; ++j) {
        const double b = (j < count) ? mertens.log_q[j] : out.x_max;
        if (b > a) {
            const double piece = segment_abs(a, b, c);
            total += piece;
            if (j == 0) first_piece = piece;
            if (b >= out.x_max - 1.0) {
                const double lo = std::max(a, out.x_max - 1.0);
                m1 = std::max(m1, std::fabs(c - std::log(lo)));
                m1 = std::max(m1, std::fabs(c - std::log(b)));
            }
        }
        if (j < count) {
            c = mertens.f_cum[j];
            a = b;
        }
    }
    out.value = total;
    out.abs_correction = first_piece - out.analytic_piece;
    out.numeric_piece = total - first_piece;
    // past the table the deviation keeps shrinking; twice the last observed
    // amplitude bounds the remaining area
    out.tail_bound = std::max(2.0 * m1, quad.abs_tol);
    return out;
}

double b0_integral(const MertensMap& mertens, const QuadratureSpec& quad) {
    return b0_breakdown(mertens, quad).value;
}

double region_mean(double b, const QuadratureSpec& quad) {
    if (!(b > 0.0)) throw std::domain_error("region_mean: b must be positive");
    const auto integrand = [](double u) {
        if (u < 1e-8) return 1.0 - 0.5 * u;
        return -std::expm1(-u) / u;
    };
    return integrate(integrand, 0.0, b * b, quad).value;
}

double region_mean_identity(double b) {
    if (!(b > 0.0)) throw std::domain_error("region_mean_identity: b must be positive");
    return kEulerGamma + 2.0 * std::log(b) + expint_e1(b * b);
}

std::string pmf_cache_name(const char* kind, std::uint64_t n, std::uint64_t checksum,
                           const QuadratureSpec& quad) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "pmf-%s-n%llu-c%016llx-a%.3g-r%.3g.pmf", kind,
                  static_cast<unsigned long long>(n), static_cast<unsigned long long>(checksum),
                  quad.abs_tol, quad.rel_tol);
    return buf;
}

bool pmf_cache_load(const std::string& path, const char* kind, std::uint64_t n,
                    std::uint64_t checksum, const QuadratureSpec& quad, Pmf* out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    auto expect = [&](const std::string& want) {
        if (!std::getline(in, line)) return false;
        return line == want;
    };
    if (!expect("primecouple-pmf v1")) return false;

    auto field = [&](const char* key, std::string* value) {
        if (!std::getline(in, line)) return false;
        const std::size_t klen = std::strlen(key);
        if (line.compare(0, klen, key) != 0 || line.size() < klen + 2 || line[klen] != ' ')
            return false;
        *value = line.substr(klen + 1);
        return true;
    };
    std::string v;
    if (!field("kind", &v) || v != kind) return false;
    if (!field("n", &v) || std::stoull(v) != n) return false;
    if (!field("tables-checksum", &v)) return false;
    if (std::stoull(v, nullptr, 16) != checksum) return false;
    if (!field("abs-tol", &v) || std::stod(v) != quad.abs_tol) return false;
    if (!field("rel-tol", &v) || std::stod(v) != quad.rel_tol) return false;
    Pmf pmf;
    pmf.n = n;
    if (!field("tolerance", &v)) return false;
    pmf.tolerance = std::stod(v);
    if (!field("c-max", &v)) return false;
    pmf.c_max = std::stod(v);
    if (!field("mass", &v) || std::stoull(v) != n) return false;
    pmf.mass.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) return false;
        pmf.mass[i] = std::stod(line);
    }
    if (!expect("end")) return false;
    *out = std::move(pmf);
    return true;
}

void pmf_cache_store(const std::string& path, const char* kind, const Pmf& pmf,
                     std::uint64_t checksum, const QuadratureSpec& quad) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream outf(tmp, std::ios::trunc);
        if (!outf) throw std::runtime_error("pmf_cache_store: cannot open " + tmp);
        char buf[64];
        outf << "primecouple-pmf v1\n";
        outf << "kind " << kind << "\n";
        outf << "n " << pmf.n << "\n";
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
        outf << "tables-checksum " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.17g", quad.abs_tol);
        outf << "abs-tol " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.17g", quad.rel_tol);
        outf << "rel-tol " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.17g", pmf.tolerance);
        outf << "tolerance " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.17g", pmf.c_max);
        outf << "c-max " << buf << "\n";
        outf << "mass " << pmf.n << "\n";
        for (double m : pmf.mass) {
            std::snprintf(buf, sizeof buf, "%.17g", m);
            outf << buf << "\n";
        }
        outf << "end\n";
        if (!outf) throw std::runtime_error("pmf_cache_store: write failed on " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

namespace {

Pmf cached_front(const char* kind, std::uint64_t n, const PrimeTables& tables,
                 const QuadratureSpec& quad, const std::string& cache_dir,
                 const std::function<Pmf()>& compute) {
    if (cache_dir.empty()) return compute();
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    const std::string path =
        cache_dir + "/" + pmf_cache_name(kind, n, tables.checksum(), quad);
    Pmf out;
    if (pmf_cache_load(path, kind, n, tables.checksum(), quad, &out)) return out;
    out = compute();
    pmf_cache_store(path, kind, out, tables.checksum(), quad);
    return out;
}

}  // namespace

Pmf pmf_J_cached(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad,
                 const std::string& cache_dir) {
    return cached_front("J", n, tables, quad, cache_dir,
                        [&] { return pmf_J(n, tables, quad); });
}

Pmf pmf_JP0_cached(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad,
                   const std::string& cache_dir) {
    return cached_front("JP0", n, tables, quad, cache_dir, [&] {
        return pmf_JP0_from(pmf_J_cached(n, tables, quad, cache_dir), tables);
    });
}

}  // namespace primecouple

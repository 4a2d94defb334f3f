#include "primecouple/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "primecouple/special.hpp"

namespace primecouple {

namespace {

constexpr std::uint64_t kIdentityOverflow = std::numeric_limits<std::uint64_t>::max();

std::uint64_t pow_capped(std::uint64_t p, std::uint32_t k) {
    unsigned __int128 v = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        v *= p;
        if (v > std::numeric_limits<std::uint64_t>::max()) return kIdentityOverflow;
    }
    return static_cast<std::uint64_t>(v);
}

void finalize_cycles(FellerSample& s) {
    if (s.n == 0) throw std::invalid_argument("feller sample needs n >= 1");
    if (s.horizon < s.n) throw std::invalid_argument("horizon below n");
    if (s.one_positions.empty() || s.one_positions.front() != 1)
        throw std::invalid_argument("word must open with a one");
    s.cycle_counts_n.assign(s.n, 0);
    s.cycle_counts_inf.assign(s.n, 0);
    for (std::size_t i = 0; i + 1 < s.one_positions.size(); ++i) {
        std::uint64_t a = s.one_positions[i];
        std::uint64_t b = s.one_positions[i + 1];
        if (b <= a) throw std::invalid_argument("one positions must increase");
        std::uint64_t gap = b - a;
        if (gap <= s.n) s.cycle_counts_inf[gap - 1] += 1;
        if (b <= s.n) s.cycle_counts_n[gap - 1] += 1;
    }
    if (s.one_positions.back() > s.horizon)
        throw std::invalid_argument("one position past the horizon");
    auto it = std::upper_bound(s.one_positions.begin(), s.one_positions.end(), s.n);
    std::uint64_t last = *(it - 1);
    s.first_cycle_len = s.n + 1 - last;
    s.j_perm = s.n - s.first_cycle_len;
    s.cycle_counts_n[s.first_cycle_len - 1] += 1;
    s.truncation_bound = static_cast<double>(s.n) / static_cast<double>(s.horizon);
}

}  // namespace

std::vector<std::uint8_t> FellerSample::xi_bits(std::uint64_t upto) const {
    std::vector<std::uint8_t> bits(upto, 0);
    for (std::uint64_t o : one_positions) {
        if (o <= upto) bits[o - 1] = 1;
    }
    return bits;
}

FellerSample feller_sample(std::uint64_t n, double horizon_factor, RandomSource& rng) {
    if (n == 0) throw std::invalid_argument("feller sample needs n >= 1");
    if (!(horizon_factor >= 1.0)) throw std::invalid_argument("horizon factor below 1");
    FellerSample s;
    s.n = n;
    double span = horizon_factor * static_cast<double>(n);
    s.horizon = span >= 9e18 ? std::uint64_t{9000000000000000000ULL}
                             : static_cast<std::uint64_t>(span);
    if (s.horizon < n) s.horizon = n;
    s.one_positions.push_back(1);
    std::uint64_t t = 1;
    while (true) {
        // next one after t sits at floor(t/U)+1; P(next > j) = t/j exactly
        double ratio = static_cast<double>(t) / rng.uniform_pos();
        if (!(ratio < static_cast<double>(s.horizon))) break;
        t = static_cast<std::uint64_t>(ratio) + 1;
        s.one_positions.push_back(t);
    }
    finalize_cycles(s);
    return s;
}

FellerSample feller_from_ones(std::uint64_t n, std::uint64_t horizon,
                              const std::vector<std::uint64_t>& one_positions) {
    FellerSample s;
    s.n = n;
    s.horizon = horizon;
    s.one_positions = one_positions;
    finalize_cycles(s);
    return s;
}

FellerSample feller_from_word(std::uint64_t n, const std::vector<std::uint8_t>& xi) {
    FellerSample s;
    s.n = n;
    s.horizon = xi.size();
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (xi[i] != 0) s.one_positions.push_back(i + 1);
    }
    finalize_cycles(s);
    return s;
}

double MaxLabelTable::log_gap_rate(std::uint64_t n, const PrimeTables& tables, double t) {
    if (tables.limit < 10 * n) throw std::invalid_argument("tables must reach 10n");
    if (!(t > 0)) throw std::domain_error("t must be positive");
    double g = expint_e1(t * std::log(10.0 * static_cast<double>(n)));
    std::size_t lo = tables.pi_u64(n);
    std::size_t hi = tables.pi_u64(10 * n);
    double s = -(1.0 + t);
    for (std::size_t i = lo; i < hi; ++i) {
        double x = std::exp(s * std::log(static_cast<double>(tables.primes[i])));
        // terms decrease in p; drop the rest once their total is invisible
        if (x * static_cast<double>(hi - i) < 1e-16 * g + 1e-300) break;
        g -= std::log1p(-x);
    }
    return g;
}

MaxLabelTable MaxLabelTable::build(std::uint64_t n, const PrimeTables& tables) {
    if (n < 2) throw std::invalid_argument("max label table needs n >= 2");
    if (tables.limit < 10 * n) throw std::invalid_argument("tables must reach 10n");
    MaxLabelTable m;
    m.n = n;
    double l10n = std::log(10.0 * static_cast<double>(n));
    double t0 = std::exp(-40.0 - kEulerGamma) / l10n;
    for (int guard = 0; guard < 64 && log_gap_rate(n, tables, t0) < 40.0; ++guard) t0 *= 0.5;
    m.t_min = t0;
    m.t_max = std::max(42.0 / std::log(static_cast<double>(n)), 2.0);
    constexpr std::size_t kGrid = 16384;
    m.log_t.resize(kGrid);
    m.log_g.resize(kGrid);
    double la = std::log(m.t_min);
    double lb = std::log(m.t_max);
    for (std::size_t i = 0; i < kGrid; ++i) {
        double lt = la + (lb - la) * static_cast<double>(i) / static_cast<double>(kGrid - 1);
        m.log_t[i] = lt;
        m.log_g[i] = std::log(log_gap_rate(n, tables, std::exp(lt)));
    }
    for (std::size_t i = 1; i < kGrid; ++i) {
        if (!(m.log_g[i] < m.log_g[i - 1]))
            throw std::runtime_error("max label grid must decrease");
    }
    double worst = 1e-16;
    for (std::size_t j = 0; j < 64; ++j) {
        std::size_t a = (j * (kGrid - 1)) / 64;
        double gm = std::exp(0.5 * (m.log_g[a] + m.log_g[a + 1]));
        double back = log_gap_rate(n, tables, m.invert(gm));
        worst = std::max(worst, std::abs(back - gm) / gm);
    }
    m.inversion_tol = worst;
    return m;
}

double MaxLabelTable::invert(double g) const {
    if (log_g.size() < 4) throw std::logic_error("max label table not built");
    if (std::isnan(g) || g < 0) throw std::domain_error("g must be nonnegative");
    if (g == 0) return std::exp(log_t.back());
    double x = std::log(g);
    if (x >= log_g.front()) return std::exp(log_t.front());
    if (x <= log_g.back()) return std::exp(log_t.back());
    auto it = std::lower_bound(log_g.begin(), log_g.end(), x, std::greater<double>());
    std::size_t i = static_cast<std::size_t>(it - log_g.begin());
    std::size_t j0 = i >= 2 ? i - 2 : 0;
    if (j0 + 4 > log_g.size()) j0 = log_g.size() - 4;
    double y = 0;
    for (std::size_t a = 0; a < 4; ++a) {
        double num = 1, den = 1;
        for (std::size_t b = 0; b < 4; ++b) {
            if (a == b) continue;
            num *= x - log_g[j0 + b];
            den *= log_g[j0 + a] - log_g[j0 + b];
        }
        y += log_t[j0 + a] * num / den;
    }
    return std::exp(y);
}

double MaxLabelTable::sample(RandomSource& rng) const { return invert(rng.exponential(1.0)); }

GrowContext GrowContext::build(std::uint64_t n, const PrimeTables& tables) {
    if (n < 2) throw std::invalid_argument("grow context needs n >= 2");
    GrowContext ctx;
    ctx.n = n;
    ctx.tables = &tables;
    ctx.max_label = MaxLabelTable::build(n, tables);
    std::uint64_t np = tables.pi_u64(n);
    ctx.race_prefix.resize(np);
    double acc = 0;
    for (std::uint64_t i = 0; i < np; ++i) {
        acc += -std::log1p(-1.0 / static_cast<double>(tables.primes[i]));
        ctx.race_prefix[i] = acc;
    }
    return ctx;
}

GrowContext GrowContext::build_uniformizing(std::uint64_t n, const PrimeTables& tables,
                                            const QuadratureSpec& quad,
                                            const std::string& cache_dir) {
    GrowContext ctx = build(n, tables);
    ctx.uniformizing = true;
    ctx.f_n = pmf_JP0_cached(n, tables, quad, cache_dir);
    double inv_n = 1.0 / static_cast<double>(n);
    ctx.accept.resize(n);
    ctx.g_cum.resize(n);
    double deficit = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        double f = ctx.f_n.mass[i];
        ctx.accept[i] = f <= inv_n ? 1.0 : inv_n / f;
        deficit += std::max(inv_n - f, 0.0);
        ctx.g_cum[i] = deficit;
    }
    if (deficit > 0) {
        for (double& v : ctx.g_cum) v /= deficit;
    } else {
        for (std::uint64_t i = 0; i < n; ++i) ctx.g_cum[i] = static_cast<double>(i + 1) * inv_n;
    }
    ctx.g_cum.back() = 1.0;
    return ctx;
}

GrownInteger grow_integer(const GrowContext& ctx, RandomSource& rng, GrowMode mode,
                          bool no_split) {
    if (ctx.tables == nullptr) throw std::logic_error("grow context not built");
    if (mode == GrowMode::exact_uniform && !ctx.uniformizing)
        throw std::logic_error("exact uniform mode needs a uniformizing context");
    const PrimeTables& tables = *ctx.tables;
    GrownInteger out;
    out.n = ctx.n;

    // exponential race over intervals of length -log(1 - 1/p): prime p is hit
    // with probability 1/p independently, and a hit leaves Z_p >= 1
    const double total = ctx.race_prefix.back();
    double pos = rng.exponential(1.0);
    while (pos < total) {
        std::size_t idx = static_cast<std::size_t>(
            std::upper_bound(ctx.race_prefix.begin(), ctx.race_prefix.end(), pos) -
            ctx.race_prefix.begin());
        if (idx >= ctx.race_prefix.size()) break;
        std::uint64_t p = tables.primes[idx];
        double lp = std::log(static_cast<double>(p));
        std::uint64_t z = 1 + rng.geometric(1.0 / static_cast<double>(p));
        out.z.emplace_back(p, static_cast<std::uint32_t>(z));
        if (no_split) {
            for (std::uint64_t c = 0; c < z; ++c)
                out.prime_power_items.push_back({p, lp, rng.exponential(lp)});
        } else {
            std::vector<std::uint32_t> counts = split_geometric(z, 1.0 / static_cast<double>(p), rng);
            for (std::size_t j = 0; j < counts.size(); ++j) {
                auto k = static_cast<std::uint32_t>(j + 1);
                std::uint64_t q = pow_capped(p, k);
                double lq = static_cast<double>(k) * lp;
                for (std::uint32_t c = 0; c < counts[j]; ++c)
                    out.prime_power_items.push_back({q, lq, rng.exponential(lq)});
            }
        }
        pos = ctx.race_prefix[idx] + rng.exponential(1.0);
    }

    out.big_label_tail = ctx.max_label.sample(rng);

    std::vector<WeightedItem> sorted = out.prime_power_items;
    std::sort(sorted.begin(), sorted.end(), [](const WeightedItem& a, const WeightedItem& b) {
        if (a.label != b.label) return a.label > b.label;
        if (a.identity != b.identity) return a.identity < b.identity;
        return a.weight < b.weight;
    });
    std::uint64_t j = 1;
    for (const WeightedItem& item : sorted) {
        if (item.label <= out.big_label_tail) break;
        if (item.identity > ctx.n) break;
        if (j * item.identity > ctx.n) break;
        j *= item.identity;
    }
    out.j = j;

    std::uint64_t k0 = 1 + tables.pi_u64(ctx.n / j);
    auto pidx = static_cast<std::uint64_t>(static_cast<double>(k0) * rng.uniform01());
    if (pidx >= k0) pidx = k0 - 1;
    out.p0 = pidx == 0 ? 1 : tables.primes[pidx - 1];

    std::uint64_t grown = j * out.p0;
    if (mode == GrowMode::exact_uniform) {
        if (rng.uniform01() < ctx.accept[grown - 1]) {
            out.value = grown;
        } else {
            double u = rng.uniform01();
            std::size_t w = static_cast<std::size_t>(
                std::lower_bound(ctx.g_cum.begin(), ctx.g_cum.end(), u) - ctx.g_cum.begin());
            if (w >= ctx.g_cum.size()) w = ctx.g_cum.size() - 1;
            out.value = static_cast<std::uint64_t>(w) + 1;
        }
    } else {
        out.value = grown;
    }

    FactoredInteger fact = tables.factor(out.value);
    std::size_t a = 0, b = 0;
    while (a < out.z.size() || b < fact.factors.size()) {
        std::uint64_t pa = a < out.z.size() ? out.z[a].first : kIdentityOverflow;
        std::uint64_t pb = b < fact.factors.size() ? fact.factors[b].first : kIdentityOverflow;
        std::uint64_t zc = 0, nc = 0;
        if (pa <= pb) {
            zc = out.z[a].second;
            ++a;
        }
        if (pb <= pa) {
            nc = fact.factors[b].second;
            ++b;
        }
        if (nc > zc) out.insertions += nc - zc;
        else out.deletions += zc - nc;
    }
    out.indel = out.insertions + out.deletions;
    out.coupled_event = out.indel == 0;
    return out;
}

GrownInteger grow_integer(std::uint64_t n, const PrimeTables& tables, RandomSource& rng,
                          GrowMode mode) {
    if (mode == GrowMode::exact_uniform)
        throw std::logic_error("exact uniform mode needs a prebuilt uniformizing context");
    GrowContext ctx = GrowContext::build(n, tables);
    return grow_integer(ctx, rng, mode);
}

std::uint64_t indel_count(const FactoredInteger& a, const FactoredInteger& b) {
    std::uint64_t total = 0;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        std::uint64_t pa = i < a.factors.size() ? a.factors[i].first : kIdentityOverflow;
        std::uint64_t pb = j < b.factors.size() ? b.factors[j].first : kIdentityOverflow;
        std::uint64_t ca = 0, cb = 0;
        if (pa <= pb) {
            ca = a.factors[i].second;
            ++i;
        }
        if (pb <= pa) {
            cb = b.factors[j].second;
            ++j;
        }
        total += ca > cb ? ca - cb : cb - ca;
    }
    return total;
}

std::string transcript_line(const GrownInteger& g, std::uint64_t seed) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%llu,%llu,%llu,%llu,%llu,%d,%llu",
                  static_cast<unsigned long long>(g.n), static_cast<unsigned long long>(seed),
                  static_cast<unsigned long long>(g.j), static_cast<unsigned long long>(g.p0),
                  static_cast<unsigned long long>(g.value), g.coupled_event ? 1 : 0,
                  static_cast<unsigned long long>(g.indel));
    return std::string(buf);
}

PDCoupledSample pd_couple(std::uint64_t n, const MertensMap& mertens, const PrimeTables& tables,
                          RandomSource& rng, double cutoff) {
    if (n < 3) throw std::invalid_argument("pd couple needs n >= 3");
    if (mertens.variant != MertensVariant::one_over_kq)
        throw std::invalid_argument("pd couple needs the 1/(kq) map");
    if (mertens.limit < 2 * n) throw std::invalid_argument("mertens map must reach 2n");
    if (tables.limit < n) throw std::invalid_argument("tables must reach n");
    double length = std::log(static_cast<double>(n));
    if (cutoff <= 0) cutoff = 1e-9 * length;
    if (!(cutoff < std::exp(-mertens.base_constant)))
        throw std::invalid_argument("cutoff must sit below the dead zone of h");

    PDCoupledSample out;
    out.n = n;
    double x = length * rng.uniform_pos();
    double first_gap = length - x;
    std::vector<double> factor_logs;
    unsigned __int128 jprod = 1;
    const unsigned __int128 ncap = n;
    while (x > cutoff) {
        double xn = x * rng.uniform_pos();
        double y = x - xn;
        out.spacings.push_back(y);
        std::uint64_t qi = 1;
        double hy = 0.0;
        auto bp = mertens.h_breakpoint(y);
        if (bp) {
            qi = bp->q;
            hy = std::log(static_cast<double>(bp->q));
            double lpp = std::log(static_cast<double>(bp->p));
            for (std::uint32_t c = 0; c < bp->k; ++c) factor_logs.push_back(lpp);
            if (!out.j_overflow) {
                jprod *= bp->q;
                if (jprod > ncap) out.j_overflow = true;
            }
        }
        out.q_star.push_back(qi);
        out.d_sum += std::abs(hy - y);
        x = xn;
    }
    out.residual = x;

    if (out.j_overflow) {
        out.j_star = 0;
        out.p0_star = 1;
    } else {
        out.j_star = static_cast<std::uint64_t>(jprod);
        std::uint64_t k0 = 1 + tables.pi_u64(n / out.j_star);
        auto pidx = static_cast<std::uint64_t>(static_cast<double>(k0) * rng.uniform01());
        if (pidx >= k0) pidx = k0 - 1;
        out.p0_star = pidx == 0 ? 1 : tables.primes[pidx - 1];
    }
    if (out.p0_star > 1) factor_logs.push_back(std::log(static_cast<double>(out.p0_star)));

    out.pd_scaled = out.spacings;
    out.pd_scaled.push_back(first_gap);
    std::sort(out.pd_scaled.begin(), out.pd_scaled.end(), std::greater<double>());
    std::sort(factor_logs.begin(), factor_logs.end(), std::greater<double>());
    std::size_t m = std::max(out.pd_scaled.size(), factor_logs.size());
    double l1 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double u = i < out.pd_scaled.size() ? out.pd_scaled[i] : 0.0;
        double v = i < factor_logs.size() ? factor_logs[i] : 0.0;
        l1 += std::abs(u - v);
    }
    out.l1_distance = l1;
    return out;
}

}  // namespace primecouple

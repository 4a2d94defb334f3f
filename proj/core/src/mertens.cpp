#include "primecouple/mertens.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primecouple {

double MertensMap::jump(std::size_t i) const {
    if (variant == MertensVariant::one_over_p) return 1.0 / static_cast<double>(q[i]);
    return 1.0 / (static_cast<double>(k[i]) * static_cast<double>(q[i]));
}

MertensMap MertensMap::build(MertensVariant v, std::uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("MertensMap::build: limit < 2");
    MertensMap m;
    m.variant = v;
    m.limit = limit;
    m.base_constant = (v == MertensVariant::one_over_p) ? kPrimeReciprocalConstant : kEulerGamma;

    PrimeTables t = PrimeTables::build(limit);
    if (v == MertensVariant::one_over_p) {
        m.q = t.primes;
        m.p = t.primes;
        m.k.assign(t.primes.size(), 1);
    } else {
        m.q.reserve(t.prime_powers.size());
        m.p.reserve(t.prime_powers.size());
        m.k.reserve(t.prime_powers.size());
        for (const auto& pp : t.prime_powers) {
            m.q.push_back(pp.q);
            m.p.push_back(pp.p);
            m.k.push_back(static_cast<std::uint8_t>(pp.k));
        }
    }
    m.log_q.resize(m.q.size());
    m.f_cum.resize(m.q.size());
    double acc = -m.base_constant;
    for (std::size_t i = 0; i < m.q.size(); ++i) {
        m.log_q[i] = std::log(static_cast<double>(m.q[i]));
        acc += m.jump(i);
        m.f_cum[i] = acc;
    }
    return m;
}

double MertensMap::f(double x) const {
    if (!(x > 0)) throw std::invalid_argument("MertensMap::f: need x > 0");
    if (x > std::log(static_cast<double>(limit))) return std::log(x);  // asymptote past table
    auto it = std::upper_bound(log_q.begin(), log_q.end(), x);
    if (it == log_q.begin()) return -base_constant;
    return f_cum[static_cast<std::size_t>(it - log_q.begin()) - 1];
}

std::optional<PrimePower> MertensMap::h_breakpoint(double x) const {
    if (!(x > 0)) throw std::invalid_argument("MertensMap::h: need x > 0");
    double lx = std::log(x);
    if (lx <= -base_constant) return std::nullopt;
    auto it = std::lower_bound(f_cum.begin(), f_cum.end(), lx);
    if (it == f_cum.end())
        throw std::out_of_range("MertensMap::h: argument past table reach; rebuild with larger limit");
    std::size_t i = static_cast<std::size_t>(it - f_cum.begin());
    return PrimePower{q[i], p[i], k[i]};
}

double MertensMap::h(double x) const {
    auto bp = h_breakpoint(x);
    if (!bp) return 0.0;
    return std::log(static_cast<double>(bp->q));
}

double MertensMap::chebyshev_remainder(double x) const {
    if (x < 2 || x > static_cast<double>(limit))
        throw std::invalid_argument("MertensMap::chebyshev_remainder: need 2 <= x <= limit");
    double s = 0;
    for (std::size_t i = 0; i < q.size() && static_cast<double>(q[i]) <= x; ++i)
        s += log_q[i] * jump(i);
    return s - std::log(x);
}

std::vector<double> streamed_jump_prefix(MertensVariant v, std::uint64_t limit,
                                         const std::vector<std::uint64_t>& bounds) {
    if (limit < 2 || limit > 100000000ull)
        throw std::invalid_argument("streamed_jump_prefix: limit in [2, 1e8]");
    // odd-only sieve of Eratosthenes bitmap
    std::uint64_t half = limit / 2 + 1;
    std::vector<std::uint8_t> composite((half + 7) / 8, 0);
    auto is_comp = [&](std::uint64_t i) { return (composite[i >> 3] >> (i & 7)) & 1; };
    auto set_comp = [&](std::uint64_t i) { composite[i >> 3] |= std::uint8_t(1u << (i & 7)); };
    for (std::uint64_t d = 3; d * d <= limit; d += 2)
        if (!is_comp(d / 2))
            for (std::uint64_t m = d * d; m <= limit; m += 2 * d) set_comp(m / 2);

    // k >= 2 prime powers are few; collect then merge with the prime stream
    std::vector<std::pair<std::uint64_t, double>> powers;
    if (v == MertensVariant::one_over_kq) {
        auto prime_small = [&](std::uint64_t n) {
            if (n == 2) return true;
            if (n < 2 || n % 2 == 0) return false;
            return !is_comp(n / 2);
        };
        for (std::uint64_t pp = 2; pp * pp <= limit; ++pp) {
            if (!prime_small(pp)) continue;
            std::uint64_t qq = pp * pp;
            std::uint32_t kk = 2;
            while (true) {
                powers.emplace_back(qq, 1.0 / (double(kk) * double(qq)));
                if (qq > limit / pp) break;
                qq *= pp;
                ++kk;
            }
        }
        std::sort(powers.begin(), powers.end());
    }

    std::vector<double> out;
    out.reserve(bounds.size());
    std::size_t bi = 0, wi = 0;
    double acc = 0;
    // bounds strictly below the next breakpoint see the current prefix
    auto add_breakpoint = [&](std::uint64_t value, double jmp) {
        while (bi < bounds.size() && bounds[bi] < value) out.push_back(acc), ++bi;
        acc += jmp;
    };
    auto add_prime = [&](std::uint64_t pr) {
        while (wi < powers.size() && powers[wi].first < pr)
            add_breakpoint(powers[wi].first, powers[wi].second), ++wi;
        add_breakpoint(pr, 1.0 / static_cast<double>(pr));
    };
    if (limit >= 2) add_prime(2);
    for (std::uint64_t n = 3; n <= limit; n += 2)
        if (!is_comp(n / 2)) add_prime(n);
    while (wi < powers.size()) add_breakpoint(powers[wi].first, powers[wi].second), ++wi;
    while (bi < bounds.size()) out.push_back(acc), ++bi;
    return out;
}

double recompute_prime_reciprocal_constant(const PrimeTables& tables, std::uint64_t p_limit,
                                           double kq_cap) {
    long double s = 0;
    for (std::uint64_t pr : tables.primes) {
        if (pr > p_limit) break;
        long double pk = static_cast<long double>(pr) * pr;
        for (int kk = 2; static_cast<long double>(kk) * pk <= kq_cap; ++kk) {
            s += 1.0L / (kk * pk);
            pk *= pr;
        }
    }
    return static_cast<double>(static_cast<long double>(kEulerGamma) - s);
}

}  // namespace primecouple

#include "primecouple/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace primecouple {

namespace {

std::vector<std::uint64_t> primes_up_to(std::uint64_t b, const PrimeTables& tables) {
    if (b < 2) throw std::invalid_argument("need b >= 2");
    if (b > 30) throw std::invalid_argument("need b <= 30");
    if (tables.limit < b) throw std::invalid_argument("tables must reach b");
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : tables.primes) {
        if (p > b) break;
        out.push_back(p);
    }
    return out;
}

}  // namespace

SmoothVectorLaw SmoothVectorLaw::build(std::uint64_t b, std::uint64_t n,
                                       const PrimeTables& tables) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    SmoothVectorLaw law;
    law.b = b;
    law.n = n;
    law.primes = primes_up_to(b, tables);
    const std::size_t np = law.primes.size();

    std::vector<std::uint64_t> ds;
    auto enumerate = [&](auto&& self, std::size_t i, std::uint64_t v) -> void {
        ds.push_back(v);
        for (std::size_t j = i; j < np; ++j) {
            if (v > n / law.primes[j]) break;
            self(self, j, v * law.primes[j]);
        }
    };
    enumerate(enumerate, 0, 1);
    std::sort(ds.begin(), ds.end());

    // signed subset products of the primes, ascending so the count loop can
    // stop at the first product past n/d
    std::vector<std::pair<std::uint64_t, int>> subs;
    subs.reserve(std::size_t{1} << np);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << np); ++mask) {
        std::uint64_t prod = 1;
        int sign = 1;
        for (std::size_t j = 0; j < np; ++j) {
            if (mask >> j & 1) {
                prod *= law.primes[j];
                sign = -sign;
            }
        }
        subs.emplace_back(prod, sign);
    }
    std::sort(subs.begin(), subs.end());

    double indep_c = 1;
    for (std::uint64_t p : law.primes) indep_c *= 1.0 - 1.0 / static_cast<double>(p);
    law.indep_constant = indep_c;

    law.points.resize(ds.size());
    long double indep_seen = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::uint64_t d = ds[i];
        std::int64_t count = 0;
        std::uint64_t cap = n / d;
        for (const auto& [prod, sign] : subs) {
            if (prod > cap) break;
            count += sign * static_cast<std::int64_t>(n / (d * prod));
        }
        if (count < 0) throw std::logic_error("negative sieve count");
        SmoothLawPoint& pt = law.points[i];
        pt.d = d;
        pt.count = static_cast<std::uint64_t>(count);
        pt.p_uniform = static_cast<double>(count) / static_cast<double>(n);
        pt.p_indep = indep_c / static_cast<double>(d);
        indep_seen += static_cast<long double>(pt.p_indep);
    }
    law.tail_mass_indep = static_cast<double>(1.0L - indep_seen);
    if (law.tail_mass_indep < 0) law.tail_mass_indep = 0;
    return law;
}

double exact_dtv_small_primes(std::uint64_t b, std::uint64_t n, const PrimeTables& tables) {
    if (n > 1000000) throw std::invalid_argument("need n <= 1e6");
    SmoothVectorLaw law = SmoothVectorLaw::build(b, n, tables);
    long double total = law.tail_mass_indep;
    for (const SmoothLawPoint& pt : law.points)
        total += std::abs(static_cast<long double>(pt.p_uniform) - pt.p_indep);
    return static_cast<double>(total);
}

CrudeU crude_u(std::uint64_t b, std::uint64_t n, const PrimeTables& tables) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    std::vector<std::uint64_t> primes = primes_up_to(b, tables);
    CrudeU out;

    if (b < 3) {
        // powers of two only: terms with 2^k > n collapse to a geometric sum
        long double sum = 0;
        std::uint64_t k0 = 0;
        for (std::uint64_t q = 1; q <= n; q *= 2) {
            if (q > 1) sum += 2.0L * static_cast<long double>(n % q) / q;
            k0 += 1;
            if (q > n / 2) break;
        }
        sum /= n;
        sum += std::exp2(2.0L - static_cast<long double>(k0));
        out.value = static_cast<double>(sum);
        out.remainder_bound = 0;
        return out;
    }

    const unsigned __int128 cap = static_cast<unsigned __int128>(n) << 60;
    const std::size_t np = primes.size();
    long double sum = 0;
    auto walk = [&](auto&& self, std::size_t j, unsigned __int128 v, int omega) -> void {
        if (j == np) {
            if (v <= n) {
                auto d = static_cast<std::uint64_t>(v);
                if (d > 1) {
                    long double frac =
                        static_cast<long double>(n % d) / static_cast<long double>(d);
                    sum += std::ldexp(frac / n, omega);
                }
            } else {
                sum += std::ldexp(1.0L / static_cast<long double>(v), omega);
            }
            return;
        }
        self(self, j + 1, v, omega);
        unsigned __int128 w = v;
        const unsigned __int128 lim = cap / primes[j];
        while (w <= lim) {
            w *= primes[j];
            self(self, j + 1, w, omega + 1);
        }
    };
    walk(walk, 0, 1, 0);
    out.value = static_cast<double>(sum);

    double prod = 1;
    for (std::uint64_t p : primes) prod *= 1.0 + 2.0 / (std::sqrt(static_cast<double>(p)) - 1.0);
    out.remainder_bound = prod / std::sqrt(static_cast<double>(cap));
    return out;
}

RunningStat empirical_indel(const GrowContext& ctx, GrowMode mode, bool no_split,
                            std::uint64_t trials, RandomSource& rng) {
    RunningStat stat;
    for (std::uint64_t t = 0; t < trials; ++t) {
        GrownInteger g = grow_integer(ctx, rng, mode, no_split);
        stat.add(static_cast<double>(g.indel));
    }
    return stat;
}

namespace {

struct FlowEdge {
    int to;
    long long cap;
    long long cost;
    int rev;
};

struct FlowNet {
    std::vector<std::vector<FlowEdge>> g;

    explicit FlowNet(int nodes) : g(nodes) {}

    void add(int u, int v, long long cap, long long cost) {
        g[u].push_back({v, cap, cost, static_cast<int>(g[v].size())});
        g[v].push_back({u, 0, -cost, static_cast<int>(g[u].size()) - 1});
    }

    // successive shortest paths with Johnson potentials
    long long min_cost_flow(int s, int t, long long need) {
        const long long inf = std::numeric_limits<long long>::max() / 4;
        int nn = static_cast<int>(g.size());
        std::vector<long long> pot(nn, 0), dist(nn);
        std::vector<int> pv(nn), pe(nn);
        long long total = 0;
        while (need > 0) {
            std::fill(dist.begin(), dist.end(), inf);
            dist[s] = 0;
            using Item = std::pair<long long, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            pq.emplace(0, s);
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d > dist[u]) continue;
                for (std::size_t i = 0; i < g[u].size(); ++i) {
                    const FlowEdge& e = g[u][i];
                    if (e.cap <= 0) continue;
                    long long nd = d + e.cost + pot[u] - pot[e.to];
                    if (nd < dist[e.to]) {
                        dist[e.to] = nd;
                        pv[e.to] = u;
                        pe[e.to] = static_cast<int>(i);
                        pq.emplace(nd, e.to);
                    }
                }
            }
            if (dist[t] >= inf) throw std::logic_error("transport network disconnected");
            for (int u = 0; u < nn; ++u)
                if (dist[u] < inf) pot[u] += dist[u];
            long long push = need;
            for (int u = t; u != s; u = pv[u]) push = std::min(push, g[pv[u]][pe[u]].cap);
            for (int u = t; u != s; u = pv[u]) {
                FlowEdge& e = g[pv[u]][pe[u]];
                e.cap -= push;
                g[u][e.rev].cap += push;
                total += push * e.cost;
            }
            need -= push;
        }
        return total;
    }
};

std::vector<long long> integerize(const std::vector<double>& p, long long denom) {
    std::vector<long long> a(p.size());
    std::vector<std::pair<double, std::size_t>> rem(p.size());
    long long s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0)) throw std::invalid_argument("negative probability");
        double t = p[i] * static_cast<double>(denom);
        a[i] = static_cast<long long>(std::floor(t));
        rem[i] = {t - static_cast<double>(a[i]), i};
        s += a[i];
    }
    std::sort(rem.begin(), rem.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    long long gap = denom - s;
    if (gap < 0 || gap > static_cast<long long>(p.size()) + 1)
        throw std::invalid_argument("probabilities do not sum to 1");
    for (long long k = 0; k < gap; ++k) a[rem[static_cast<std::size_t>(k)].second] += 1;
    return a;
}

std::vector<FactoredInteger> factor_points(const DiscreteLaw& law, const PrimeTables& tables) {
    if (law.point.size() != law.prob.size()) throw std::invalid_argument("ragged law");
    if (law.point.empty() || law.point.size() > 64)
        throw std::invalid_argument("law support must have 1..64 points");
    std::vector<FactoredInteger> out;
    out.reserve(law.point.size());
    for (std::uint64_t v : law.point) {
        if (v < 1 || v > tables.limit) throw std::invalid_argument("point outside tables");
        out.push_back(tables.factor(v));
    }
    return out;
}

}  // namespace

TransportResult ot_oracle_small(const DiscreteLaw& a, const DiscreteLaw& b,
                                const PrimeTables& tables) {
    std::vector<FactoredInteger> fa = factor_points(a, tables);
    std::vector<FactoredInteger> fb = factor_points(b, tables);
    const long long denom = 1000000;
    std::vector<long long> ma = integerize(a.prob, denom);
    std::vector<long long> mb = integerize(b.prob, denom);

    int na = static_cast<int>(fa.size());
    int nb = static_cast<int>(fb.size());
    FlowNet net(na + nb + 2);
    int src = na + nb, snk = na + nb + 1;
    for (int i = 0; i < na; ++i) net.add(src, i, ma[static_cast<std::size_t>(i)], 0);
    for (int j = 0; j < nb; ++j) net.add(na + j, snk, mb[static_cast<std::size_t>(j)], 0);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            auto c = static_cast<long long>(indel_count(fa[static_cast<std::size_t>(i)],
                                                        fb[static_cast<std::size_t>(j)]));
            net.add(i, na + j, denom, c);
        }
    }
    long long cost = net.min_cost_flow(src, snk, denom);

    TransportResult out;
    out.value = static_cast<double>(cost) / static_cast<double>(denom);
    long double moved = 0;
    for (std::size_t i = 0; i < a.prob.size(); ++i)
        moved += std::abs(a.prob[i] - static_cast<double>(ma[i]) / static_cast<double>(denom));
    for (std::size_t j = 0; j < b.prob.size(); ++j)
        moved += std::abs(b.prob[j] - static_cast<double>(mb[j]) / static_cast<double>(denom));
    out.rounding_l1 = static_cast<double>(moved);
    return out;
}

double product_coupling_cost(const DiscreteLaw& a, const DiscreteLaw& b,
                             const PrimeTables& tables) {
    std::vector<FactoredInteger> fa = factor_points(a, tables);
    std::vector<FactoredInteger> fb = factor_points(b, tables);
    long double total = 0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        for (std::size_t j = 0; j < fb.size(); ++j) {
            total += static_cast<long double>(a.prob[i]) * b.prob[j] *
                     static_cast<long double>(indel_count(fa[i], fb[j]));
        }
    }
    return static_cast<double>(total);
}

}  // namespace primecouple

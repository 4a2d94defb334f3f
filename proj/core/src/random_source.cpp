#include "primecouple/random_source.hpp"

#include <cmath>
#include <stdexcept>

namespace primecouple {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::uint64_t z = seed ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull);
    for (auto& w : s_) w = splitmix64(z);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RandomSource::next_u64() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomSource::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RandomSource::uniform_pos() { return 1.0 - uniform01(); }

bool RandomSource::bernoulli(double p) { return uniform01() < p; }

std::uint64_t RandomSource::uniform_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_int: n == 0");
    std::uint64_t rem = (~n + 1) % n;  // 2^64 mod n
    while (true) {
        std::uint64_t r = next_u64();
        if (r >= rem) return r % n;  // rejects the short cycle, no modulo bias
    }
}

double RandomSource::exponential(double rate) {
    if (!(rate > 0)) throw std::invalid_argument("exponential: rate <= 0");
    return -std::log(uniform_pos()) / rate;
}

std::uint64_t RandomSource::poisson(double mean) {
    if (mean < 0) throw std::invalid_argument("poisson: mean < 0");
    if (mean == 0) return 0;
    if (mean > 50.0) return poisson(mean / 2) + poisson(mean / 2);  // infinitely divisible
    double l = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform_pos();
    while (prod > l) {
        ++k;
        prod *= uniform_pos();
    }
    return k;
}

std::uint64_t RandomSource::geometric(double a) {
    if (!(a > 0 && a < 1)) throw std::invalid_argument("geometric: need 0 < a < 1");
    double u = uniform_pos();
    if (u == 1.0) return 0;
    double v = std::floor(std::log(u) / std::log(a));
    return v < 0 ? 0 : static_cast<std::uint64_t>(v);
}

}  // namespace primecouple

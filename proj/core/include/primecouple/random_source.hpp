#pragma once

#include <cstdint>

namespace primecouple {

// Deterministic splittable generator: identical (seed, stream) gives an
// identical draw sequence; distinct streams are independent for practical
// purposes.  xoshiro256++ core, splitmix64 seeding, own distributions so
// results do not depend on any standard-library implementation.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64();
    double uniform01();    // [0, 1), 53-bit
    double uniform_pos();  // (0, 1]
    bool bernoulli(double p);
    std::uint64_t uniform_int(std::uint64_t n);  // uniform on {0, ..., n-1}, unbiased
    double exponential(double rate = 1.0);
    std::uint64_t poisson(double mean);
    // P(Z >= k) = a^k, k = 0, 1, ...
    std::uint64_t geometric(double a);

  private:
    std::uint64_t seed_ = 0, stream_ = 0;
    std::uint64_t s_[4] = {};
};

}  // namespace primecouple

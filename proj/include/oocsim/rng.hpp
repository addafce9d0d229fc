#pragma once

#include <cstdint>
#include <random>

namespace oocsim {

// Seeded pseudo-random stream. The generator is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; it is seeded with splitmix64 of
// (seed, stream) so independent consumers in one run draw from unrelated
// sequences. Conversions to real values are done here rather than through
// <random> distributions, whose algorithms differ between standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64() { return gen_(); }
    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return p > 0.0 && uniform01() < p; }
    // Exponentially distributed with the given mean.
    double exponential(double mean);

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace oocsim

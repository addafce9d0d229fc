#include "oocsim/rng.hpp"

#include <cmath>

namespace oocsim {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), gen_(splitmix64(seed ^ splitmix64(stream + 1)))
{
}

double RngStream::exponential(double mean)
{
    return -mean * std::log1p(-uniform01());
}

}  // namespace oocsim

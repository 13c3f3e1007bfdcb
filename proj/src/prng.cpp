#include "vbp/prng.hpp"

#include <cmath>

namespace vbp {

std::uint64_t SplitMix64::next()
{
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi)
{
    const double span = static_cast<double>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(std::floor(uniform() * span));
}

} // namespace vbp

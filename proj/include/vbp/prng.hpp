#pragma once

#include <cstdint>

namespace vbp {

/// SplitMix64 generator shared by the calculation engine and the numerical
/// oracle. The stream is documented in docs/prng.md; both sides must draw
/// from it identically for their weight trajectories to agree.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next();

    /// Uniform double in [0, 1) built from the top 53 bits of next().
    double uniform();

    /// lo + floor(uniform() * (hi - lo + 1)); requires lo <= hi.
    std::int64_t between(std::int64_t lo, std::int64_t hi);

    std::uint64_t state() const { return state_; }
    void set_state(std::uint64_t s) { state_ = s; }

private:
    std::uint64_t state_;
};

} // namespace vbp

#pragma once

#include "vbp/network_spec.hpp"
#include "vbp/oracle/matrix.hpp"
#include "vbp/oracle/network.hpp"
#include "vbp/prng.hpp"

#include <vector>

namespace vbp::oracle {

/// Replays the two-region training sheet numerically: the same sample
/// counters, the same PRNG draws in the same order, and per pass one step
/// for Region A (from Region B's previous-pass trace) followed by one step
/// for Region B (from Region A's current-pass trace).
class VbpSimulator {
public:
    /// `records` holds S rows of n inputs followed by m_q targets.
    VbpSimulator(const NetworkSpec& spec, std::vector<std::vector<double>> records);

    /// The ru = 0 pass: fresh random Region A weights.
    void init_pass();
    /// One ru = 1 pass.
    void train_pass();

    const std::vector<Matrix>& weights_a() const { return wa_; }
    const std::vector<Matrix>& weights_b() const { return wb_; }
    int itc() const { return itc_; }
    int itcp1() const { return itcp1_; }
    std::uint64_t rng_state() const { return rng_.state(); }

private:
    void advance_counters();
    int step_itc(int itc);
    void region_a(bool randomise);
    void region_b();
    std::vector<double> inputs(int record) const;
    std::vector<double> targets(int record) const;

    NetworkSpec spec_;
    std::vector<std::vector<double>> records_;
    int samples_;
    int stride_;
    SplitMix64 rng_;
    int itc_ = 0;
    int itcp1_ = 0;
    std::vector<Matrix> wa_;
    std::vector<Matrix> wb_;
    ForwardTrace trace_a_;
    ForwardTrace trace_b_;
    std::vector<std::vector<double>> delta_a_;
    std::vector<std::vector<double>> delta_b_;
};

/// Region B weights after the init pass (index 0) and after each of
/// `passes` training passes.
std::vector<std::vector<Matrix>> simulate_vbp(const NetworkSpec& spec, const std::vector<std::vector<double>>& records,
                                              int passes);

} // namespace vbp::oracle

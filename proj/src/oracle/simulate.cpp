#include "vbp/oracle/simulate.hpp"

#include "vbp/errors.hpp"

#include <cmath>

namespace vbp::oracle {

namespace {

int mod(long long n, int d)
{
    long long r = n % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

} // namespace

VbpSimulator::VbpSimulator(const NetworkSpec& spec, std::vector<std::vector<double>> records)
    : spec_(spec), records_(std::move(records)), samples_(static_cast<int>(records_.size())), rng_(spec.seed)
{
    spec_.validate();
    if (samples_ < 2)
        throw ValidationError("at least two training records are required");
    const std::size_t width = static_cast<std::size_t>(spec_.inputs() + spec_.outputs());
    for (const auto& r : records_)
        if (r.size() != width)
            throw ValidationError("record width does not match the topology");
    stride_ = spec_.stride > 0 ? spec_.stride : auto_stride(samples_);
    wa_ = zero_weights(spec_.topology);
    wb_ = wa_;

    // Entry evaluation of the counters (itc reads a blank, i.e. 0).
    itc_ = step_itc(0);
    itcp1_ = mod(itc_ + spec_.pair_offset, samples_);
}

int VbpSimulator::step_itc(int itc)
{
    switch (spec_.sampling) {
    case Sampling::sequential: return mod(itc + 1, samples_);
    case Sampling::shuffled: return mod(itc + stride_, samples_);
    case Sampling::random: return mod(itc + rng_.between(0, samples_ - 1), samples_);
    }
    return 0;
}

void VbpSimulator::advance_counters()
{
    itc_ = step_itc(itc_);
    itcp1_ = mod(itc_ + spec_.pair_offset, samples_);
}

std::vector<double> VbpSimulator::inputs(int record) const
{
    const auto& r = records_[static_cast<std::size_t>(record)];
    return {r.begin(), r.begin() + spec_.inputs()};
}

std::vector<double> VbpSimulator::targets(int record) const
{
    const auto& r = records_[static_cast<std::size_t>(record)];
    return {r.begin() + spec_.inputs(), r.end()};
}

void VbpSimulator::region_a(bool randomise)
{
    const std::size_t q = wa_.size();
    for (std::size_t h = 0; h < q; ++h) {
        Matrix& w = wa_[h];
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j) {
                if (randomise) {
                    double u = rng_.uniform();
                    w(i, j) = spec_.init == RandomInit::symmetric ? 2.0 * u - 1.0 : u;
                } else {
                    w(i, j) = wb_[h](i, j) + spec_.eta[h] * (trace_b_.out[h][j] * delta_b_[h][i]);
                }
            }
    }
    Network net = make_network(spec_, wa_);
    trace_a_ = forward(net, inputs(itc_));
    delta_a_ = deltas(net, trace_a_, targets(itc_));
}

void VbpSimulator::region_b()
{
    for (std::size_t h = 0; h < wb_.size(); ++h) {
        Matrix& w = wb_[h];
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j)
                w(i, j) = wa_[h](i, j) + spec_.eta[h] * (trace_a_.out[h][j] * delta_a_[h][i]);
    }
    Network net = make_network(spec_, wb_);
    trace_b_ = forward(net, inputs(itcp1_));
    delta_b_ = deltas(net, trace_b_, targets(itcp1_));
}

void VbpSimulator::init_pass()
{
    advance_counters();
    region_a(true);
    region_b();
}

void VbpSimulator::train_pass()
{
    advance_counters();
    region_a(false);
    region_b();
}

std::vector<std::vector<Matrix>> simulate_vbp(const NetworkSpec& spec, const std::vector<std::vector<double>>& records,
                                              int passes)
{
    VbpSimulator sim(spec, records);
    std::vector<std::vector<Matrix>> out;
    out.reserve(static_cast<std::size_t>(passes) + 1);
    sim.init_pass();
    out.push_back(sim.weights_b());
    for (int k = 0; k < passes; ++k) {
        sim.train_pass();
        out.push_back(sim.weights_b());
    }
    return out;
}

} // namespace vbp::oracle

#pragma once

#include "vbp/network_spec.hpp"
#include "vbp/oracle/matrix.hpp"

#include <vector>

namespace vbp::oracle {

struct Layer {
    Matrix w; // m_h x (m_{h-1} + 1); the last column multiplies the bias 1
    Activation f = Activation::tanh;
    double eta = 0.1;
};

using Network = std::vector<Layer>;

struct ForwardTrace {
    /// out[0] is the bias-extended input; out[h] for h < q is bias-extended;
    /// out[q] is the network output.
    std::vector<std::vector<double>> out;
    /// z[h-1] = w_h * out[h-1].
    std::vector<std::vector<double>> z;

    const std::vector<double>& output() const { return out.back(); }
};

double activate(Activation f, double z);

/// f'(z) written in terms of out = f(z): 1-out^2, out(1-out), 1, u(out).
double derivative_factor(Activation f, double out);

ForwardTrace forward(const Network& net, const std::vector<double>& x);

/// delta[h-1] for h = 1..q, each of length m_h.
std::vector<std::vector<double>> deltas(const Network& net, const ForwardTrace& trace,
                                        const std::vector<double>& targ);

/// w_h += eta_h * (out_{h-1})^T (x) delta_h for every layer, from a single
/// forward/delta evaluation at the current weights.
void apply_step(Network& net, const ForwardTrace& trace, const std::vector<std::vector<double>>& deltas);
Network sgd_step(const Network& net, const std::vector<double>& x, const std::vector<double>& targ);

/// Layers with the given weights and the activations and rates of `spec`.
Network make_network(const NetworkSpec& spec, const std::vector<Matrix>& weights);

/// Zero-initialised weights of the right shapes.
std::vector<Matrix> zero_weights(const std::vector<int>& topology);

} // namespace vbp::oracle

#include "vbp/oracle/network.hpp"

#include <cmath>
#include <stdexcept>

namespace vbp::oracle {

double activate(Activation f, double z)
{
    switch (f) {
    case Activation::tanh: return std::tanh(z);
    case Activation::logistic: return 1.0 / (1.0 + std::exp(-z));
    case Activation::identity: return z;
    case Activation::relu: return z > 0.0 ? z : 0.0;
    }
    return z;
}

double derivative_factor(Activation f, double out)
{
    switch (f) {
    case Activation::tanh: return 1.0 - out * out;
    case Activation::logistic: return out * (1.0 - out);
    case Activation::identity: return 1.0;
    case Activation::relu: return out > 0.0 ? 1.0 : 0.0;
    }
    return 1.0;
}

ForwardTrace forward(const Network& net, const std::vector<double>& x)
{
    if (net.empty() || net.front().w.cols() != x.size() + 1)
        throw std::invalid_argument("forward: input length does not match the first layer");
    ForwardTrace t;
    t.out.reserve(net.size() + 1);
    t.out.push_back(x);
    t.out.back().push_back(1.0);
    for (std::size_t h = 0; h < net.size(); ++h) {
        const Matrix& w = net[h].w;
        const auto& prev = t.out.back();
        if (w.cols() != prev.size())
            throw std::invalid_argument("forward: layer shapes do not chain");
        std::vector<double> z(w.rows());
        std::vector<double> o(w.rows());
        for (std::size_t i = 0; i < w.rows(); ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k < w.cols(); ++k)
                acc += w(i, k) * prev[k];
            z[i] = acc;
            o[i] = activate(net[h].f, acc);
        }
        if (h + 1 < net.size())
            o.push_back(1.0);
        t.z.push_back(std::move(z));
        t.out.push_back(std::move(o));
    }
    return t;
}

namespace {

// Same operation order as the generated delta formulas.
double scaled(Activation f, double v, double out)
{
    switch (f) {
    case Activation::tanh: return v * (1.0 - out * out);
    case Activation::logistic: return v * (out * (1.0 - out));
    case Activation::identity: return v;
    case Activation::relu: return v * (out > 0.0 ? 1.0 : 0.0);
    }
    return v;
}

} // namespace

std::vector<std::vector<double>> deltas(const Network& net, const ForwardTrace& trace,
                                        const std::vector<double>& targ)
{
    const std::size_t q = net.size();
    const auto& out = trace.output();
    if (targ.size() != out.size())
        throw std::invalid_argument("deltas: target length does not match the output");
    std::vector<std::vector<double>> d(q);
    d[q - 1].resize(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        d[q - 1][i] = scaled(net[q - 1].f, targ[i] - out[i], out[i]);
    for (std::size_t h = q - 1; h-- > 0;) {
        const Matrix& w = net[h + 1].w;
        const auto& o = trace.out[h + 1];
        const std::size_t m = w.cols() - 1;
        d[h].resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < w.rows(); ++i)
                acc += w(i, j) * d[h + 1][i];
            d[h][j] = scaled(net[h].f, acc, o[j]);
        }
    }
    return d;
}

void apply_step(Network& net, const ForwardTrace& trace, const std::vector<std::vector<double>>& d)
{
    for (std::size_t h = 0; h < net.size(); ++h) {
        Matrix& w = net[h].w;
        const auto& prev = trace.out[h];
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j)
                w(i, j) = w(i, j) + net[h].eta * (prev[j] * d[h][i]);
    }
}

Network sgd_step(const Network& net, const std::vector<double>& x, const std::vector<double>& targ)
{
    ForwardTrace t = forward(net, x);
    auto d = deltas(net, t, targ);
    Network next = net;
    apply_step(next, t, d);
    return next;
}

Network make_network(const NetworkSpec& spec, const std::vector<Matrix>& weights)
{
    if (weights.size() != static_cast<std::size_t>(spec.layers()))
        throw std::invalid_argument("make_network: wrong number of weight matrices");
    Network net;
    for (std::size_t h = 0; h < weights.size(); ++h)
        net.push_back({weights[h], spec.activations[h], spec.eta[h]});
    return net;
}

std::vector<Matrix> zero_weights(const std::vector<int>& topology)
{
    std::vector<Matrix> w;
    for (std::size_t h = 1; h < topology.size(); ++h)
        w.emplace_back(static_cast<std::size_t>(topology[h]), static_cast<std::size_t>(topology[h - 1] + 1));
    return w;
}

} // namespace vbp::oracle

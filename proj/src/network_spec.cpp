#include "vbp/network_spec.hpp"

#include "vbp/errors.hpp"

#include <cctype>
#include <charconv>

namespace vbp {

std::size_t NetworkSpec::parameter_count() const
{
    std::size_t total = 0;
    for (std::size_t h = 1; h < topology.size(); ++h)
        total += static_cast<std::size_t>(topology[h]) * static_cast<std::size_t>(topology[h - 1] + 1);
    return total;
}

bool NetworkSpec::shared_eta() const
{
    for (double e : eta)
        if (e != eta.front())
            return false;
    return true;
}

void NetworkSpec::validate() const
{
    if (topology.size() < 2)
        throw ValidationError("topology needs an input size and at least one layer");
    for (int m : topology)
        if (m < 1)
            throw ValidationError("every layer size must be at least 1");
    const auto q = static_cast<std::size_t>(layers());
    if (activations.size() != q)
        throw ValidationError("expected " + std::to_string(q) + " activations, got " +
                              std::to_string(activations.size()));
    if (eta.size() != q)
        throw ValidationError("expected " + std::to_string(q) + " learning rates, got " + std::to_string(eta.size()));
    for (double e : eta)
        if (!(e > 0.0))
            throw ValidationError("learning rates must be positive");
    if (stride < 0)
        throw ValidationError("stride must be non-negative");
    if (pair_offset < 0)
        throw ValidationError("pair offset must be non-negative");
}

std::vector<int> parse_topology(std::string_view text)
{
    std::vector<int> out;
    std::size_t i = 0;
    for (;;) {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (i == start) {
            if (i < text.size())
                throw ParseError(std::string("unexpected character '") + text[i] + "' in topology", i);
            throw ParseError("topology ends with '-'", i);
        }
        int v = 0;
        auto res = std::from_chars(text.data() + start, text.data() + i, v);
        if (res.ec != std::errc())
            throw ParseError("layer size out of range", start);
        out.push_back(v);
        if (i == text.size())
            break;
        if (text[i] != '-')
            throw ParseError(std::string("unexpected character '") + text[i] + "' in topology", i);
        ++i;
    }
    if (out.size() < 2)
        throw ParseError("topology needs at least two sizes", 0);
    for (std::size_t k = 0; k < out.size(); ++k)
        if (out[k] < 1)
            throw ParseError("layer sizes must be positive", 0);
    return out;
}

std::string format_topology(const std::vector<int>& topology)
{
    std::string s;
    for (std::size_t i = 0; i < topology.size(); ++i) {
        if (i)
            s += '-';
        s += std::to_string(topology[i]);
    }
    return s;
}

Activation parse_activation(std::string_view t)
{
    if (t == "tanh")
        return Activation::tanh;
    if (t == "logistic" || t == "sigmoid")
        return Activation::logistic;
    if (t == "identity" || t == "linear")
        return Activation::identity;
    if (t == "relu")
        return Activation::relu;
    throw ValidationError("unknown activation '" + std::string(t) + "'");
}

std::string_view activation_name(Activation a)
{
    switch (a) {
    case Activation::tanh: return "tanh";
    case Activation::logistic: return "logistic";
    case Activation::identity: return "identity";
    case Activation::relu: return "relu";
    }
    return "?";
}

Sampling parse_sampling(std::string_view t)
{
    if (t == "sequential")
        return Sampling::sequential;
    if (t == "shuffled")
        return Sampling::shuffled;
    if (t == "random")
        return Sampling::random;
    throw ValidationError("unknown sampling mode '" + std::string(t) + "'");
}

std::string_view sampling_name(Sampling s)
{
    switch (s) {
    case Sampling::sequential: return "sequential";
    case Sampling::shuffled: return "shuffled";
    case Sampling::random: return "random";
    }
    return "?";
}

RandomInit parse_init(std::string_view t)
{
    if (t == "uniform01" || t == "uniform")
        return RandomInit::uniform01;
    if (t == "symmetric")
        return RandomInit::symmetric;
    throw ValidationError("unknown init '" + std::string(t) + "'");
}

std::string_view init_name(RandomInit i)
{
    return i == RandomInit::uniform01 ? "uniform01" : "symmetric";
}

int auto_stride(int samples)
{
    auto is_prime = [](int p) {
        if (p < 2)
            return false;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0)
                return false;
        return true;
    };
    for (int p = (samples - 1) / 2; p >= 2; --p) {
        if (2 * p >= samples)
            continue;
        if (is_prime(p) && samples % p != 0)
            return p;
    }
    return 1;
}

} // namespace vbp

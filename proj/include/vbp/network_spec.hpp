#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vbp {

enum class Activation { tanh, logistic, identity, relu };
enum class Sampling { sequential, shuffled, random };
enum class RandomInit { uniform01, symmetric };

struct NetworkSpec {
    std::vector<int> topology; // n, m_1, ..., m_q
    std::vector<Activation> activations; // one per layer h = 1..q
    std::vector<double> eta;             // one per layer h = 1..q
    std::uint64_t seed = 0;
    Sampling sampling = Sampling::sequential;
    int stride = 0;      // shuffled mode; 0 selects auto_stride(S)
    int pair_offset = 1; // itcp1 = MOD(itc + pair_offset, S)
    RandomInit init = RandomInit::uniform01;

    int layers() const { return static_cast<int>(topology.size()) - 1; }
    int inputs() const { return topology.front(); }
    int outputs() const { return topology.back(); }
    /// Total weight count: sum over h of m_h * (m_{h-1} + 1).
    std::size_t parameter_count() const;
    bool shared_eta() const;
    /// Throws ValidationError when sizes, activations or eta are invalid.
    void validate() const;
};

/// "2-2-2-2" -> {2,2,2,2}; throws ParseError on malformed text.
std::vector<int> parse_topology(std::string_view text);
std::string format_topology(const std::vector<int>& topology);

Activation parse_activation(std::string_view text);
std::string_view activation_name(Activation a);
Sampling parse_sampling(std::string_view text);
std::string_view sampling_name(Sampling s);
RandomInit parse_init(std::string_view text);
std::string_view init_name(RandomInit i);

/// Largest prime below S/2 that does not divide S (179 for S = 360), or 1
/// when there is none.
int auto_stride(int samples);

} // namespace vbp

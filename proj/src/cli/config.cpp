#include "vbp/cli/config.hpp"

#include "vbp/errors.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace vbp::cli {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <class T>
T parse_integer(std::string_view s, const char* what)
{
    T v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ValidationError(std::string("expected an integer for ") + what + ", found '" + std::string(s) + "'");
    return v;
}

double parse_double(std::string_view s, const char* what)
{
    double v = 0.0;
    if (!data::parse_number(s, v))
        throw ValidationError(std::string("expected a number for ") + what + ", found '" + std::string(s) + "'");
    return v;
}

} // namespace

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> out;
    while (true) {
        auto comma = text.find(',');
        auto item = trim(text.substr(0, comma));
        if (!item.empty())
            out.emplace_back(item);
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

RunConfig parse_config(std::string_view text, const std::string& source, const std::filesystem::path& base_dir)
{
    RunConfig cfg;
    std::map<std::string, int> seen;
    std::vector<std::string> activations;
    std::vector<double> eta;
    int line_no = 0;
    int topology_line = 0;
    auto fail = [&](int line, const std::string& msg) {
        throw ValidationError(source + ":" + std::to_string(line) + ": " + msg);
    };

    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(line_no, "expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (seen.count(key))
            fail(line_no, "'" + key + "' already set on line " + std::to_string(seen[key]));
        seen[key] = line_no;
        try {
            if (key == "topology") {
                cfg.spec.topology = parse_topology(value);
                topology_line = line_no;
            } else if (key == "activations") {
                activations = split_list(value);
                for (const auto& a : activations)
                    parse_activation(a);
            } else if (key == "eta") {
                for (const auto& e : split_list(value))
                    eta.push_back(parse_double(e, "eta"));
            } else if (key == "seed") {
                cfg.spec.seed = parse_integer<std::uint64_t>(value, "seed");
            } else if (key == "sampling") {
                cfg.spec.sampling = parse_sampling(value);
            } else if (key == "stride") {
                cfg.spec.stride = parse_integer<int>(value, "stride");
            } else if (key == "pair_offset") {
                cfg.spec.pair_offset = parse_integer<int>(value, "pair_offset");
            } else if (key == "init") {
                cfg.spec.init = parse_init(value);
            } else if (key == "epochs") {
                cfg.epochs = parse_integer<int>(value, "epochs");
            } else if (key == "data") {
                std::filesystem::path p{std::string(value)};
                cfg.data = p.is_absolute() ? p : base_dir / p;
            } else if (key == "inputs") {
                cfg.inputs = split_list(value);
            } else if (key == "targets") {
                cfg.targets = split_list(value);
            } else if (key == "split") {
                cfg.split.in_count = parse_integer<int>(value, "split");
            } else if (key == "split_order") {
                if (value == "file")
                    cfg.split.order = data::SplitOrder::file;
                else if (value == "shuffled")
                    cfg.split.order = data::SplitOrder::shuffled;
                else
                    throw ValidationError("split_order must be file or shuffled");
            } else if (key == "split_seed") {
                cfg.split.seed = parse_integer<std::uint64_t>(value, "split_seed");
            } else if (key == "scaler") {
                if (value == "none")
                    cfg.scaler.reset();
                else
                    cfg.scaler = data::parse_scaler_kind(value);
            } else {
                fail(line_no, "unknown key '" + key + "'");
            }
        } catch (const ValidationError& e) {
            std::string what = e.what();
            if (what.rfind(source + ":", 0) == 0)
                throw;
            fail(line_no, what);
        }
    }

    if (cfg.spec.topology.empty())
        fail(line_no, "missing 'topology'");
    const auto q = static_cast<std::size_t>(cfg.spec.layers());
    if (activations.empty())
        activations.assign(q, "tanh");
    if (activations.size() == 1)
        activations.assign(q, activations.front());
    if (activations.size() != q)
        fail(seen.count("activations") ? seen["activations"] : topology_line,
             "expected " + std::to_string(q) + " activations");
    for (const auto& a : activations)
        cfg.spec.activations.push_back(parse_activation(a));
    if (eta.empty())
        eta.push_back(0.1);
    if (eta.size() == 1)
        eta.assign(q, eta.front());
    if (eta.size() != q)
        fail(seen["eta"], "expected 1 or " + std::to_string(q) + " eta values");
    cfg.spec.eta = eta;
    if (cfg.epochs < 0)
        fail(seen["epochs"], "epochs must be non-negative");
    try {
        cfg.spec.validate();
    } catch (const ValidationError& e) {
        fail(topology_line, e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string(), path.parent_path());
}

} // namespace vbp::cli

#include "vbp/cli/report.hpp"

#include "vbp/errors.hpp"
#include "vbp/oracle/network.hpp"
#include "vbp/value.hpp"

#include <cmath>

namespace vbp::cli {

double PreparedData::target_alpha(int k) const
{
    if (!scaler)
        return 1.0;
    return scaler->column(static_cast<std::size_t>(in_raw.input_count + k)).alpha;
}

PreparedData prepare_data(const RunConfig& cfg)
{
    if (cfg.data.empty())
        throw ValidationError("no data file configured");
    data::Dataset ds = data::make_dataset(data::read_csv(cfg.data), cfg.inputs, cfg.targets);
    data::Validation v = data::validate(ds);
    PreparedData p;
    p.total_rows = ds.raw.size();
    p.rejected_rows = v.rejected_rows.size();
    const int width = cfg.spec.inputs() + cfg.spec.outputs();
    if (static_cast<int>(v.valid.columns.size()) != width || v.valid.input_count != cfg.spec.inputs())
        throw ValidationError("topology " + format_topology(cfg.spec.topology) + " expects " +
                              std::to_string(cfg.spec.inputs()) + " inputs and " +
                              std::to_string(cfg.spec.outputs()) + " targets; the data selects " +
                              std::to_string(v.valid.input_count) + " and " +
                              std::to_string(v.valid.target_count()));
    if (cfg.split.in_count > 0) {
        data::Split s = data::split(v.valid, cfg.split);
        p.in_raw = std::move(s.in_sample);
        p.out_raw = std::move(s.out_sample);
    } else {
        p.in_raw = v.valid;
        p.out_raw.columns = v.valid.columns;
        p.out_raw.input_count = v.valid.input_count;
    }
    if (cfg.scaler) {
        p.scaler = data::fit_scaler(p.in_raw, *cfg.scaler);
        p.in_scaled = p.scaler->apply(p.in_raw);
        p.out_scaled = p.scaler->apply(p.out_raw);
    } else {
        p.in_scaled = p.in_raw;
        p.out_scaled = p.out_raw;
    }
    return p;
}

double average_abs_error(const NetworkSpec& spec, const std::vector<oracle::Matrix>& weights,
                         const PreparedData& data, const data::NumericTable& scaled)
{
    if (scaled.rows.empty())
        throw ValidationError("no rows to evaluate");
    const oracle::Network net = oracle::make_network(spec, weights);
    const int n = spec.inputs();
    const int m = spec.outputs();
    double sum = 0.0;
    for (const auto& row : scaled.rows) {
        std::vector<double> x(row.begin(), row.begin() + n);
        auto trace = oracle::forward(net, x);
        const auto& out = trace.output();
        for (int k = 0; k < m; ++k)
            sum += std::abs(row[static_cast<std::size_t>(n + k)] - out[static_cast<std::size_t>(k)]) /
                   std::abs(data.target_alpha(k));
    }
    const double avg = sum / static_cast<double>(scaled.rows.size() * static_cast<std::size_t>(m));
    if (!std::isfinite(avg))
        throw NumericalError("average absolute error is not finite");
    return avg;
}

std::string num(double v)
{
    return format_number(v);
}

std::string report_csv(const RunReport& r)
{
    std::string out = "epoch,in_err,out_err,ema\n";
    for (const auto& row : r.rows)
        out += num(row.epoch) + "," + num(row.in_err) + "," + (row.out_err ? num(*row.out_err) : std::string()) + "," +
               num(row.ema) + "\n";
    return out;
}

std::string weights_csv(const std::vector<oracle::Matrix>& w)
{
    std::string out = "layer,row,col,value\n";
    for (std::size_t h = 0; h < w.size(); ++h)
        for (std::size_t i = 0; i < w[h].rows(); ++i)
            for (std::size_t j = 0; j < w[h].cols(); ++j)
                out += std::to_string(h + 1) + "," + std::to_string(i) + "," + std::to_string(j) + "," +
                       num(w[h](i, j)) + "\n";
    return out;
}

} // namespace vbp::cli

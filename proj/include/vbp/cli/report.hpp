#pragma once

#include "vbp/cli/config.hpp"
#include "vbp/data/scaler.hpp"
#include "vbp/network_spec.hpp"
#include "vbp/oracle/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vbp::cli {

/// Validated, split and scaled data for one configuration.
struct PreparedData {
    data::NumericTable in_raw;
    data::NumericTable out_raw;
    data::NumericTable in_scaled;
    data::NumericTable out_scaled;
    std::optional<data::Scaler> scaler;
    std::size_t total_rows = 0;
    std::size_t rejected_rows = 0;

    bool has_out_sample() const { return !out_raw.rows.empty(); }
    /// Alpha of target column k (1 without a scaler).
    double target_alpha(int k) const;
};

PreparedData prepare_data(const RunConfig& cfg);

/// Mean over rows and outputs of |targ - out| in original units, with
/// outputs from the oracle forward pass on `weights`.
double average_abs_error(const NetworkSpec& spec, const std::vector<oracle::Matrix>& weights,
                         const PreparedData& data, const data::NumericTable& scaled);

struct EpochRow {
    double epoch = 0.0;
    double in_err = 0.0;
    std::optional<double> out_err;
    double ema = 0.0;
};

struct RunReport {
    std::vector<EpochRow> rows;
};

/// Snapshot kept whenever the out-sample error improves.
struct BestWeights {
    double epoch = 0.0;
    double out_err = 0.0;
    std::vector<oracle::Matrix> weights;
};

/// "epoch,in_err,out_err,ema"; out_err is empty without an out-sample set.
std::string report_csv(const RunReport& r);

/// "layer,row,col,value" with 1-based layer and 0-based row/col.
std::string weights_csv(const std::vector<oracle::Matrix>& w);

/// Shortest round-trip text of a double.
std::string num(double v);

} // namespace vbp::cli

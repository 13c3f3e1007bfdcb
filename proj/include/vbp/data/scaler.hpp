#pragma once

#include "vbp/data/dataset.hpp"

#include <string>
#include <vector>

namespace vbp::data {

enum class ScalerKind { zscore, range };

ScalerKind parse_scaler_kind(std::string_view text);
std::string_view scaler_kind_name(ScalerKind k);

/// y = alpha * x + beta for one column.
struct ColumnScale {
    std::string column;
    ScalerKind kind = ScalerKind::zscore;
    double alpha = 1.0;
    double beta = 0.0;

    double apply(double x) const { return alpha * x + beta; }
    double invert(double y) const { return (y - beta) / alpha; }
};

/// zscore: alpha = 1/sigma, beta = -mu/sigma with the population standard
/// deviation. range: maps [min, max] onto [lo, hi]. Throws ValidationError
/// for a constant column.
ColumnScale fit_column(const std::string& name, const std::vector<double>& values, ScalerKind kind, double lo = -1.0,
                       double hi = 1.0);

struct Scaler {
    std::vector<ColumnScale> columns;

    NumericTable apply(const NumericTable& t) const;
    NumericTable invert(const NumericTable& t) const;
    const ColumnScale& column(std::size_t i) const { return columns.at(i); }
};

/// Fits every column of `in_sample` independently.
Scaler fit_scaler(const NumericTable& in_sample, ScalerKind kind);

/// Sidecar form: header "column,kind,alpha,beta" then one row per column.
std::string scaler_csv(const Scaler& s);
Scaler parse_scaler_csv(std::string_view text);

} // namespace vbp::data

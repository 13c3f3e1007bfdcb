#include "vbp/data/scaler.hpp"

#include "vbp/data/csv.hpp"
#include "vbp/errors.hpp"
#include "vbp/value.hpp"

#include <algorithm>
#include <cmath>

namespace vbp::data {

ScalerKind parse_scaler_kind(std::string_view text)
{
    if (text == "zscore")
        return ScalerKind::zscore;
    if (text == "range")
        return ScalerKind::range;
    throw ValidationError("unknown scaler '" + std::string(text) + "' (expected zscore or range)");
}

std::string_view scaler_kind_name(ScalerKind k)
{
    return k == ScalerKind::zscore ? "zscore" : "range";
}

ColumnScale fit_column(const std::string& name, const std::vector<double>& values, ScalerKind kind, double lo,
                       double hi)
{
    if (values.empty())
        throw ValidationError("column '" + name + "' has no values to fit");
    ColumnScale s;
    s.column = name;
    s.kind = kind;
    if (kind == ScalerKind::zscore) {
        double sum = 0.0;
        for (double v : values)
            sum += v;
        const double mean = sum / static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values)
            ss += (v - mean) * (v - mean);
        const double sigma = std::sqrt(ss / static_cast<double>(values.size()));
        if (!(sigma > 0.0))
            throw ValidationError("column '" + name + "' is constant; z-score scaling is undefined");
        s.alpha = 1.0 / sigma;
        s.beta = -mean / sigma;
    } else {
        auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        if (!(*mx > *mn))
            throw ValidationError("column '" + name + "' is constant; range scaling is undefined");
        s.alpha = (hi - lo) / (*mx - *mn);
        s.beta = lo - s.alpha * *mn;
    }
    return s;
}

NumericTable Scaler::apply(const NumericTable& t) const
{
    if (t.columns.size() != columns.size())
        throw ValidationError("scaler has " + std::to_string(columns.size()) + " columns, data has " +
                              std::to_string(t.columns.size()));
    NumericTable out = t;
    for (auto& row : out.rows)
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = columns[j].apply(row[j]);
    return out;
}

NumericTable Scaler::invert(const NumericTable& t) const
{
    if (t.columns.size() != columns.size())
        throw ValidationError("scaler column count does not match the data");
    NumericTable out = t;
    for (auto& row : out.rows)
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = columns[j].invert(row[j]);
    return out;
}

Scaler fit_scaler(const NumericTable& in_sample, ScalerKind kind)
{
    Scaler s;
    for (std::size_t j = 0; j < in_sample.columns.size(); ++j) {
        std::vector<double> col;
        col.reserve(in_sample.rows.size());
        for (const auto& row : in_sample.rows)
            col.push_back(row[j]);
        s.columns.push_back(fit_column(in_sample.columns[j], col, kind));
    }
    return s;
}

std::string scaler_csv(const Scaler& s)
{
    std::string out = "column,kind,alpha,beta\n";
    for (const auto& c : s.columns)
        out += csv_line({c.column, std::string(scaler_kind_name(c.kind)), format_number(c.alpha),
                         format_number(c.beta)}) +
               "\n";
    return out;
}

Scaler parse_scaler_csv(std::string_view text)
{
    CsvTable t = parse_csv(text);
    if (t.header != std::vector<std::string>{"column", "kind", "alpha", "beta"})
        throw ValidationError("scaler file must start with 'column,kind,alpha,beta'");
    Scaler s;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        ColumnScale c;
        c.column = r[0];
        c.kind = parse_scaler_kind(r[1]);
        if (!parse_number(r[2], c.alpha) || !parse_number(r[3], c.beta) || c.alpha == 0.0)
            throw ValidationError("line " + std::to_string(t.line_numbers[i]) + ": malformed scale parameters");
        s.columns.push_back(c);
    }
    return s;
}

} // namespace vbp::data

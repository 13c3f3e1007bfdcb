#include "vbp/data/dataset.hpp"

#include "vbp/errors.hpp"
#include "vbp/prng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace vbp::data {

namespace {

int column_of(const std::vector<std::string>& header, const std::string& name)
{
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw ValidationError("unknown column '" + name + "'");
    return static_cast<int>(it - header.begin());
}

NumericTable subset(const NumericTable& t, const std::vector<std::size_t>& rows)
{
    NumericTable out;
    out.columns = t.columns;
    out.input_count = t.input_count;
    for (std::size_t r : rows)
        out.rows.push_back(t.rows[r]);
    return out;
}

} // namespace

bool parse_number(std::string_view text, double& out)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
        text.remove_suffix(1);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    if (text.empty())
        return false;
    auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc() && res.ptr == text.data() + text.size() && std::isfinite(out);
}

Dataset make_dataset(CsvTable table, const std::vector<std::string>& inputs, const std::vector<std::string>& targets)
{
    if (inputs.empty())
        throw ValidationError("no input columns selected");
    if (targets.empty())
        throw ValidationError("no target columns selected");
    Dataset ds;
    ds.columns = std::move(table.header);
    ds.raw = std::move(table.rows);
    ds.line_numbers = std::move(table.line_numbers);
    std::vector<int> seen;
    for (const auto& n : inputs)
        ds.inputs.push_back(column_of(ds.columns, n));
    for (const auto& n : targets)
        ds.targets.push_back(column_of(ds.columns, n));
    seen = ds.inputs;
    seen.insert(seen.end(), ds.targets.begin(), ds.targets.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw ValidationError("a column is selected more than once");
    return ds;
}

Validation validate(const Dataset& ds)
{
    Validation v;
    std::vector<int> order = ds.inputs;
    order.insert(order.end(), ds.targets.begin(), ds.targets.end());
    for (int c : order)
        v.valid.columns.push_back(ds.columns[static_cast<std::size_t>(c)]);
    v.valid.input_count = static_cast<int>(ds.inputs.size());
    for (std::size_t r = 0; r < ds.raw.size(); ++r) {
        std::vector<double> row;
        row.reserve(order.size());
        bool ok = true;
        for (int c : order) {
            double x = 0.0;
            if (!parse_number(ds.raw[r][static_cast<std::size_t>(c)], x)) {
                ok = false;
                break;
            }
            row.push_back(x);
        }
        if (ok) {
            v.valid.rows.push_back(std::move(row));
            v.valid_rows.push_back(r);
        } else {
            v.rejected_rows.push_back(r);
        }
    }
    return v;
}

Split split(const NumericTable& table, const SplitSpec& spec)
{
    const auto total = table.rows.size();
    if (spec.in_count <= 0)
        throw ValidationError("in-sample count must be positive");
    if (static_cast<std::size_t>(spec.in_count) >= total)
        throw ValidationError("in-sample count " + std::to_string(spec.in_count) + " must be below the " +
                              std::to_string(total) + " valid rows");
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    if (spec.order == SplitOrder::shuffled) {
        SplitMix64 rng(spec.seed);
        for (std::size_t i = total - 1; i > 0; --i) {
            auto j = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(i)));
            std::swap(idx[i], idx[j]);
        }
    }
    const auto cut = idx.begin() + spec.in_count;
    return {subset(table, {idx.begin(), cut}), subset(table, {cut, idx.end()})};
}

} // namespace vbp::data

#pragma once

#include "vbp/builder/layout.hpp"
#include "vbp/grid/workbook.hpp"
#include "vbp/network_spec.hpp"

#include <string>
#include <vector>

namespace vbp::builder {

inline constexpr const char* sheet_name = "VBP";

/// Training records: n inputs followed by m_q targets per row.
struct TrainingSet {
    std::vector<std::string> columns; // optional header labels
    std::vector<std::vector<double>> records;
};

/// Formula text for layer h's activation applied to `z`, e.g.
/// "TANH(MMULT(w_1A,inpA))".
std::string activation_formula(Activation f, const std::string& z);
/// Derivative factor in terms of the layer output name, e.g. "(1-outA^2)";
/// empty for the identity.
std::string derivative_formula(Activation f, const std::string& out);

/// Directive text (grid workbook format) for the two-region training sheet,
/// in entry order.
std::string build_directives(const NetworkSpec& spec, const TrainingSet& data);

grid::Workbook build_workbook(const NetworkSpec& spec, const TrainingSet& data);

/// Directive text for a forward-only sheet: a cycling sample driver, the
/// selected record's inputs and targets, literal weights, and the layer
/// outputs. Names carry no region suffix (inp, w_1, out_1, ..., out).
std::string forward_directives(const NetworkSpec& spec, const std::vector<std::vector<std::vector<double>>>& weights,
                               const TrainingSet& data);

/// Fixed cells of the forward-only sheet.
struct ForwardLayout {
    grid::Rect samples;
    grid::Coord driver;
    grid::Rect sample_row;
    RegionLayout region;
    int next_free_row = 0;
};
ForwardLayout forward_layout(const NetworkSpec& spec, int samples);

} // namespace vbp::builder

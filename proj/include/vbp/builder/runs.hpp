#pragma once

#include "vbp/grid/workbook.hpp"
#include "vbp/network_spec.hpp"
#include "vbp/oracle/matrix.hpp"

#include <iosfwd>
#include <vector>

namespace vbp::builder {

/// ru := 0, one pass: Region A draws fresh random weights. Traced as pass 0.
void init_run(grid::Workbook& wb, std::ostream* trace = nullptr);

/// ru := 1, `iterations` passes. Zero iterations leaves the workbook as is.
void train_run(grid::Workbook& wb, int iterations, std::ostream* trace = nullptr, int pass_offset = 0);

/// Weight matrices of the given region ('A' or 'B') read through the
/// w_h<region> names.
std::vector<oracle::Matrix> extract_weights(const grid::Workbook& wb, char region = 'B');

/// Network description recorded in a built workbook's metadata.
NetworkSpec spec_from_workbook(const grid::Workbook& wb);

/// The TrData block as numeric records.
std::vector<std::vector<double>> training_records(const grid::Workbook& wb);

/// Current EMA cells (one per output).
std::vector<double> ema_values(const grid::Workbook& wb);

/// Sheet index of the training sheet; throws ValidationError if absent.
int training_sheet(const grid::Workbook& wb);

} // namespace vbp::builder

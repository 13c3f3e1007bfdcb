#pragma once

#include "vbp/grid/workbook.hpp"
#include "vbp/value.hpp"

#include <iosfwd>
#include <string_view>

namespace vbp::calc {

/// Parses, binds and registers a formula over `region`, then evaluates it
/// once against the current workbook state and stores the result (entry
/// evaluation). Returns the group id. Throws ParseError/ValidationError.
int enter_formula(grid::Workbook& wb, int sheet, const grid::Rect& region, std::string_view text,
                  bool scalar_entry = false);

/// Evaluates group `id` and splices its result into its cells. When `trace`
/// is set, changed cells are written as "pass,cell,old,new" lines.
void evaluate_group(grid::Workbook& wb, int id, std::ostream* trace = nullptr, int pass = 0);

/// Manual-mode Calculate Sheet: max_iterations row-major passes over the
/// sheet's formula anchors; every read sees the latest stored value. Trace
/// lines number passes from pass_offset + 1.
void calculate_sheet(grid::Workbook& wb, int sheet, std::ostream* trace = nullptr, int pass_offset = 0);

/// Evaluates a formula text against the workbook without storing anything.
Value evaluate_text(grid::Workbook& wb, int sheet, std::string_view text);

} // namespace vbp::calc

#pragma once

#include "vbp/grid/workbook.hpp"

#include <string>
#include <vector>

namespace vbp::builder {

/// Text of the circular EMA formula over equally shaped error and EMA
/// blocks with alpha = 2/(periods+1).
std::string ema_formula(const grid::Rect& error, const grid::Rect& ema, int periods);

/// Enters `error_formula` over `error` and the EMA formula over the block
/// immediately to its right. Returns the EMA block.
grid::Rect gen_ema(grid::Workbook& wb, int sheet, const grid::Rect& error, const std::string& error_formula,
                   int periods);

struct Tabulation {
    grid::Rect labels;                   // S x 1, literals 0..S-1
    std::vector<grid::Rect> outputs;     // one S x 1 block per output cell
    std::vector<grid::Rect> targets;
    std::vector<grid::Rect> errors;
    std::vector<grid::Coord> averages;
};

/// Adds an S-row table under `header_row` starting at `label_col`:
/// sample labels, one circular `IF($driver=labels,$output,self)` column per
/// output cell, literal target columns, absolute-error columns and an
/// AVERAGE row. After S passes with a driver that cycles through 0..S-1,
/// every row holds the output produced for its sample.
Tabulation gen_tabulation(grid::Workbook& wb, int sheet, grid::Coord driver,
                          const std::vector<grid::Coord>& output_cells,
                          const std::vector<std::vector<double>>& targets, int header_row, int label_col);

} // namespace vbp::builder

#include "vbp/builder/generators.hpp"

#include "vbp/calc/calculate.hpp"
#include "vbp/errors.hpp"

namespace vbp::builder {

using grid::Coord;
using grid::Rect;

namespace {

std::string absolute(Coord c)
{
    return "$" + grid::column_letters(c.col) + "$" + std::to_string(c.row);
}

void label(grid::Workbook& wb, int sheet, Coord c, const std::string& text)
{
    wb.set_value(sheet, c, Scalar::text(text));
}

} // namespace

std::string ema_formula(const Rect& error, const Rect& ema, int periods)
{
    if (periods < 1)
        throw ValidationError("EMA period count must be positive");
    const std::string alpha = format_number(2.0 / (periods + 1));
    const std::string keep = format_number(static_cast<double>(periods - 1) / (periods + 1));
    const std::string e = grid::format_rect(error);
    const std::string m = grid::format_rect(ema);
    return "=IF(" + m + "=0," + e + "," + alpha + "*" + e + "+" + keep + "*" + m + ")";
}

Rect gen_ema(grid::Workbook& wb, int sheet, const Rect& error, const std::string& error_formula, int periods)
{
    Rect ema{{error.top_left.row, error.bottom_right.col + 1}, {error.bottom_right.row, error.bottom_right.col + 1}};
    if (error.cols() != 1)
        throw ValidationError("EMA error block must be a single column");
    calc::enter_formula(wb, sheet, error, error_formula);
    calc::enter_formula(wb, sheet, ema, ema_formula(error, ema, periods));
    return ema;
}

Tabulation gen_tabulation(grid::Workbook& wb, int sheet, Coord driver, const std::vector<Coord>& output_cells,
                          const std::vector<std::vector<double>>& targets, int header_row, int label_col)
{
    const int S = static_cast<int>(targets.size());
    const int m = static_cast<int>(output_cells.size());
    if (S < 1 || m < 1)
        throw ValidationError("tabulation needs at least one sample and one output");
    for (const auto& t : targets)
        if (static_cast<int>(t.size()) != m)
            throw ValidationError("each target row needs one value per output cell");

    Tabulation tab;
    const int top = header_row + 2;
    label(wb, sheet, {header_row, label_col}, "Tabulate");
    label(wb, sheet, {header_row + 1, label_col}, "Sample#");
    tab.labels = Rect::of({top, label_col}, S, 1);
    for (int i = 0; i < S; ++i)
        wb.set_value(sheet, {top + i, label_col}, Scalar::number(i));

    for (int k = 0; k < m; ++k) {
        tab.outputs.push_back(Rect::of({top, label_col + 1 + k}, S, 1));
        tab.targets.push_back(Rect::of({top, label_col + 1 + m + k}, S, 1));
        tab.errors.push_back(Rect::of({top, label_col + 1 + 2 * m + k}, S, 1));
        label(wb, sheet, {header_row + 1, label_col + 1 + k}, "out" + std::to_string(k + 1));
        label(wb, sheet, {header_row + 1, label_col + 1 + m + k}, "targ" + std::to_string(k + 1));
    }
    label(wb, sheet, {header_row + 1, label_col + 1 + 2 * m}, "Absolute Errors");

    for (int k = 0; k < m; ++k) {
        const Rect& out = tab.outputs[static_cast<std::size_t>(k)];
        calc::enter_formula(wb, sheet, out,
                            "=IF(" + absolute(driver) + "=" + grid::format_rect(tab.labels) + "," +
                                absolute(output_cells[static_cast<std::size_t>(k)]) + "," + grid::format_rect(out) +
                                ")");
    }
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < S; ++i)
            wb.set_value(sheet, {top + i, tab.targets[static_cast<std::size_t>(k)].top_left.col},
                         Scalar::number(targets[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]));
    for (int k = 0; k < m; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        calc::enter_formula(wb, sheet, tab.errors[ku],
                            "=ABS(" + grid::format_rect(tab.targets[ku]) + "-" + grid::format_rect(tab.outputs[ku]) +
                                ")");
    }
    const int avg_row = top + S;
    label(wb, sheet, {avg_row, label_col + 2 * m}, "Average:");
    for (int k = 0; k < m; ++k) {
        Coord c{avg_row, tab.errors[static_cast<std::size_t>(k)].top_left.col};
        calc::enter_formula(wb, sheet, Rect::single(c),
                            "=AVERAGE(" + grid::format_rect(tab.errors[static_cast<std::size_t>(k)]) + ")", true);
        tab.averages.push_back(c);
    }
    return tab;
}

} // namespace vbp::builder

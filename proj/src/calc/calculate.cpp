#include "vbp/calc/calculate.hpp"

#include "vbp/calc/evaluator.hpp"
#include "vbp/formula/parser.hpp"

#include <ostream>

namespace vbp::calc {

int enter_formula(grid::Workbook& wb, int sheet, const grid::Rect& region, std::string_view text,
                  bool scalar_entry)
{
    formula::Ast ast = formula::parse_formula(text);
    wb.bind(*ast, sheet);
    int id = wb.add_group(sheet, region, std::move(ast), scalar_entry);
    evaluate_group(wb, id);
    return id;
}

void evaluate_group(grid::Workbook& wb, int id, std::ostream* trace, int pass)
{
    const grid::ArrayGroup& g = wb.group(id);
    Array vals = evaluate_for_target(wb, g.sheet, *g.ast, g.rect);
    grid::Sheet& sh = wb.sheet(g.sheet);
    const grid::Coord tl = g.rect.top_left;
    if (!trace) {
        for (std::size_t c = 0; c < vals.cols(); ++c) {
            auto& column = sh.column(tl.col + static_cast<int>(c), g.rect.bottom_right.row);
            for (std::size_t r = 0; r < vals.rows(); ++r)
                column[static_cast<std::size_t>(tl.row - 1) + r].value = vals(r, c);
        }
        return;
    }
    for (std::size_t r = 0; r < vals.rows(); ++r)
        for (std::size_t c = 0; c < vals.cols(); ++c) {
            grid::Coord at{tl.row + static_cast<int>(r), tl.col + static_cast<int>(c)};
            grid::Cell& cell = sh.touch(at);
            const Scalar& nv = vals(r, c);
            if (!(cell.value == nv))
                *trace << pass << ',' << sh.name() << '!' << grid::format_coord(at) << ',' << to_display(cell.value)
                       << ',' << to_display(nv) << '\n';
            cell.value = nv;
        }
}

void calculate_sheet(grid::Workbook& wb, int sheet, std::ostream* trace, int pass_offset)
{
    std::vector<int> order;
    order.reserve(wb.sheet(sheet).anchors().size());
    for (const auto& [coord, id] : wb.sheet(sheet).anchors())
        order.push_back(id);
    const int passes = wb.settings().max_iterations;
    for (int pass = 1; pass <= passes; ++pass)
        for (int id : order)
            evaluate_group(wb, id, trace, pass_offset + pass);
}

Value evaluate_text(grid::Workbook& wb, int sheet, std::string_view text)
{
    formula::Ast ast = formula::parse_formula(text);
    wb.bind(*ast, sheet);
    Evaluator ev(wb, sheet, grid::Rect::single({1, 1}));
    return ev.evaluate(*ast);
}

} // namespace vbp::calc

#pragma once

#include "vbp/formula/ast.hpp"
#include "vbp/grid/workbook.hpp"
#include "vbp/value.hpp"

#include <variant>

namespace vbp::calc {

struct Ref {
    int sheet = 0;
    grid::Rect rect;
};

/// Thrown when a volatile call is reached while evaluating for a region of
/// more than one cell. It is raised before any PRNG draw, so the caller can
/// restart the formula once per output cell.
struct NeedsPerCell {};

/// Evaluates one bound formula against the workbook's latest values.
class Evaluator {
public:
    Evaluator(grid::Workbook& wb, int home_sheet, const grid::Rect& target)
        : wb_(wb), home_(home_sheet), target_(target) {}

    /// Region mode: one evaluation for the whole target.
    Value evaluate(const formula::Node& n);

    /// Region mode for splicing into the target: a top-level reference is
    /// read only as far as the target can show (never shrinking a
    /// multi-cell reference to a single cell, which would fill instead).
    Value evaluate_for_splice(const formula::Node& n);

    /// Per-cell mode: RAND/RANDBETWEEN yield one scalar draw for output
    /// cell (r, c) of the target.
    Value evaluate_cell(const formula::Node& n, std::size_t r, std::size_t c);

private:
    using Operand = std::variant<Value, Ref>;

    Operand eval(const formula::Node& n);
    Value value(const formula::Node& n);
    Value to_value(Operand op) const;
    Value deref(const Ref& ref) const;
    Operand call(const formula::Node& n);
    Value eval_if(const formula::Node& n);
    Operand eval_offset(const formula::Node& n);

    grid::Workbook& wb_;
    int home_;
    grid::Rect target_;
    bool per_cell_ = false;
};

/// Fits a result to a rows x cols target: top-left restriction, scalar
/// fill, #N/A where a smaller array leaves cells uncovered. Blank becomes 0.
Array splice(const Value& result, std::size_t rows, std::size_t cols);

/// Evaluates `ast` for `target` (falling back to per-cell evaluation for
/// volatile formulas) and returns the target-shaped values.
Array evaluate_for_target(grid::Workbook& wb, int sheet, const formula::Node& ast, const grid::Rect& target);

} // namespace vbp::calc

#pragma once

#include "vbp/formula/ast.hpp"
#include "vbp/value.hpp"

namespace vbp::calc {

/// A finite number becomes a number scalar; NaN or infinity becomes #NUM!.
Scalar number_result(double v);

/// Arithmetic coercion: blank -> 0, booleans -> 0/1, numeric text parsed,
/// other text -> #VALUE!, errors unchanged.
Scalar to_number(const Scalar& s);

/// Condition coercion for IF: numbers are true when non-zero, blank is
/// false, text is #VALUE!, errors unchanged.
Scalar to_boolean(const Scalar& s);

/// Spreadsheet ordering: blank adapts to the other operand's type, then
/// numbers < text < booleans; text compares case-insensitively. Returns
/// <0, 0, >0. Neither operand may be an error.
int compare(const Scalar& a, const Scalar& b);

/// One binary operator on scalars. Errors propagate (left operand first);
/// division by zero is #DIV/0!; x^2 is computed as x*x.
Scalar binary_op(formula::BinOp op, const Scalar& a, const Scalar& b);

Scalar negate(const Scalar& s);

} // namespace vbp::calc

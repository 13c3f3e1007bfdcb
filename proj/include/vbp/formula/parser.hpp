#pragma once

#include "vbp/formula/ast.hpp"

#include <string_view>

namespace vbp::formula {

/// Parses a formula. A single leading '=' is accepted and skipped.
///
/// Precedence from loosest to tightest: comparison, + -, * /, ^ (right
/// associative), unary + -, primary. Thus -2^2 is (-2)^2. Empty call
/// arguments (as in OFFSET(TrData,itc,)) become `omitted` nodes. Unknown
/// functions and wrong arity are reported here; names are bound later.
Ast parse_formula(std::string_view text);

/// True for identifiers usable as workbook names: `[A-Za-z_][A-Za-z0-9_.]*`,
/// not an A1 reference, not TRUE/FALSE.
bool is_valid_name(std::string_view text);

} // namespace vbp::formula

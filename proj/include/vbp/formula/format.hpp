#pragma once

#include "vbp/formula/ast.hpp"

#include <string>

namespace vbp::formula {

/// Canonical text without the leading '='. Function names are upper-cased,
/// names keep their spelling, and only the parentheses needed to preserve
/// the tree are emitted.
std::string format_formula(const Node& node);

} // namespace vbp::formula

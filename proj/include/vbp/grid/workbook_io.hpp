#pragma once

#include "vbp/grid/workbook.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace vbp::grid {

/// Executes workbook directives in file order; this order is the entry
/// order, so ARRAY/CELL lines are evaluated as they are read.
///
///   NAME <identifier> <sheet>!<range>
///   SET <sheet>!<addr> <literal>            number, TRUE/FALSE or "text"
///   ARRAY <sheet>!<range> =<formula>
///   CELL <sheet>!<addr> =<formula>
///   OPTION max_iterations <int> | rng_seed <int> | rng_state <int>
///   VALUE <sheet>!<addr> <literal>          restores a stored value as is
///   META <key> <value>
///
/// Blank lines and lines starting with '#' are ignored. Errors are reported
/// as ValidationError (or ParseError) prefixed with the line number.
Workbook load_workbook(std::string_view text);

/// Executes directives against an existing workbook, continuing its entry
/// order.
void apply_directives(Workbook& wb, std::string_view text);
Workbook load_workbook_file(const std::filesystem::path& path);

/// Serialises the workbook so that loading the text reproduces the same
/// formulas, names, values and PRNG state.
std::string save_workbook(const Workbook& wb);
void save_workbook_file(const Workbook& wb, const std::filesystem::path& path);

/// Literal text as used by SET/VALUE (numbers in shortest round-trip form).
std::string format_literal(const Scalar& s);
Scalar parse_literal(std::string_view text);

} // namespace vbp::grid

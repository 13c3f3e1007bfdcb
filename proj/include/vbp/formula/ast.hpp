#pragma once

#include "vbp/grid/address.hpp"

#include <memory>
#include <string>
#include <vector>

namespace vbp::formula {

enum class BinOp { add, sub, mul, div, pow, eq, ne, lt, le, gt, ge };

enum class BuiltinId {
    mmult,
    transpose,
    minverse,
    offset,
    mod,
    rand,
    randbetween,
    tanh,
    exp,
    if_,
    abs,
    sum,
    average,
    isnumber,
    max,
    min,
    stdev,
};

enum class NodeKind { number, text, boolean, cell, range, name, omitted, unary, binary, call };

/// One corner of a cell or range reference, with its '$' markers.
struct RefPart {
    grid::Coord coord;
    bool abs_col = false;
    bool abs_row = false;
    friend bool operator==(const RefPart&, const RefPart&) = default;
};

struct Node;
using Ast = std::unique_ptr<Node>;

struct Node {
    NodeKind kind = NodeKind::omitted;

    double number = 0.0;   // number
    bool boolean = false;  // boolean
    std::string text;      // text literal, name, or sheet qualifier of a reference
    RefPart first;         // cell, range
    RefPart second;        // range
    char unary_op = '-';   // unary: '-' or '+'
    BinOp op = BinOp::add; // binary
    BuiltinId fn = BuiltinId::sum;
    std::vector<Ast> args; // unary: 1, binary: 2, call: arguments

    /// Resolved name id (for `name`) or sheet index (for `cell`/`range`),
    /// filled in when a formula is entered into a workbook.
    int binding = -1;
};

Ast make_number(double v);
Ast make_text(std::string s);
Ast make_boolean(bool b);
Ast make_name(std::string name);
Ast make_unary(char op, Ast operand);
Ast make_binary(BinOp op, Ast lhs, Ast rhs);
Ast make_call(BuiltinId fn, std::vector<Ast> args);

/// Deep copy, bindings included.
Ast clone(const Node& node);

/// Equality of shape and payload, ignoring bindings and the case of names
/// and sheet qualifiers.
bool structurally_equal(const Node& a, const Node& b);

/// True if any RAND/RANDBETWEEN call appears anywhere in the tree.
bool contains_volatile(const Node& node);

std::string_view binop_text(BinOp op);

} // namespace vbp::formula

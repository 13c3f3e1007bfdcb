#include "vbp/formula/format.hpp"

#include "vbp/formula/builtins.hpp"
#include "vbp/value.hpp"

#include <cmath>

namespace vbp::formula {

namespace {

enum Prec { p_cmp = 1, p_add, p_mul, p_pow, p_unary, p_primary };

int precedence(BinOp op)
{
    switch (op) {
    case BinOp::add:
    case BinOp::sub: return p_add;
    case BinOp::mul:
    case BinOp::div: return p_mul;
    case BinOp::pow: return p_pow;
    default: return p_cmp;
    }
}

int precedence(const Node& n)
{
    switch (n.kind) {
    case NodeKind::binary: return precedence(n.op);
    case NodeKind::unary: return p_unary;
    case NodeKind::number: return std::signbit(n.number) ? p_unary : p_primary;
    default: return p_primary;
    }
}

std::string ref_text(const RefPart& p)
{
    std::string s;
    if (p.abs_col)
        s += '$';
    s += grid::column_letters(p.coord.col);
    if (p.abs_row)
        s += '$';
    s += std::to_string(p.coord.row);
    return s;
}

void emit(const Node& n, std::string& out);

void emit_wrapped(const Node& n, bool parens, std::string& out)
{
    if (parens)
        out += '(';
    emit(n, out);
    if (parens)
        out += ')';
}

void emit(const Node& n, std::string& out)
{
    switch (n.kind) {
    case NodeKind::number: out += format_number(n.number); return;
    case NodeKind::text:
        out += '"';
        for (char c : n.text) {
            if (c == '"')
                out += '"';
            out += c;
        }
        out += '"';
        return;
    case NodeKind::boolean: out += n.boolean ? "TRUE" : "FALSE"; return;
    case NodeKind::cell:
    case NodeKind::range:
        if (!n.text.empty())
            out += n.text + "!";
        out += ref_text(n.first);
        if (n.kind == NodeKind::range)
            out += ":" + ref_text(n.second);
        return;
    case NodeKind::name: out += n.text; return;
    case NodeKind::omitted: return;
    case NodeKind::unary:
        out += n.unary_op;
        emit_wrapped(*n.args[0], precedence(*n.args[0]) < p_unary, out);
        return;
    case NodeKind::binary: {
        int p = precedence(n.op);
        int lp = precedence(*n.args[0]);
        int rp = precedence(*n.args[1]);
        bool right_assoc = n.op == BinOp::pow;
        emit_wrapped(*n.args[0], lp < p || (right_assoc && lp == p), out);
        out += binop_text(n.op);
        emit_wrapped(*n.args[1], rp < p || (!right_assoc && rp == p), out);
        return;
    }
    case NodeKind::call:
        out += builtin_info(n.fn).name;
        out += '(';
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i)
                out += ',';
            emit(*n.args[i], out);
        }
        out += ')';
        return;
    }
}

} // namespace

std::string format_formula(const Node& node)
{
    std::string out;
    emit(node, out);
    return out;
}

} // namespace vbp::formula

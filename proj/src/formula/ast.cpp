#include "vbp/formula/ast.hpp"

#include "vbp/formula/builtins.hpp"

#include <algorithm>
#include <cctype>

namespace vbp::formula {

namespace {

bool iequal(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

} // namespace

Ast make_number(double v)
{
    auto n = std::make_unique<Node>();
    n->kind = NodeKind::number;
    n->number = v;
    return n;
}

Ast make_text(std::string s)
{
    auto n = std::make_unique<Node>();
    n->kind = NodeKind::text;
    n->text = std::move(s);
    return n;
}

Ast make_boolean(bool b)
{
    auto n = std::make_unique<Node>();
    n->kind = NodeKind::boolean;
    n->boolean = b;
    return n;
}

Ast make_name(std::string name)
{
    auto n = std::make_unique<Node>();
    n->kind = NodeKind::name;
    n->text = std::move(name);
    return n;
}

Ast make_unary(char op, Ast operand)
{
    auto n = std::make_unique<Node>();
    n->kind = NodeKind::unary;
    n->unary_op = op;
    n->args.push_back(std::move(operand));
    return n;
}

Ast make_binary(BinOp op, Ast lhs, Ast rhs)
{
    auto n = std::make_unique<Node>();
    n->kind = NodeKind::binary;
    n->op = op;
    n->args.push_back(std::move(lhs));
    n->args.push_back(std::move(rhs));
    return n;
}

Ast make_call(BuiltinId fn, std::vector<Ast> args)
{
    auto n = std::make_unique<Node>();
    n->kind = NodeKind::call;
    n->fn = fn;
    n->args = std::move(args);
    return n;
}

Ast clone(const Node& node)
{
    auto n = std::make_unique<Node>();
    n->kind = node.kind;
    n->number = node.number;
    n->boolean = node.boolean;
    n->text = node.text;
    n->first = node.first;
    n->second = node.second;
    n->unary_op = node.unary_op;
    n->op = node.op;
    n->fn = node.fn;
    n->binding = node.binding;
    for (const auto& a : node.args)
        n->args.push_back(clone(*a));
    return n;
}

bool structurally_equal(const Node& a, const Node& b)
{
    if (a.kind != b.kind || a.args.size() != b.args.size())
        return false;
    switch (a.kind) {
    case NodeKind::number:
        if (a.number != b.number)
            return false;
        break;
    case NodeKind::text:
        if (a.text != b.text)
            return false;
        break;
    case NodeKind::boolean:
        if (a.boolean != b.boolean)
            return false;
        break;
    case NodeKind::cell:
        if (!iequal(a.text, b.text) || !(a.first == b.first))
            return false;
        break;
    case NodeKind::range:
        if (!iequal(a.text, b.text) || !(a.first == b.first) || !(a.second == b.second))
            return false;
        break;
    case NodeKind::name:
        if (!iequal(a.text, b.text))
            return false;
        break;
    case NodeKind::omitted: break;
    case NodeKind::unary:
        if (a.unary_op != b.unary_op)
            return false;
        break;
    case NodeKind::binary:
        if (a.op != b.op)
            return false;
        break;
    case NodeKind::call:
        if (a.fn != b.fn)
            return false;
        break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!structurally_equal(*a.args[i], *b.args[i]))
            return false;
    return true;
}

bool contains_volatile(const Node& node)
{
    if (node.kind == NodeKind::call && builtin_info(node.fn).is_volatile)
        return true;
    return std::any_of(node.args.begin(), node.args.end(),
                       [](const Ast& a) { return contains_volatile(*a); });
}

std::string_view binop_text(BinOp op)
{
    switch (op) {
    case BinOp::add: return "+";
    case BinOp::sub: return "-";
    case BinOp::mul: return "*";
    case BinOp::div: return "/";
    case BinOp::pow: return "^";
    case BinOp::eq: return "=";
    case BinOp::ne: return "<>";
    case BinOp::lt: return "<";
    case BinOp::le: return "<=";
    case BinOp::gt: return ">";
    case BinOp::ge: return ">=";
    }
    return "?";
}

} // namespace vbp::formula

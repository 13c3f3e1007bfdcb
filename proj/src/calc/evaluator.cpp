#include "vbp/calc/evaluator.hpp"

#include "vbp/calc/builtins_eval.hpp"
#include "vbp/calc/kernels.hpp"
#include "vbp/calc/scalar_ops.hpp"

#include <algorithm>
#include <cmath>

namespace vbp::calc {

using formula::BuiltinId;
using formula::Node;
using formula::NodeKind;

namespace {

// Element (r, c) of v with size-1 stretching, #N/A outside its extent.
Scalar fetch(const Value& v, std::size_t r, std::size_t c)
{
    if (v.is_scalar())
        return v.scalar();
    const Array& a = v.array();
    if ((a.rows() != 1 && r >= a.rows()) || (a.cols() != 1 && c >= a.cols()))
        return Scalar::error(ErrorCode::na);
    return v.at(r, c);
}

Scalar scalar_arg(const Value& v)
{
    if (v.is_scalar())
        return v.scalar();
    const Array& a = v.array();
    if (a.size() == 1)
        return a(0, 0);
    return Scalar::error(ErrorCode::value);
}

Scalar splice_element(const Value& result, std::size_t r, std::size_t c)
{
    Scalar s;
    if (result.is_scalar()) {
        s = result.scalar();
    } else {
        const Array& a = result.array();
        if (a.size() == 1)
            s = a(0, 0);
        else if (r < a.rows() && c < a.cols())
            s = a(r, c);
        else
            s = Scalar::error(ErrorCode::na);
    }
    return s.is_blank() ? Scalar::number(0.0) : s;
}

} // namespace

Value Evaluator::evaluate(const Node& n)
{
    per_cell_ = false;
    return to_value(eval(n));
}

Value Evaluator::evaluate_for_splice(const Node& n)
{
    per_cell_ = false;
    Operand op = eval(n);
    if (auto* ref = std::get_if<Ref>(&op)) {
        Ref clipped = *ref;
        const int rows = std::min(ref->rect.rows(), std::max(target_.rows(), 2));
        const int cols = std::min(ref->rect.cols(), std::max(target_.cols(), 2));
        clipped.rect = grid::Rect::of(ref->rect.top_left, rows, cols);
        return deref(clipped);
    }
    return std::move(std::get<Value>(op));
}

Value Evaluator::evaluate_cell(const Node& n, std::size_t, std::size_t)
{
    per_cell_ = true;
    return to_value(eval(n));
}

Value Evaluator::deref(const Ref& ref) const
{
    const grid::Sheet& sh = wb_.sheet(ref.sheet);
    if (ref.rect.rows() == 1 && ref.rect.cols() == 1)
        return sh.value(ref.rect.top_left);
    return sh.read(ref.rect);
}

Value Evaluator::to_value(Operand op) const
{
    if (auto* ref = std::get_if<Ref>(&op))
        return deref(*ref);
    return std::move(std::get<Value>(op));
}

Value Evaluator::value(const Node& n) { return to_value(eval(n)); }

Evaluator::Operand Evaluator::eval(const Node& n)
{
    switch (n.kind) {
    case NodeKind::number: return Value(Scalar::number(n.number));
    case NodeKind::text: return Value(Scalar::text(n.text));
    case NodeKind::boolean: return Value(Scalar::boolean(n.boolean));
    case NodeKind::omitted: return Value(Scalar::number(0.0));
    case NodeKind::cell: return Ref{n.binding < 0 ? home_ : n.binding, grid::Rect::single(n.first.coord)};
    case NodeKind::range:
        return Ref{n.binding < 0 ? home_ : n.binding, grid::Rect{n.first.coord, n.second.coord}};
    case NodeKind::name: {
        int id = n.binding >= 0 ? n.binding : wb_.name_id(n.text);
        if (id < 0)
            return Value(Scalar::error(ErrorCode::name));
        const grid::NamedRange& nr = wb_.name(id);
        return Ref{nr.sheet, nr.rect};
    }
    case NodeKind::unary: {
        Value v = value(*n.args[0]);
        if (n.unary_op == '+')
            return v;
        return calc::map(&negate, v);
    }
    case NodeKind::binary: {
        Value a = value(*n.args[0]);
        Value b = value(*n.args[1]);
        return calc::broadcast(n.op, a, b);
    }
    case NodeKind::call: return call(n);
    }
    return Value(Scalar::error(ErrorCode::value));
}

Evaluator::Operand Evaluator::call(const Node& n)
{
    const auto& a = n.args;
    switch (n.fn) {
    case BuiltinId::mmult: return builtins::mmult(value(*a[0]), value(*a[1]));
    case BuiltinId::transpose: return builtins::transpose(value(*a[0]));
    case BuiltinId::minverse: return builtins::minverse(value(*a[0]));
    case BuiltinId::offset: return eval_offset(n);
    case BuiltinId::mod: return builtins::mod(value(*a[0]), value(*a[1]));
    case BuiltinId::rand:
        if (!per_cell_ && (target_.rows() > 1 || target_.cols() > 1))
            throw NeedsPerCell{};
        return Value(Scalar::number(wb_.rng().uniform()));
    case BuiltinId::randbetween: {
        if (!per_cell_ && (target_.rows() > 1 || target_.cols() > 1))
            throw NeedsPerCell{};
        Scalar lo = scalar_arg(value(*a[0]));
        Scalar hi = scalar_arg(value(*a[1]));
        return Value(builtins::randbetween(lo, hi, wb_.rng()));
    }
    case BuiltinId::tanh: return builtins::tanh(value(*a[0]));
    case BuiltinId::exp: return builtins::exp(value(*a[0]));
    case BuiltinId::abs: return builtins::abs(value(*a[0]));
    case BuiltinId::isnumber: return builtins::isnumber(value(*a[0]));
    case BuiltinId::if_: return eval_if(n);
    case BuiltinId::sum:
    case BuiltinId::average:
    case BuiltinId::max:
    case BuiltinId::min:
    case BuiltinId::stdev: {
        std::vector<builtins::AggregateArg> args;
        args.reserve(a.size());
        for (const auto& arg : a) {
            if (arg->kind == NodeKind::omitted)
                continue;
            Operand op = eval(*arg);
            bool from_range = std::holds_alternative<Ref>(op);
            args.push_back({to_value(std::move(op)), from_range});
        }
        return Value(builtins::aggregate(n.fn, args));
    }
    }
    return Value(Scalar::error(ErrorCode::value));
}

Value Evaluator::eval_if(const Node& n)
{
    const auto& a = n.args;
    Value cond = value(*a[0]);
    auto false_branch = [&]() -> Value {
        if (a.size() == 3)
            return value(*a[2]);
        return Scalar::boolean(false);
    };
    if (cond.is_scalar()) {
        Scalar b = to_boolean(cond.scalar());
        if (b.is_error())
            return b;
        return b.boolean() ? value(*a[1]) : false_branch();
    }
    const Array& c = cond.array();
    bool need_true = false;
    bool need_false = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Scalar b = to_boolean(c.data()[i]);
        if (b.is_error())
            continue;
        (b.boolean() ? need_true : need_false) = true;
    }
    Value t = need_true ? value(*a[1]) : Value(Scalar{});
    Value f = need_false ? false_branch() : Value(Scalar{});
    std::size_t rows = c.rows();
    std::size_t cols = c.cols();
    if (need_true) {
        rows = std::max(rows, t.rows());
        cols = std::max(cols, t.cols());
    }
    if (need_false) {
        rows = std::max(rows, f.rows());
        cols = std::max(cols, f.cols());
    }
    Array out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t col = 0; col < cols; ++col) {
            Scalar b = to_boolean(fetch(cond, r, col));
            if (b.is_error())
                out(r, col) = b;
            else
                out(r, col) = fetch(b.boolean() ? t : f, r, col);
        }
    return out;
}

Evaluator::Operand Evaluator::eval_offset(const Node& n)
{
    const auto& a = n.args;
    Operand base = eval(*a[0]);
    const Ref* ref = std::get_if<Ref>(&base);
    if (!ref) {
        const Value& v = std::get<Value>(base);
        if (v.is_scalar() && v.scalar().is_error())
            return v;
        return Value(Scalar::error(ErrorCode::value));
    }
    auto number_arg = [&](std::size_t i, double fallback) -> Scalar {
        if (i >= a.size() || a[i]->kind == NodeKind::omitted)
            return Scalar::number(fallback);
        return to_number(scalar_arg(value(*a[i])));
    };
    Scalar dr = number_arg(1, 0.0);
    Scalar dc = number_arg(2, 0.0);
    Scalar h = number_arg(3, ref->rect.rows());
    Scalar w = number_arg(4, ref->rect.cols());
    for (const Scalar* s : {&dr, &dc, &h, &w})
        if (s->is_error())
            return Value(*s);
    const double top = ref->rect.top_left.row + std::trunc(dr.number());
    const double left = ref->rect.top_left.col + std::trunc(dc.number());
    const double height = std::trunc(h.number());
    const double width = std::trunc(w.number());
    if (height < 1 || width < 1 || top < 1 || left < 1 || top + height - 1 > grid::max_row ||
        left + width - 1 > grid::max_col)
        return Value(Scalar::error(ErrorCode::ref));
    grid::Coord tl{static_cast<int>(top), static_cast<int>(left)};
    return Ref{ref->sheet, grid::Rect::of(tl, static_cast<int>(height), static_cast<int>(width))};
}

Array splice(const Value& result, std::size_t rows, std::size_t cols)
{
    Array out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out(r, c) = splice_element(result, r, c);
    return out;
}

Array evaluate_for_target(grid::Workbook& wb, int sheet, const Node& ast, const grid::Rect& target)
{
    const auto rows = static_cast<std::size_t>(target.rows());
    const auto cols = static_cast<std::size_t>(target.cols());
    Evaluator ev(wb, sheet, target);
    try {
        return splice(ev.evaluate_for_splice(ast), rows, cols);
    } catch (const NeedsPerCell&) {
        Array out(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                out(r, c) = splice_element(ev.evaluate_cell(ast, r, c), r, c);
        return out;
    }
}

} // namespace vbp::calc

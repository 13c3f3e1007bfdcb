#include "vbp/calc/kernels.hpp"

#include "vbp/calc/scalar_ops.hpp"

#include <atomic>

namespace vbp::calc {

namespace {
std::atomic<KernelMode> g_mode{KernelMode::serial};
}

void set_kernel_mode(KernelMode mode) { g_mode.store(mode, std::memory_order_relaxed); }
KernelMode kernel_mode() { return g_mode.load(std::memory_order_relaxed); }

std::optional<std::pair<std::size_t, std::size_t>> broadcast_shape(std::size_t r1, std::size_t c1,
                                                                   std::size_t r2, std::size_t c2)
{
    auto dim = [](std::size_t x, std::size_t y) -> std::optional<std::size_t> {
        if (x == y || y == 1)
            return x;
        if (x == 1)
            return y;
        return std::nullopt;
    };
    auto r = dim(r1, r2);
    auto c = dim(c1, c2);
    if (!r || !c)
        return std::nullopt;
    return std::pair{*r, *c};
}

namespace serial {

namespace {

template <class F>
Value broadcast_impl(F&& f, const Value& a, const Value& b)
{
    if (a.is_scalar() && b.is_scalar())
        return f(a.scalar(), b.scalar());
    auto shape = broadcast_shape(a.rows(), a.cols(), b.rows(), b.cols());
    if (!shape)
        return Array(std::max(a.rows(), b.rows()), std::max(a.cols(), b.cols()),
                     Scalar::error(ErrorCode::value));
    Array out(shape->first, shape->second);
    const StretchView va = StretchView::of(a);
    const StretchView vb = StretchView::of(b);
    Scalar* dst = out.data();
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c)
            *dst++ = f(va(r, c), vb(r, c));
    return out;
}

} // namespace

Value broadcast(formula::BinOp op, const Value& a, const Value& b)
{
    return broadcast_impl([op](const Scalar& x, const Scalar& y) { return binary_op(op, x, y); }, a, b);
}

Value broadcast(BinaryFn fn, const Value& a, const Value& b)
{
    return broadcast_impl(fn, a, b);
}

Value map(UnaryFn fn, const Value& v)
{
    if (v.is_scalar())
        return fn(v.scalar());
    Array out(v.rows(), v.cols());
    const Array& in = v.array();
    for (std::size_t i = 0; i < in.size(); ++i)
        out.data()[i] = fn(in.data()[i]);
    return out;
}

Array transpose(const Array& a)
{
    Array out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(c, r) = a(r, c);
    return out;
}

Value mmult(const Array& a, const Array& b)
{
    if (a.cols() != b.rows())
        return Scalar::error(ErrorCode::value);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a.data()[i].is_number())
            return a.data()[i].is_error() ? a.data()[i] : Scalar::error(ErrorCode::value);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!b.data()[i].is_number())
            return b.data()[i].is_error() ? b.data()[i] : Scalar::error(ErrorCode::value);
    Array out(a.rows(), b.cols());
    const std::size_t inner = a.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < inner; ++k)
                acc += a(i, k).number() * b(k, j).number();
            out(i, j) = number_result(acc);
        }
    return out;
}

} // namespace serial

Value broadcast(formula::BinOp op, const Value& a, const Value& b)
{
    return kernel_mode() == KernelMode::parallel ? parallel::broadcast(op, a, b) : serial::broadcast(op, a, b);
}

Value broadcast(BinaryFn fn, const Value& a, const Value& b)
{
    return kernel_mode() == KernelMode::parallel ? parallel::broadcast(fn, a, b) : serial::broadcast(fn, a, b);
}

Value map(UnaryFn fn, const Value& v)
{
    return kernel_mode() == KernelMode::parallel ? parallel::map(fn, v) : serial::map(fn, v);
}

Array transpose(const Array& a)
{
    return kernel_mode() == KernelMode::parallel ? parallel::transpose(a) : serial::transpose(a);
}

Value mmult(const Array& a, const Array& b)
{
    return kernel_mode() == KernelMode::parallel ? parallel::mmult(a, b) : serial::mmult(a, b);
}

} // namespace vbp::calc

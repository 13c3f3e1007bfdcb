#include "vbp/calc/kernels.hpp"

#include "vbp/calc/scalar_ops.hpp"

#include <algorithm>
#include <cstdint>

namespace vbp::calc::parallel {

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
    const auto rows = static_cast<std::int64_t>(out.rows());
    const std::size_t cols = out.cols();
    const StretchView va = StretchView::of(a);
    const StretchView vb = StretchView::of(b);
    [[maybe_unused]] const bool big = out.size() >= parallel_threshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::int64_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out(static_cast<std::size_t>(r), c) = f(va(static_cast<std::size_t>(r), c), vb(static_cast<std::size_t>(r), c));
    return out;
}

bool all_numeric(const Array& a, Scalar& bad)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a.data()[i].is_number()) {
            bad = a.data()[i].is_error() ? a.data()[i] : Scalar::error(ErrorCode::value);
            return false;
        }
    return true;
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
    const Array& in = v.array();
    Array out(in.rows(), in.cols());
    const auto n = static_cast<std::int64_t>(in.size());
    [[maybe_unused]] const bool big = in.size() >= parallel_threshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::int64_t i = 0; i < n; ++i)
        out.data()[i] = fn(in.data()[i]);
    return out;
}

Array transpose(const Array& a)
{
    Array out(a.cols(), a.rows());
    const auto rows = static_cast<std::int64_t>(a.rows());
    [[maybe_unused]] const bool big = a.size() >= parallel_threshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::int64_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(c, static_cast<std::size_t>(r)) = a(static_cast<std::size_t>(r), c);
    return out;
}

Value mmult(const Array& a, const Array& b)
{
    if (a.cols() != b.rows())
        return Scalar::error(ErrorCode::value);
    Scalar bad;
    if (!all_numeric(a, bad) || !all_numeric(b, bad))
        return bad;
    Array out(a.rows(), b.cols());
    const auto rows = static_cast<std::int64_t>(a.rows());
    const std::size_t inner = a.cols();
    [[maybe_unused]] const bool big = a.rows() * b.cols() * inner >= parallel_threshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::int64_t i = 0; i < rows; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < inner; ++k)
                acc += a(ii, k).number() * b(k, j).number();
            out(ii, j) = number_result(acc);
        }
    }
    return out;
}

} // namespace vbp::calc::parallel

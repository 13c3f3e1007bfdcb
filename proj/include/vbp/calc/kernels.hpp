#pragma once

#include "vbp/formula/ast.hpp"
#include "vbp/value.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace vbp::calc {

using UnaryFn = Scalar (*)(const Scalar&);
using BinaryFn = Scalar (*)(const Scalar&, const Scalar&);

/// Array kernels exist in a serial reference form and an OpenMP form; the
/// evaluator dispatches on the process-wide mode. Both produce identical
/// results (each output element is computed by the same scalar code).
enum class KernelMode { serial, parallel };

void set_kernel_mode(KernelMode mode);
KernelMode kernel_mode();

/// Element count below which the parallel kernels stay single-threaded.
inline constexpr std::size_t parallel_threshold = 1u << 14;

/// Broadcast result shape: equal extents match, an extent of 1 stretches.
std::optional<std::pair<std::size_t, std::size_t>> broadcast_shape(std::size_t r1, std::size_t c1,
                                                                   std::size_t r2, std::size_t c2);

/// Read access with size-1 extents stretched (stride 0).
struct StretchView {
    const Scalar* base;
    std::size_t row_stride;
    std::size_t col_stride;

    const Scalar& operator()(std::size_t r, std::size_t c) const { return base[r * row_stride + c * col_stride]; }

    static StretchView of(const Value& v)
    {
        if (v.is_scalar())
            return {&v.scalar(), 0, 0};
        const Array& a = v.array();
        return {a.data(), a.rows() == 1 ? 0 : a.cols(), std::size_t{a.cols() == 1 ? 0u : 1u}};
    }
};

namespace serial {
Value broadcast(formula::BinOp op, const Value& a, const Value& b);
Value broadcast(BinaryFn fn, const Value& a, const Value& b);
Value map(UnaryFn fn, const Value& v);
Array transpose(const Array& a);
/// Standard product of numeric arrays; #VALUE! scalar on a non-numeric
/// element or mismatched inner dimensions.
Value mmult(const Array& a, const Array& b);
} // namespace serial

namespace parallel {
Value broadcast(formula::BinOp op, const Value& a, const Value& b);
Value broadcast(BinaryFn fn, const Value& a, const Value& b);
Value map(UnaryFn fn, const Value& v);
Array transpose(const Array& a);
Value mmult(const Array& a, const Array& b);
} // namespace parallel

Value broadcast(formula::BinOp op, const Value& a, const Value& b);
Value broadcast(BinaryFn fn, const Value& a, const Value& b);
Value map(UnaryFn fn, const Value& v);
Array transpose(const Array& a);
Value mmult(const Array& a, const Array& b);

} // namespace vbp::calc

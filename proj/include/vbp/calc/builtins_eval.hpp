#pragma once

#include "vbp/formula/ast.hpp"
#include "vbp/prng.hpp"
#include "vbp/value.hpp"

#include <vector>

namespace vbp::calc::builtins {

Value transpose(const Value& v);
Value mmult(const Value& a, const Value& b);
/// Gauss-Jordan with partial pivoting; #NUM! when singular, #VALUE! when
/// not square or not numeric.
Value minverse(const Value& v);
/// n - d*floor(n/d), elementwise; the result takes the sign of d.
Value mod(const Value& n, const Value& d);
Value tanh(const Value& v);
Value exp(const Value& v);
Value abs(const Value& v);
/// Elementwise TRUE for number cells; never propagates errors.
Value isnumber(const Value& v);

/// One argument of SUM/AVERAGE/MAX/MIN/STDEV. Values coming from references
/// or array expressions only contribute their numbers; direct scalar
/// arguments are coerced.
struct AggregateArg {
    Value value;
    bool from_range = false;
};

Scalar aggregate(formula::BuiltinId fn, const std::vector<AggregateArg>& args);

Scalar randbetween(const Scalar& lo, const Scalar& hi, SplitMix64& rng);

} // namespace vbp::calc::builtins

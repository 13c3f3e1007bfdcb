#include "vbp/calc/builtins_eval.hpp"

#include "vbp/calc/kernels.hpp"
#include "vbp/calc/scalar_ops.hpp"

#include <algorithm>
#include <cmath>

namespace vbp::calc::builtins {

using formula::BuiltinId;

Value transpose(const Value& v)
{
    if (v.is_scalar())
        return v;
    return calc::transpose(v.array());
}

Value mmult(const Value& a, const Value& b)
{
    return calc::mmult(a.to_array(), b.to_array());
}

Value minverse(const Value& v)
{
    Array a = v.to_array();
    const std::size_t n = a.rows();
    if (n != a.cols())
        return Scalar::error(ErrorCode::value);
    std::vector<double> m(n * 2 * n, 0.0);
    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const Scalar& s = a(r, c);
            if (!s.is_number())
                return s.is_error() ? s : Scalar::error(ErrorCode::value);
            m[r * 2 * n + c] = s.number();
            scale = std::max(scale, std::fabs(s.number()));
        }
        m[r * 2 * n + n + r] = 1.0;
    }
    const std::size_t w = 2 * n;
    const double tiny = scale * static_cast<double>(n) * 1e-15;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m[r * w + col]) > std::fabs(m[piv * w + col]))
                piv = r;
        if (std::fabs(m[piv * w + col]) <= tiny)
            return Scalar::error(ErrorCode::num);
        if (piv != col)
            for (std::size_t c = 0; c < w; ++c)
                std::swap(m[piv * w + c], m[col * w + c]);
        const double p = m[col * w + col];
        for (std::size_t c = 0; c < w; ++c)
            m[col * w + c] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col)
                continue;
            const double f = m[r * w + col];
            if (f == 0.0)
                continue;
            for (std::size_t c = 0; c < w; ++c)
                m[r * w + c] -= f * m[col * w + c];
        }
    }
    Array out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, c) = number_result(m[r * w + n + c]);
    return out;
}

namespace {

Scalar mod_scalar(const Scalar& a, const Scalar& b)
{
    Scalar n = to_number(a);
    if (n.is_error())
        return n;
    Scalar d = to_number(b);
    if (d.is_error())
        return d;
    if (d.number() == 0.0)
        return Scalar::error(ErrorCode::div0);
    return number_result(n.number() - d.number() * std::floor(n.number() / d.number()));
}

template <double (*F)(double)>
Scalar unary_math(const Scalar& s)
{
    Scalar x = to_number(s);
    return x.is_error() ? x : number_result(F(x.number()));
}

double tanh_fn(double x) { return std::tanh(x); }
double exp_fn(double x) { return std::exp(x); }
double abs_fn(double x) { return std::fabs(x); }

Scalar isnumber_scalar(const Scalar& s) { return Scalar::boolean(s.is_number()); }

} // namespace

Value mod(const Value& n, const Value& d) { return calc::broadcast(&mod_scalar, n, d); }
Value tanh(const Value& v) { return calc::map(&unary_math<tanh_fn>, v); }
Value exp(const Value& v) { return calc::map(&unary_math<exp_fn>, v); }
Value abs(const Value& v) { return calc::map(&unary_math<abs_fn>, v); }
Value isnumber(const Value& v) { return calc::map(&isnumber_scalar, v); }

Scalar aggregate(BuiltinId fn, const std::vector<AggregateArg>& args)
{
    std::vector<double> xs;
    for (const auto& arg : args) {
        if (arg.from_range || arg.value.is_array()) {
            const Array a = arg.value.to_array();
            for (std::size_t i = 0; i < a.size(); ++i) {
                const Scalar& s = a.data()[i];
                if (s.is_error())
                    return s;
                if (s.is_number())
                    xs.push_back(s.number());
            }
            continue;
        }
        const Scalar& s = arg.value.scalar();
        if (s.is_blank())
            continue;
        Scalar x = to_number(s);
        if (x.is_error())
            return x;
        xs.push_back(x.number());
    }
    switch (fn) {
    case BuiltinId::sum: {
        double acc = 0.0;
        for (double x : xs)
            acc += x;
        return number_result(acc);
    }
    case BuiltinId::average: {
        if (xs.empty())
            return Scalar::error(ErrorCode::div0);
        double acc = 0.0;
        for (double x : xs)
            acc += x;
        return number_result(acc / static_cast<double>(xs.size()));
    }
    case BuiltinId::max:
        return Scalar::number(xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end()));
    case BuiltinId::min:
        return Scalar::number(xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end()));
    case BuiltinId::stdev: {
        if (xs.size() < 2)
            return Scalar::error(ErrorCode::div0);
        double mean = 0.0;
        for (double x : xs)
            mean += x;
        mean /= static_cast<double>(xs.size());
        double ss = 0.0;
        for (double x : xs)
            ss += (x - mean) * (x - mean);
        return number_result(std::sqrt(ss / static_cast<double>(xs.size() - 1)));
    }
    default: return Scalar::error(ErrorCode::value);
    }
}

Scalar randbetween(const Scalar& lo_s, const Scalar& hi_s, SplitMix64& rng)
{
    Scalar lo = to_number(lo_s);
    if (lo.is_error())
        return lo;
    Scalar hi = to_number(hi_s);
    if (hi.is_error())
        return hi;
    double a = std::ceil(lo.number());
    double b = std::floor(hi.number());
    if (a > b || std::fabs(a) > 9e15 || std::fabs(b) > 9e15)
        return Scalar::error(ErrorCode::num);
    return Scalar::number(static_cast<double>(rng.between(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b))));
}

} // namespace vbp::calc::builtins

#include "vbp/calc/scalar_ops.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace vbp::calc {

using formula::BinOp;

Scalar number_result(double v)
{
    return std::isfinite(v) ? Scalar::number(v) : Scalar::error(ErrorCode::num);
}

Scalar to_number(const Scalar& s)
{
    switch (s.kind()) {
    case Kind::number:
    case Kind::error: return s;
    case Kind::blank: return Scalar::number(0.0);
    case Kind::boolean: return Scalar::number(s.boolean() ? 1.0 : 0.0);
    case Kind::text: {
        std::string_view t = s.text();
        while (!t.empty() && t.front() == ' ')
            t.remove_prefix(1);
        while (!t.empty() && t.back() == ' ')
            t.remove_suffix(1);
        if (!t.empty() && t.front() == '+')
            t.remove_prefix(1);
        double v = 0.0;
        auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v))
            return Scalar::error(ErrorCode::value);
        return Scalar::number(v);
    }
    }
    return Scalar::error(ErrorCode::value);
}

Scalar to_boolean(const Scalar& s)
{
    switch (s.kind()) {
    case Kind::boolean: return s;
    case Kind::number: return Scalar::boolean(s.number() != 0.0);
    case Kind::blank: return Scalar::boolean(false);
    case Kind::error: return s;
    case Kind::text: return Scalar::error(ErrorCode::value);
    }
    return Scalar::error(ErrorCode::value);
}

namespace {

int rank(Kind k)
{
    switch (k) {
    case Kind::number: return 0;
    case Kind::text: return 1;
    case Kind::boolean: return 2;
    default: return 3;
    }
}

int compare_text(std::string_view a, std::string_view b)
{
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int x = std::tolower(static_cast<unsigned char>(a[i]));
        int y = std::tolower(static_cast<unsigned char>(b[i]));
        if (x != y)
            return x < y ? -1 : 1;
    }
    return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

Scalar blank_like(const Scalar& other)
{
    switch (other.kind()) {
    case Kind::text: return Scalar::text("");
    case Kind::boolean: return Scalar::boolean(false);
    default: return Scalar::number(0.0);
    }
}

} // namespace

int compare(const Scalar& a0, const Scalar& b0)
{
    Scalar a = a0.is_blank() ? blank_like(b0) : a0;
    Scalar b = b0.is_blank() ? blank_like(a) : b0;
    if (a.kind() != b.kind())
        return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
    switch (a.kind()) {
    case Kind::number:
    case Kind::boolean: return a.number() < b.number() ? -1 : (a.number() > b.number() ? 1 : 0);
    case Kind::text: return compare_text(a.text(), b.text());
    default: return 0;
    }
}

Scalar binary_op(BinOp op, const Scalar& a, const Scalar& b)
{
    if (a.is_number() && b.is_number()) {
        double x = a.number();
        double y = b.number();
        switch (op) {
        case BinOp::add: return number_result(x + y);
        case BinOp::sub: return number_result(x - y);
        case BinOp::mul: return number_result(x * y);
        case BinOp::div: return y == 0.0 ? Scalar::error(ErrorCode::div0) : number_result(x / y);
        case BinOp::pow: return number_result(y == 2.0 ? x * x : std::pow(x, y));
        case BinOp::eq: return Scalar::boolean(x == y);
        case BinOp::ne: return Scalar::boolean(x != y);
        case BinOp::lt: return Scalar::boolean(x < y);
        case BinOp::le: return Scalar::boolean(x <= y);
        case BinOp::gt: return Scalar::boolean(x > y);
        case BinOp::ge: return Scalar::boolean(x >= y);
        }
    }
    if (a.is_error())
        return a;
    if (b.is_error())
        return b;
    switch (op) {
    case BinOp::eq:
    case BinOp::ne:
    case BinOp::lt:
    case BinOp::le:
    case BinOp::gt:
    case BinOp::ge: {
        int c = compare(a, b);
        switch (op) {
        case BinOp::eq: return Scalar::boolean(c == 0);
        case BinOp::ne: return Scalar::boolean(c != 0);
        case BinOp::lt: return Scalar::boolean(c < 0);
        case BinOp::le: return Scalar::boolean(c <= 0);
        case BinOp::gt: return Scalar::boolean(c > 0);
        default: return Scalar::boolean(c >= 0);
        }
    }
    default: break;
    }
    Scalar x = to_number(a);
    if (x.is_error())
        return x;
    Scalar y = to_number(b);
    if (y.is_error())
        return y;
    return binary_op(op, x, y);
}

Scalar negate(const Scalar& s)
{
    Scalar x = to_number(s);
    return x.is_error() ? x : Scalar::number(-x.number());
}

} // namespace vbp::calc

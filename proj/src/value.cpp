#include "vbp/value.hpp"

#include <charconv>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace vbp {

namespace {

// Interned strings are never released; the pool only grows with distinct
// text literals, which are few.
class TextPool {
public:
    std::uint32_t intern(std::string_view s)
    {
        std::lock_guard lock(mutex_);
        if (auto it = index_.find(std::string(s)); it != index_.end())
            return it->second;
        strings_.emplace_back(s);
        auto id = static_cast<std::uint32_t>(strings_.size() - 1);
        index_.emplace(strings_.back(), id);
        return id;
    }

    std::string_view get(std::uint32_t id)
    {
        std::lock_guard lock(mutex_);
        return strings_[id];
    }

private:
    std::mutex mutex_;
    std::deque<std::string> strings_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

TextPool& pool()
{
    static TextPool p;
    return p;
}

} // namespace

std::string_view error_text(ErrorCode code)
{
    switch (code) {
    case ErrorCode::div0: return "#DIV/0!";
    case ErrorCode::value: return "#VALUE!";
    case ErrorCode::ref: return "#REF!";
    case ErrorCode::name: return "#NAME?";
    case ErrorCode::num: return "#NUM!";
    case ErrorCode::na: return "#N/A";
    }
    return "#VALUE!";
}

Scalar Scalar::text(std::string_view str)
{
    Scalar s;
    s.kind_ = Kind::text;
    s.aux_ = pool().intern(str);
    return s;
}

Scalar Scalar::error(ErrorCode code)
{
    Scalar s;
    s.kind_ = Kind::error;
    s.aux_ = static_cast<std::uint32_t>(code);
    return s;
}

std::string_view Scalar::text() const
{
    if (kind_ != Kind::text)
        return {};
    return pool().get(aux_);
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.kind_ != b.kind_)
        return false;
    switch (a.kind_) {
    case Kind::blank: return true;
    case Kind::number:
    case Kind::boolean: return a.num_ == b.num_;
    case Kind::text:
    case Kind::error: return a.aux_ == b.aux_;
    }
    return false;
}

Array::Array(std::size_t rows, std::size_t cols, Scalar fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("array dimensions must be positive");
}

const Scalar& Value::at(std::size_t r, std::size_t c) const
{
    if (is_scalar())
        return scalar();
    const Array& a = array();
    return a(a.rows() == 1 ? 0 : r, a.cols() == 1 ? 0 : c);
}

Value Value::collapsed() const
{
    if (is_array() && array().rows() == 1 && array().cols() == 1)
        return Value(array()(0, 0));
    return *this;
}

Array Value::to_array() const
{
    if (is_array())
        return array();
    return Array(1, 1, scalar());
}

std::string format_number(double v)
{
    if (v == 0.0)
        return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_display(const Scalar& s)
{
    switch (s.kind()) {
    case Kind::blank: return {};
    case Kind::number: return format_number(s.number());
    case Kind::boolean: return s.boolean() ? "TRUE" : "FALSE";
    case Kind::text: return std::string(s.text());
    case Kind::error: return std::string(error_text(s.error()));
    }
    return {};
}

} // namespace vbp

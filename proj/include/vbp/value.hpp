#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vbp {

enum class ErrorCode : std::uint8_t { div0, value, ref, name, num, na };

std::string_view error_text(ErrorCode code);

enum class Kind : std::uint8_t { blank, number, boolean, text, error };

/// One cell-sized datum. Trivially copyable: text payloads live in a
/// process-wide intern pool and are referenced by id.
class Scalar {
public:
    Scalar() = default;

    static Scalar blank() { return {}; }
    static Scalar number(double v)
    {
        Scalar s;
        s.kind_ = Kind::number;
        s.num_ = v;
        return s;
    }
    static Scalar boolean(bool v)
    {
        Scalar s;
        s.kind_ = Kind::boolean;
        s.num_ = v ? 1.0 : 0.0;
        return s;
    }
    static Scalar text(std::string_view s);
    static Scalar error(ErrorCode code);

    Kind kind() const { return kind_; }
    bool is_blank() const { return kind_ == Kind::blank; }
    bool is_number() const { return kind_ == Kind::number; }
    bool is_boolean() const { return kind_ == Kind::boolean; }
    bool is_text() const { return kind_ == Kind::text; }
    bool is_error() const { return kind_ == Kind::error; }

    double number() const { return num_; }
    bool boolean() const { return num_ != 0.0; }
    std::string_view text() const;
    ErrorCode error() const { return static_cast<ErrorCode>(aux_); }

    /// Exact equality of kind and payload (numbers compared bitwise-equal
    /// as doubles, text case-sensitively).
    friend bool operator==(const Scalar& a, const Scalar& b);

private:
    Kind kind_ = Kind::blank;
    std::uint32_t aux_ = 0;
    double num_ = 0.0;
};

/// Rectangular, row-major block of scalars; rows >= 1 and cols >= 1.
class Array {
public:
    Array() = default;
    Array(std::size_t rows, std::size_t cols, Scalar fill = {});

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Scalar* data() { return data_.data(); }
    const Scalar* data() const { return data_.data(); }

    friend bool operator==(const Array&, const Array&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// The engine's only runtime datum: a scalar or a rectangular array.
class Value {
public:
    Value() = default;
    Value(Scalar s) : v_(s) {}
    Value(Array a) : v_(std::move(a)) {}

    bool is_scalar() const { return std::holds_alternative<Scalar>(v_); }
    bool is_array() const { return !is_scalar(); }

    const Scalar& scalar() const { return std::get<Scalar>(v_); }
    const Array& array() const { return std::get<Array>(v_); }
    Array& array() { return std::get<Array>(v_); }

    std::size_t rows() const { return is_scalar() ? 1 : array().rows(); }
    std::size_t cols() const { return is_scalar() ? 1 : array().cols(); }

    /// Element (r, c) with size-1 dimensions stretched; r/c must be valid
    /// under that stretching.
    const Scalar& at(std::size_t r, std::size_t c) const;

    /// A 1x1 array collapses to its element; anything else is unchanged.
    Value collapsed() const;

    /// The array view of this value (a scalar becomes a 1x1 array).
    Array to_array() const;

    friend bool operator==(const Value&, const Value&) = default;

private:
    std::variant<Scalar, Array> v_;
};

/// Display text used by dumps and the workbook format (numbers in shortest
/// round-trip form, booleans TRUE/FALSE, errors like #VALUE!).
std::string to_display(const Scalar& s);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

} // namespace vbp

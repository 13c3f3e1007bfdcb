#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace vbp::oracle {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix column(const std::vector<double>& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<double>& data() const { return data_; }

    Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

/// Inverse via LU decomposition with partial pivoting. Throws
/// NumericalError when singular or when the 1-norm condition estimate
/// exceeds `max_condition`.
Matrix inverse(const Matrix& a, double max_condition = 1e12);

/// Largest absolute elementwise difference; matrices must share a shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace vbp::oracle

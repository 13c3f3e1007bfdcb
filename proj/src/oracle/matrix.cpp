#include "vbp/oracle/matrix.hpp"

#include "vbp/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vbp::oracle {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::column(const std::vector<double>& v)
{
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        m(i, 0) = v[i];
    return m;
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

namespace {

double norm1(const Matrix& m)
{
    double best = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            s += std::fabs(m(r, c));
        best = std::max(best, s);
    }
    return best;
}

} // namespace

Matrix inverse(const Matrix& a, double max_condition)
{
    const std::size_t n = a.rows();
    if (n != a.cols())
        throw std::invalid_argument("inverse: matrix is not square");
    Matrix lu = a;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    const double anorm = norm1(a);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::fabs(lu(r, k)) > std::fabs(lu(piv, k)))
                piv = r;
        if (lu(piv, k) == 0.0 || std::fabs(lu(piv, k)) <= anorm * 1e-300)
            throw NumericalError("singular matrix in least squares (zero pivot in column " + std::to_string(k) + ")");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(lu(piv, c), lu(k, c));
            std::swap(perm[piv], perm[k]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            lu(r, k) /= lu(k, k);
            for (std::size_t c = k + 1; c < n; ++c)
                lu(r, c) -= lu(r, k) * lu(k, c);
        }
    }
    Matrix inv(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = perm[i] == col ? 1.0 : 0.0;
            for (std::size_t j = 0; j < i; ++j)
                s -= lu(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j)
                s -= lu(ii, j) * inv(j, col);
            inv(ii, col) = s / lu(ii, ii);
        }
    }
    const double cond = anorm * norm1(inv);
    if (!std::isfinite(cond) || cond > max_condition)
        throw NumericalError("ill-conditioned matrix in least squares (condition estimate " + std::to_string(cond) + ")");
    return inv;
}

double max_abs_diff(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shapes differ");
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        d = std::max(d, std::fabs(a.data()[i] - b.data()[i]));
    return d;
}

} // namespace vbp::oracle

#include "vbp/oracle/least_squares.hpp"

#include "vbp/errors.hpp"

#include <cmath>

namespace vbp::oracle {

Matrix least_squares(const Matrix& x, const Matrix& t)
{
    if (x.cols() != t.cols())
        throw ValidationError("inputs and targets have different sample counts");
    if (x.cols() < x.rows())
        throw NumericalError("fewer samples than inputs: normal matrix is singular");
    Matrix xt = x.transposed();
    Matrix gram = multiply(x, xt);
    Matrix rhs = multiply(x, t.transposed());
    return multiply(inverse(gram), rhs).transposed();
}

ReducedFit least_squares_reduced(const Matrix& x, const Matrix& t, double tolerance)
{
    const std::size_t rows = x.rows();
    const std::size_t s = x.cols();
    std::vector<std::vector<double>> basis;
    std::vector<bool> kept(rows, false);
    for (std::size_t r = rows; r-- > 0;) {
        std::vector<double> v(s);
        double norm0 = 0.0;
        for (std::size_t k = 0; k < s; ++k) {
            v[k] = x(r, k);
            norm0 += v[k] * v[k];
        }
        norm0 = std::sqrt(norm0);
        if (norm0 == 0.0)
            continue;
        for (const auto& b : basis) {
            double dot = 0.0;
            for (std::size_t k = 0; k < s; ++k)
                dot += v[k] * b[k];
            for (std::size_t k = 0; k < s; ++k)
                v[k] -= dot * b[k];
        }
        double norm = 0.0;
        for (double e : v)
            norm += e * e;
        norm = std::sqrt(norm);
        if (norm <= tolerance * norm0)
            continue;
        for (double& e : v)
            e /= norm;
        basis.push_back(std::move(v));
        kept[r] = true;
    }
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < rows; ++r)
        if (kept[r])
            idx.push_back(r);
    Matrix sub(idx.size(), s);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t k = 0; k < s; ++k)
            sub(i, k) = x(idx[i], k);
    Matrix ws = least_squares(sub, t);
    Matrix w(t.rows(), rows);
    for (std::size_t m = 0; m < t.rows(); ++m)
        for (std::size_t i = 0; i < idx.size(); ++i)
            w(m, idx[i]) = ws(m, i);
    return {w, kept};
}

} // namespace vbp::oracle

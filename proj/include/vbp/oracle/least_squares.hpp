#pragma once

#include "vbp/oracle/matrix.hpp"

#include <vector>

namespace vbp::oracle {

/// Normal-equation solution w_opt = [(X X^T)^-1 (X T^T)]^T for inputs X
/// ((n+1) x S, bias row included by the caller) and targets T (m x S).
/// Returns m x (n+1). Throws NumericalError when X X^T is singular or
/// ill-conditioned.
Matrix least_squares(const Matrix& inputs, const Matrix& targets);

struct ReducedFit {
    Matrix w;               // m x (n+1); dropped rows get zero weights
    std::vector<bool> kept; // per input row
};

/// least_squares after dropping input rows that are linear combinations of
/// rows already kept. Rows are considered from last to first, so with a
/// trailing bias row and a full one-hot group the first one-hot row drops.
ReducedFit least_squares_reduced(const Matrix& inputs, const Matrix& targets, double tolerance = 1e-9);

} // namespace vbp::oracle

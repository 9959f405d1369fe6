#pragma once

#include <Eigen/Dense>

namespace lmgp {

struct CholeskyFactor {
    Eigen::MatrixXd lower;
    double applied_jitter = 0.0;
};

// Lower-triangular factorization L L^T = A + jitter I for a symmetric
// positive semi-definite A. Pivots within +-1e-12 * max(diag) of zero are
// clamped to zero with their column (exactly singular Grams factor without
// jitter); genuine indefiniteness escalates jitter through
// {0, 1e-12, 1e-10, 1e-8} * trace / m before failing.
CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& a);

} // namespace lmgp

#include "cholesky.hpp"
#include "errors.hpp"

#include <cmath>

namespace lmgp {

namespace {

bool try_factor(const Eigen::MatrixXd& a, double jitter, Eigen::MatrixXd& l) {
    const Eigen::Index m = a.rows();
    const double max_diag = m > 0 ? a.diagonal().maxCoeff() + jitter : 0.0;
    const double clamp = 1e-12 * std::max(max_diag, 0.0);
    l.setZero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        double d = a(k, k) + jitter;
        for (Eigen::Index j = 0; j < k; ++j) d -= l(k, j) * l(k, j);
        if (d > clamp) {
            l(k, k) = std::sqrt(d);
            for (Eigen::Index i = k + 1; i < m; ++i) {
                double s = a(i, k);
                for (Eigen::Index j = 0; j < k; ++j) s -= l(i, j) * l(k, j);
                l(i, k) = s / l(k, k);
            }
        } else if (d >= -clamp) {
            // semi-definite pivot: zero column
            l(k, k) = 0.0;
        } else {
            return false;
        }
    }
    return true;
}

} // namespace

CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols())
        throw DomainError("cholesky_with_jitter: matrix must be square");
    if (!a.allFinite())
        throw NumericalError("cholesky_with_jitter: non-finite entries");
    const Eigen::Index m = a.rows();
    CholeskyFactor f;
    if (m == 0) {
        f.lower.resize(0, 0);
        return f;
    }
    const double scale = a.trace() / static_cast<double>(m);
    const double levels[] = {0.0, 1e-12, 1e-10, 1e-8};
    for (double level : levels) {
        const double jitter = level * scale;
        if (try_factor(a, jitter, f.lower)) {
            f.applied_jitter = jitter;
            return f;
        }
    }
    throw NumericalError("cholesky_with_jitter: factorization failed at all jitter levels");
}

} // namespace lmgp

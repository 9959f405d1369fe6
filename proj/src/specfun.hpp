#pragma once

#include <functional>
#include <vector>

namespace lmgp::specfun {

// log Beta(p, q) for p, q > 0.
double ln_beta(double p, double q);

// Beta(p, q) = exp(ln_beta(p, q)).
double beta(double p, double q);

// Regularized incomplete beta function I_x(p, q), continued-fraction
// evaluation with the symmetry switch at x > (p+1)/(p+q+2).
double reg_inc_beta(double x, double p, double q);

// Quadrature rule on (0,1) for the weight u^beta_exp * (1-u)^alpha_exp.
// Nodes strictly inside (0,1), increasing; weights positive; exact for
// polynomials up to degree 2n-1 against the weight.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double alpha_exp = 0.0; // exponent at u = 1
    double beta_exp = 0.0;  // exponent at u = 0

    double apply(const std::function<double(double)>& f) const;
};

// Golub-Welsch construction of the n-point Gauss-Jacobi rule.
QuadRule gauss_jacobi(int n, double alpha_exp, double beta_exp);

// Plain Gauss-Legendre on (0,1); shared cached instance for hot loops.
const QuadRule& gauss_legendre(int n);

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Declared endpoint behavior of an integrand: f ~ (u-a)^left_exponent near a
// and f ~ (b-u)^right_exponent near b. Exponents in (-1, 0) trigger an
// algebraic substitution that removes the singularity; 0 means regular.
struct EndpointHint {
    double left_exponent = 0.0;
    double right_exponent = 0.0;
};

// Adaptive Gauss-Kronrod (7/15) bisection quadrature of f over [a, b].
// Depth limit 60, tolerance floor 1e-14. Throws ToleranceError with the
// best estimate when the tolerance cannot be met.
QuadResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                         double tol, EndpointHint hint = {});

} // namespace lmgp::specfun

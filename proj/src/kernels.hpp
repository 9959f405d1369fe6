#pragma once

#include "family.hpp"

namespace lmgp {

// Ordered increment quadruple 0 <= r < v <= s < t for increment covariances.
struct IncrementQuadruple {
    double r, v, s, t;
    IncrementQuadruple(double r, double v, double s, double t);
};

// Covariance of the process at (s, t), s,t >= 0. Closed forms throughout;
// wfbm uses the regularized incomplete beta representation.
double cov(const FamilySpec& spec, double s, double t);

// Two-sided fBm covariance on the whole line, used by the mirrored-grid
// samplers.
double fbm_cov_two_sided(double hurst, double s, double t);

// --- quadrature oracles ----------------------------------------------------

// Direct numerical integration of int_0^{s^t} u^a [(t-u)^b + (s-u)^b] du.
double wfbm_cov_quad(double a, double b, double s, double t, double tol = 1e-10);

// Double-integral route b * iint (u^r)^a |u-r|^{b-1} over [0,s]x[0,t],
// valid for 0 < b <= 1 (inner integral reduced in closed form).
double wfbm_cov_double(double a, double b, double s, double t, double tol = 1e-10);

// Triple-integral route for the nsfBm covariance, innermost dimension
// reduced analytically, the remaining two numeric.
double nsfbm_cov_triple(double h, double s, double t, double tol = 1e-6);

// Same for the log kernel.
double eta_cov_triple(double s, double t, double tol = 1e-8);

// --- increment moments ------------------------------------------------------

// E(xi_t - xi_s)^2 = 2 int_s^t u^a (t-u)^b du, 0 <= s <= t.
double wfbm_incr_var(double a, double b, double s, double t);

// E((xi_t - xi_s)(xi_v - xi_r)) = int_r^v u^a [(t-u)^b - (s-u)^b] du.
double wfbm_incr_cov(double a, double b, const IncrementQuadruple& q);

// E(eta_t - eta_s)^2 evaluated as the symmetric double integral
// iint_{(0,t-s)^2} [log(2s+u+u') - log|u-u'|] du du'.
double eta_incr_var(double s, double t, double tol = 1e-10);

// E increment variance closed forms for the remaining families.
double incr_var(const FamilySpec& spec, double s, double t);

} // namespace lmgp

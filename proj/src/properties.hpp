#pragma once

#include "family.hpp"
#include "kernels.hpp"
#include "sampling.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lmgp {

struct McMeta {
    long long n = 0;
    std::uint64_t seed = 0;
    double stderr_est = 0.0;
};

// Structured pass/fail record; pass <=> defect <= threshold, and every input
// needed to replay the check is recorded in `parameters`.
struct VerificationReport {
    std::string check;
    std::string spec_label;
    std::map<std::string, double> parameters;
    double defect = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::optional<McMeta> samples;
    std::string note;

    void finish() { pass = defect <= threshold; }
};

struct LrdQuadruple {
    IncrementQuadruple q;
    std::vector<double> horizons; // increasing, >= 1
};

// Increment covariance E((X_v - X_r)(X_{t+T} - X_{s+T})) through a
// cancellation-free route (closed form for wfbm, mixed-derivative kernel
// double integrals otherwise).
double incr_cov_distant(const FamilySpec& spec, const IncrementQuadruple& q, double T);

// Long-range dependence: scaled increment covariance converges to the
// family limit; the error sequence must decrease along the horizons.
VerificationReport check_lrd_limit(const FamilySpec& spec, const LrdQuadruple& q);

// T^{-a} E((xi_{t+T}-xi_T)(xi_{s+T}-xi_T)) against the fBm limit.
VerificationReport check_asymptotic_homogeneity(double a, double b, double s, double t,
                                                const std::vector<double>& horizons);

// eps^{-b-1} E(xi_{t+eps}-xi_t)^2 -> 2 t^a/(b+1) and
// T^{-(1+a+b)} E(xi_{t+T}-xi_t)^2 -> 2 Beta(a+1,b+1).
VerificationReport check_short_long_asymptotics(double a, double b, double t,
                                                const std::vector<double>& eps_values,
                                                const std::vector<double>& horizons);

struct McParams {
    bool enabled = false;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
};

// Sum of analytic increment variances over dyadic partitions of [0,1]. For
// the log kernel the per-term brackets and the decay of the sum are asserted;
// optional Monte Carlo cross-check at the coarsest partition.
VerificationReport check_quadratic_variation(const FamilySpec& spec,
                                             const std::vector<int>& n_values,
                                             const McParams& mc = {});

// Expected total variation of the log-kernel process grows without bound:
// L_n increasing and dominated from below by the (1/n) sum of sqrt(log k).
VerificationReport check_variation_growth(const std::vector<int>& n_values);

// Triangular-property defect |cov(s,u)cov(t,t) - cov(s,t)cov(t,u)| (relative).
VerificationReport check_markov_defect(const FamilySpec& spec, double s, double t,
                                       double u);

// Ratio statistics E(increment)^2 / |t-s|^exponent over hypothesis-matched
// (s,t) regions; bounded above and away from zero.
VerificationReport check_incr_var_bounds(const FamilySpec& spec);

// Per-pair z-scores of empirical vs analytic covariance.
VerificationReport check_empirical_cov(const PathEnsemble& ensemble,
                                       double tol_sigmas = 3.0);

// Two samplers of the same law: per-pair difference of empirical covariances
// within tol_sigmas pooled standard errors plus a bias allowance.
VerificationReport check_distributional_match(const PathEnsemble& a,
                                              const PathEnsemble& b,
                                              double tol_sigmas,
                                              double bias_allowance);

// Sign of the increment covariance follows the sign of b on random quadruples.
VerificationReport check_incr_sign_law(double a, double b, int n_quadruples,
                                       std::uint64_t seed);

// (1/2) h(h-1)(h-2) iint_{[0,s]x[0,t]} K0 equals the nsfBm covariance.
VerificationReport check_representation_identity(double h, double s, double t);

} // namespace lmgp

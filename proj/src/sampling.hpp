#pragma once

#include "cholesky.hpp"
#include "family.hpp"
#include "grid.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace lmgp {

enum class SampleMethod {
    DirectCholesky,
    EvenPart,          // sfBm as scaled even part of two-sided fBm
    OddPartIntegrated, // nsfBm as integrated odd-part process
    TimeChangedBm,     // wfBm with b = 1 as int_0^t w_{r^a} dr
};

std::string method_name(SampleMethod m);

// n sampled paths on a grid. Row p is path p; reproducible bit-exactly from
// (spec, grid, n, seed, method, substeps) at any thread count.
struct PathEnsemble {
    FamilySpec spec;
    TimeGrid grid;
    SampleMethod method = SampleMethod::DirectCholesky;
    std::uint64_t seed = 0;
    int substeps = 1;
    double applied_jitter = 0.0;
    Eigen::MatrixXd paths; // n x m
};

// Exact draw from the centered Gaussian law with Gram matrix gram(spec, grid).
PathEnsemble sample(const FamilySpec& spec, const TimeGrid& grid, std::size_t n,
                    std::uint64_t seed, int threads = 0);

// sfBm via the mirrored-grid even part, scaled by sqrt((2-h)/2) so the law
// matches the (2-h)-normalized kernel.
PathEnsemble sample_sfbm_even(double h, const TimeGrid& grid, std::size_t n,
                              std::uint64_t seed, int threads = 0);

// nsfBm as sqrt(h(h-1)(h-2)/2) times the cumulative trapezoid integral of the
// odd-part process on a substep-refined grid.
PathEnsemble sample_nsfbm_odd_integrated(double h, const TimeGrid& grid, std::size_t n,
                                         std::uint64_t seed, int substeps,
                                         int threads = 0);

// wfBm boundary b = 1 (a >= 0) as the trapezoid integral of w_{r^a}.
PathEnsemble sample_wfbm_b1(double a, const TimeGrid& grid, std::size_t n,
                            std::uint64_t seed, int substeps, int threads = 0);

// Routing helper for the C API / CLI.
PathEnsemble sample_with_method(const FamilySpec& spec, const TimeGrid& grid,
                                std::size_t n, std::uint64_t seed, SampleMethod method,
                                int substeps, int threads = 0);

// Uncentered empirical covariance matrix of an ensemble.
Eigen::MatrixXd empirical_cov(const PathEnsemble& e);

} // namespace lmgp

#include "sampling.hpp"
#include "errors.hpp"
#include "kernels.hpp"
#include "parallel.hpp"
#include "pd_analysis.hpp"
#include "rng.hpp"

#include <cmath>

namespace lmgp {

std::string method_name(SampleMethod m) {
    switch (m) {
        case SampleMethod::DirectCholesky: return "DIRECT_CHOLESKY";
        case SampleMethod::EvenPart: return "EVEN_PART";
        case SampleMethod::OddPartIntegrated: return "ODD_PART_INTEGRATED";
        case SampleMethod::TimeChangedBm: return "TIME_CHANGED_BM";
    }
    return "?";
}

namespace {

// Refine [0, grid.back()] so that every grid point is hit and each segment
// between consecutive anchors (0 and the grid points) splits into `substeps`
// equal parts. Returns fine points and the fine index of each grid point.
void refine_grid(const TimeGrid& grid, int substeps, std::vector<double>& fine,
                 std::vector<std::size_t>& grid_index) {
    fine.clear();
    grid_index.clear();
    fine.push_back(0.0);
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double next = grid[i];
        if (next > prev) {
            for (int k = 1; k <= substeps; ++k)
                fine.push_back(prev + (next - prev) * static_cast<double>(k) /
                                          static_cast<double>(substeps));
        }
        grid_index.push_back(fine.size() - 1);
        prev = next;
    }
}

} // namespace

PathEnsemble sample(const FamilySpec& spec, const TimeGrid& grid, std::size_t n,
                    std::uint64_t seed, int threads) {
    PathEnsemble e{spec, grid, SampleMethod::DirectCholesky, seed, 1, 0.0,
                   Eigen::MatrixXd(n, grid.size())};
    const std::size_t m = grid.size();
    if (m == 0 || n == 0) return e;

    if (spec.degeneracy() == Degeneracy::RankOne) {
        // rank-one law: zeta_t = sqrt(12) t^2 gamma; exact path ratios
        Eigen::VectorXd v(m);
        for (std::size_t i = 0; i < m; ++i) v(i) = std::sqrt(12.0) * grid[i] * grid[i];
        parallel_for(n, threads, [&](std::size_t p) {
            const double g = standard_normal(seed, p, 0);
            for (std::size_t i = 0; i < m; ++i) e.paths(p, i) = v(i) * g;
        });
        return e;
    }

    const GramMatrix gm = gram(spec, grid);
    const CholeskyFactor f = cholesky_with_jitter(gm.entries);
    e.applied_jitter = f.applied_jitter;
    parallel_for(n, threads, [&](std::size_t p) {
        Eigen::VectorXd z(m);
        for (std::size_t j = 0; j < m; ++j) z(j) = standard_normal(seed, p, j);
        const Eigen::VectorXd x = f.lower.triangularView<Eigen::Lower>() * z;
        e.paths.row(p) = x.transpose();
    });
    return e;
}

PathEnsemble sample_sfbm_even(double h, const TimeGrid& grid, std::size_t n,
                              std::uint64_t seed, int threads) {
    const FamilySpec spec = FamilySpec::sfbm(h);
    PathEnsemble e{spec, grid, SampleMethod::EvenPart, seed, 1, 0.0,
                   Eigen::MatrixXd(n, grid.size())};
    const std::size_t m = grid.size();
    if (m == 0 || n == 0) return e;

    // mirrored grid plus {0}: (-t_k, ..., -t_1, 0, t_1, ..., t_k)
    std::size_t positive_count = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (grid[i] > 0.0) ++positive_count;
    std::vector<double> tau;
    tau.reserve(2 * positive_count + 1);
    for (std::size_t i = m; i-- > 0;)
        if (grid[i] > 0.0) tau.push_back(-grid[i]);
    tau.push_back(0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (grid[i] > 0.0) tau.push_back(grid[i]);
    const std::size_t mm = tau.size();
    const std::size_t zero_at = positive_count;

    const double hurst = 0.5 * h;
    Eigen::MatrixXd g2(mm, mm);
    for (std::size_t i = 0; i < mm; ++i)
        for (std::size_t j = i; j < mm; ++j) {
            const double c = fbm_cov_two_sided(hurst, tau[i], tau[j]);
            g2(i, j) = c;
            g2(j, i) = c;
        }
    const CholeskyFactor f2 = cholesky_with_jitter(g2);
    e.applied_jitter = f2.applied_jitter;

    const double scale = std::sqrt(0.5 * (2.0 - h));
    parallel_for(n, threads, [&](std::size_t p) {
        Eigen::VectorXd z(mm);
        for (std::size_t j = 0; j < mm; ++j) z(j) = standard_normal(seed, p, j);
        const Eigen::VectorXd y = f2.lower.triangularView<Eigen::Lower>() * z;
        std::size_t k = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (grid[i] == 0.0) {
                e.paths(p, i) = 0.0;
            } else {
                const std::size_t ip = zero_at + 1 + k;
                const std::size_t in = zero_at - 1 - k;
                ++k;
                e.paths(p, i) = scale * (y(ip) + y(in));
            }
        }
    });
    return e;
}

PathEnsemble sample_nsfbm_odd_integrated(double h, const TimeGrid& grid, std::size_t n,
                                         std::uint64_t seed, int substeps, int threads) {
    if (!(h > 2.0 && h < 4.0))
        throw DomainError("sample_nsfbm_odd_integrated: requires 2 < h < 4");
    if (substeps < 1)
        throw DomainError("sample_nsfbm_odd_integrated: substeps must be >= 1");
    const FamilySpec spec = FamilySpec::nsfbm(h);
    PathEnsemble e{spec, grid, SampleMethod::OddPartIntegrated, seed, substeps, 0.0,
                   Eigen::MatrixXd(n, grid.size())};
    const std::size_t m = grid.size();
    if (m == 0 || n == 0) return e;

    std::vector<double> fine;
    std::vector<std::size_t> at;
    refine_grid(grid, substeps, fine, at);
    const std::size_t mf = fine.size();

    const double p_exp = h - 2.0;
    Eigen::MatrixXd g0(mf, mf);
    for (std::size_t i = 0; i < mf; ++i)
        for (std::size_t j = i; j < mf; ++j) {
            const double c = std::pow(fine[i] + fine[j], p_exp) -
                             (i == j ? 0.0 : std::pow(fine[j] - fine[i], p_exp));
            g0(i, j) = c;
            g0(j, i) = c;
        }
    const CholeskyFactor f0 = cholesky_with_jitter(g0);
    e.applied_jitter = f0.applied_jitter;

    const double scale = std::sqrt(0.5 * h * (h - 1.0) * (h - 2.0));
    parallel_for(n, threads, [&](std::size_t p) {
        Eigen::VectorXd z(mf);
        for (std::size_t j = 0; j < mf; ++j) z(j) = standard_normal(seed, p, j);
        const Eigen::VectorXd theta = f0.lower.triangularView<Eigen::Lower>() * z;
        double acc = 0.0;
        std::size_t next = 0;
        for (std::size_t j = 0; j < mf; ++j) {
            if (j > 0)
                acc += 0.5 * (theta(j - 1) + theta(j)) * (fine[j] - fine[j - 1]);
            while (next < m && at[next] == j) {
                e.paths(p, next) = scale * acc;
                ++next;
            }
        }
    });
    return e;
}

PathEnsemble sample_wfbm_b1(double a, const TimeGrid& grid, std::size_t n,
                            std::uint64_t seed, int substeps, int threads) {
    if (!(a >= 0.0))
        throw DomainError("sample_wfbm_b1: requires a >= 0 when b = 1");
    if (substeps < 1) throw DomainError("sample_wfbm_b1: substeps must be >= 1");
    const FamilySpec spec = FamilySpec::wfbm(a, 1.0);
    PathEnsemble e{spec, grid, SampleMethod::TimeChangedBm, seed, substeps, 0.0,
                   Eigen::MatrixXd(n, grid.size())};
    const std::size_t m = grid.size();
    if (m == 0 || n == 0) return e;

    std::vector<double> fine;
    std::vector<std::size_t> at;
    refine_grid(grid, substeps, fine, at);
    const std::size_t mf = fine.size();
    std::vector<double> tau(mf);
    for (std::size_t j = 0; j < mf; ++j) tau[j] = std::pow(fine[j], a); // 0^0 = 1

    parallel_for(n, threads, [&](std::size_t p) {
        double w = tau[0] > 0.0 ? std::sqrt(tau[0]) * standard_normal(seed, p, 0) : 0.0;
        double prev_w = w, acc = 0.0;
        std::size_t next = 0;
        for (std::size_t j = 0; j < mf; ++j) {
            if (j > 0) {
                const double dtau = tau[j] - tau[j - 1];
                w = prev_w + (dtau > 0.0
                                  ? std::sqrt(dtau) * standard_normal(seed, p, j)
                                  : 0.0);
                acc += 0.5 * (prev_w + w) * (fine[j] - fine[j - 1]);
                prev_w = w;
            }
            while (next < m && at[next] == j) {
                e.paths(p, next) = acc;
                ++next;
            }
        }
    });
    return e;
}

PathEnsemble sample_with_method(const FamilySpec& spec, const TimeGrid& grid,
                                std::size_t n, std::uint64_t seed, SampleMethod method,
                                int substeps, int threads) {
    switch (method) {
        case SampleMethod::DirectCholesky:
            return sample(spec, grid, n, seed, threads);
        case SampleMethod::EvenPart:
            if (spec.family != Family::Sfbm)
                throw DomainError("EVEN_PART sampling applies to sfbm only");
            return sample_sfbm_even(spec.h, grid, n, seed, threads);
        case SampleMethod::OddPartIntegrated:
            if (spec.family != Family::Nsfbm)
                throw DomainError("ODD_PART_INTEGRATED sampling applies to nsfbm only");
            return sample_nsfbm_odd_integrated(spec.h, grid, n, seed, substeps, threads);
        case SampleMethod::TimeChangedBm:
            if (spec.family != Family::Wfbm || spec.b != 1.0)
                throw DomainError("TIME_CHANGED_BM sampling applies to wfbm with b = 1");
            return sample_wfbm_b1(spec.a, grid, n, seed, substeps, threads);
    }
    throw DomainError("sample_with_method: unknown method");
}

Eigen::MatrixXd empirical_cov(const PathEnsemble& e) {
    const Eigen::Index n = e.paths.rows();
    if (n == 0) return Eigen::MatrixXd::Zero(e.paths.cols(), e.paths.cols());
    return (e.paths.transpose() * e.paths) / static_cast<double>(n);
}

} // namespace lmgp

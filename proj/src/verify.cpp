#include "verify.hpp"
#include "errors.hpp"
#include "pd_analysis.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>

namespace lmgp {

namespace {

constexpr double kTiny = 1e-300;

double rnd(std::uint64_t seed, std::uint64_t stream, std::uint64_t k, double lo,
           double hi) {
    return lo + (hi - lo) * uniform_open(seed, stream, k);
}

VerificationReport check_symmetry(const FamilySpec& spec, std::uint64_t seed) {
    VerificationReport rep;
    rep.check = "kernels.symmetry";
    rep.spec_label = spec.label();
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double s = rnd(seed, 1, 2 * i, 0.0, 10.0);
        const double t = rnd(seed, 1, 2 * i + 1, 0.0, 10.0);
        worst = std::max(worst, std::fabs(cov(spec, s, t) - cov(spec, t, s)));
    }
    rep.defect = worst;
    rep.threshold = 0.0;
    rep.finish();
    return rep;
}

VerificationReport check_zero_at_origin(const FamilySpec& spec, std::uint64_t seed) {
    VerificationReport rep;
    rep.check = "kernels.zero_at_origin";
    rep.spec_label = spec.label();
    double worst = 0.0;
    for (int i = 0; i < 32; ++i)
        worst = std::max(worst,
                         std::fabs(cov(spec, 0.0, rnd(seed, 2, i, 0.0, 10.0))));
    rep.defect = worst;
    rep.threshold = 0.0;
    rep.finish();
    return rep;
}

VerificationReport check_scaling(const FamilySpec& spec, std::uint64_t seed) {
    VerificationReport rep;
    rep.check = "kernels.scaling";
    rep.spec_label = spec.label();
    const double expo = 2.0 * spec.self_similarity_index();
    rep.parameters["exponent"] = expo;
    double worst = 0.0;
    for (double c : {0.5, 2.0, 10.0})
        for (int i = 0; i < 24; ++i) {
            const double s = rnd(seed, 3, 2 * i, 0.05, 8.0);
            const double t = rnd(seed, 3, 2 * i + 1, 0.05, 8.0);
            const double lhs = cov(spec, c * s, c * t);
            const double rhs = std::pow(c, expo) * cov(spec, s, t);
            worst = std::max(worst, std::fabs(lhs - rhs) /
                                        std::max({std::fabs(lhs), std::fabs(rhs), kTiny}));
        }
    rep.defect = worst;
    rep.threshold = 1e-10;
    rep.finish();
    return rep;
}

VerificationReport check_oracles(const FamilySpec& spec, std::uint64_t seed) {
    VerificationReport rep;
    rep.check = "kernels.oracle_agreement";
    rep.spec_label = spec.label();
    std::vector<double> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(rnd(seed, 4, i, 0.05, 9.0));
    std::sort(pts.begin(), pts.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
            const double s = pts[i], t = pts[j];
            const double c = cov(spec, s, t);
            if (spec.family == Family::Wfbm) {
                worst = std::max(worst, std::fabs(c - wfbm_cov_quad(spec.a, spec.b, s, t)) /
                                            (1.0 + std::fabs(c)));
                if (spec.b > 0.0 && spec.b <= 1.0)
                    worst = std::max(worst,
                                     std::fabs(c - wfbm_cov_double(spec.a, spec.b, s, t)) /
                                         (1.0 + std::fabs(c)));
                rep.threshold = 1e-8;
            } else if (spec.family == Family::Nsfbm && spec.h > 2.0 && spec.h < 4.0) {
                worst = std::max(worst, std::fabs(c - nsfbm_cov_triple(spec.h, s, t)) /
                                            (1.0 + std::fabs(c)));
                rep.threshold = 1e-4;
            } else if (spec.family == Family::Eta) {
                worst = std::max(worst, std::fabs(c - eta_cov_triple(s, t)) /
                                            (1.0 + std::fabs(c)));
                rep.threshold = 1e-6;
            }
        }
    rep.defect = worst;
    rep.finish();
    return rep;
}

VerificationReport check_incr_identity(const FamilySpec& spec, std::uint64_t seed) {
    VerificationReport rep;
    rep.check = "kernels.incr_identity";
    rep.spec_label = spec.label();
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        double s = rnd(seed, 5, 2 * i, 0.05, 5.0);
        double t = rnd(seed, 5, 2 * i + 1, 0.05, 5.0);
        if (s > t) std::swap(s, t);
        if (t - s < 1e-3) t += 0.5;
        const double combo = cov(spec, t, t) + cov(spec, s, s) - 2.0 * cov(spec, s, t);
        const double direct = spec.family == Family::Wfbm
                                  ? wfbm_incr_var(spec.a, spec.b, s, t)
                                  : eta_incr_var(s, t);
        worst = std::max(worst, std::fabs(direct - combo) /
                                    std::max({std::fabs(combo), std::fabs(direct), kTiny}));
    }
    rep.defect = worst;
    rep.threshold = 1e-10;
    rep.finish();
    return rep;
}

VerificationReport check_degenerate(const FamilySpec& spec) {
    VerificationReport rep;
    rep.check = "kernels.degenerate";
    rep.spec_label = spec.label();
    rep.threshold = 1e-12;
    double worst = 0.0;
    if (spec.degeneracy() == Degeneracy::RankOne) {
        for (double s : {0.5, 1.0, 2.0, 3.0})
            for (double t : {0.5, 1.0, 2.0, 3.0})
                worst = std::max(worst, std::fabs(cov(spec, s, t) - 12.0 * s * s * t * t) /
                                            (12.0 * s * s * t * t));
    } else if (spec.degeneracy() == Degeneracy::ZeroKernel) {
        for (double s : {0.5, 1.0, 2.0})
            for (double t : {0.5, 1.0, 2.0})
                worst = std::max(worst, std::fabs(cov(spec, s, t)));
    } else if (spec.family == Family::Wfbm && spec.a + spec.b == -1.0) {
        const double c0 = cov(spec, 1.0, 1.0);
        for (double t : {0.1, 0.5, 2.0, 7.0})
            worst = std::max(worst, std::fabs(cov(spec, t, t) - c0) / std::fabs(c0));
    } else {
        rep.note = "no degenerate structure to check";
    }
    rep.defect = worst;
    rep.finish();
    return rep;
}

VerificationReport check_psd_random_grids(const FamilySpec& spec, std::uint64_t seed,
                                          double tol) {
    VerificationReport rep;
    rep.check = "pd.psd_random_grids";
    rep.spec_label = spec.label();
    rep.parameters["tol"] = tol;
    double worst = 0.0; // most negative eigenvalue relative to trace
    for (int g = 0; g < 10; ++g) {
        const int size = 5 + static_cast<int>(rnd(seed, 100 + g, 0, 0.0, 35.999));
        std::vector<double> pts;
        for (int i = 0; i < size; ++i) pts.push_back(rnd(seed, 100 + g, 1 + i, 0.01, 10.0));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const GramMatrix gm = gram(spec, TimeGrid{pts});
        const PsdCertificate cert = psd_certificate(gm, tol);
        if (cert.trace > 0.0)
            worst = std::max(worst, -cert.min_eigenvalue / cert.trace);
    }
    rep.parameters["worst_relative_neg_eig"] = worst;
    rep.defect = worst;
    rep.threshold = tol;
    rep.finish();
    return rep;
}

VerificationReport check_determinism(const FamilySpec& spec, const VerifyOptions& opt) {
    VerificationReport rep;
    rep.check = "sampling.determinism";
    rep.spec_label = spec.label();
    const TimeGrid grid{{0.5, 1.0, 1.5, 2.0, 2.5}};
    const PathEnsemble e1 = sample(spec, grid, 64, opt.seed, 1);
    const PathEnsemble e2 = sample(spec, grid, 64, opt.seed, 4);
    rep.defect = (e1.paths.array() != e2.paths.array()).count();
    rep.threshold = 0.0;
    rep.finish();
    return rep;
}

TimeGrid default_grid() { return TimeGrid{{0.5, 1.0, 1.5, 2.0, 2.5}}; }

void add_kernels(std::vector<VerificationReport>& out, const FamilySpec& spec,
                 const VerifyOptions& opt) {
    out.push_back(check_symmetry(spec, opt.seed));
    out.push_back(check_zero_at_origin(spec, opt.seed));
    out.push_back(check_scaling(spec, opt.seed));
    if (spec.family == Family::Wfbm ||
        (spec.family == Family::Nsfbm && spec.degeneracy() == Degeneracy::None) ||
        spec.family == Family::Eta)
        out.push_back(check_oracles(spec, opt.seed));
    if (spec.family == Family::Wfbm || spec.family == Family::Eta)
        out.push_back(check_incr_identity(spec, opt.seed));
    if (spec.degeneracy() != Degeneracy::None ||
        (spec.family == Family::Wfbm && spec.a + spec.b == -1.0))
        out.push_back(check_degenerate(spec));
    if (spec.family == Family::Nsfbm && spec.degeneracy() == Degeneracy::None) {
        out.push_back(check_representation_identity(spec.h, 1.0, 1.0));
        out.back().check = "kernels.representation_identity";
    }
    if (spec.family == Family::Wfbm && spec.b != 0.0) {
        out.push_back(check_incr_sign_law(spec.a, spec.b, 200, opt.seed));
        out.back().check = "kernels.incr_sign_law";
    }
}

void add_pd(std::vector<VerificationReport>& out, const FamilySpec& spec,
            const VerifyOptions& opt) {
    const double tol = opt.tol_override > 0.0 ? opt.tol_override : 1e-8;
    out.push_back(check_psd_random_grids(spec, opt.seed, tol));
}

void add_sampling(std::vector<VerificationReport>& out, const FamilySpec& spec,
                  const VerifyOptions& opt) {
    const TimeGrid grid = default_grid();
    {
        const PathEnsemble e = sample(spec, grid, opt.n_paths, opt.seed, opt.threads);
        auto rep = check_empirical_cov(e, 3.0);
        rep.check = "sampling.empirical_cov";
        out.push_back(std::move(rep));
    }
    if (spec.family == Family::Sfbm && spec.degeneracy() == Degeneracy::None) {
        const PathEnsemble d = sample(spec, grid, opt.n_paths, opt.seed, opt.threads);
        const PathEnsemble e =
            sample_sfbm_even(spec.h, grid, opt.n_paths, opt.seed + 1, opt.threads);
        auto rep = check_distributional_match(d, e, 3.0, 0.0);
        rep.check = "sampling.cross_even_part";
        out.push_back(std::move(rep));
    }
    if (spec.family == Family::Nsfbm && spec.degeneracy() == Degeneracy::None) {
        const PathEnsemble d = sample(spec, grid, opt.n_paths, opt.seed, opt.threads);
        const PathEnsemble e = sample_nsfbm_odd_integrated(
            spec.h, grid, opt.n_paths, opt.seed + 1, opt.substeps, opt.threads);
        auto rep = check_distributional_match(d, e, 3.0, 2e-2);
        rep.check = "sampling.cross_odd_integrated";
        out.push_back(std::move(rep));
    }
    if (spec.family == Family::Wfbm && spec.b == 1.0) {
        const PathEnsemble e = sample_wfbm_b1(spec.a, grid, opt.n_paths, opt.seed, 200,
                                              opt.threads);
        auto rep = check_empirical_cov(e, 4.0);
        rep.check = "sampling.time_changed_bm";
        out.push_back(std::move(rep));
    }
    out.push_back(check_determinism(spec, opt));
}

void add_properties(std::vector<VerificationReport>& out, const FamilySpec& spec,
                    const VerifyOptions& opt) {
    const std::vector<double> horizons = {1e2, 1e3, 1e4, 1e5};
    const std::vector<int> dyadic = {64, 128, 256, 512, 1024, 2048, 4096};
    switch (spec.family) {
        case Family::Wfbm:
            out.push_back(check_lrd_limit(spec, {{0.0, 1.0, 1.0, 2.0}, horizons}));
            out.push_back(
                check_asymptotic_homogeneity(spec.a, spec.b, 1.0, 2.0, {1e2, 1e3, 1e4}));
            out.push_back(check_short_long_asymptotics(
                spec.a, spec.b, 1.0, {1e-1, 1e-2, 1e-3, 1e-4}, horizons));
            out.push_back(check_markov_defect(spec, 1.0, 2.0, 3.0));
            out.push_back(check_quadratic_variation(spec, dyadic));
            out.push_back(check_incr_var_bounds(spec));
            break;
        case Family::Sfbm:
            if (spec.degeneracy() == Degeneracy::None) {
                out.push_back(check_lrd_limit(spec, {{0.0, 1.0, 1.0, 2.0}, horizons}));
                out.push_back(check_incr_var_bounds(spec));
            }
            out.push_back(check_quadratic_variation(spec, dyadic));
            break;
        case Family::Nsfbm:
            if (spec.degeneracy() == Degeneracy::None) {
                out.push_back(check_lrd_limit(spec, {{0.0, 1.0, 1.0, 2.0}, horizons}));
                out.push_back(check_incr_var_bounds(spec));
                McParams mc{true, 200, opt.seed};
                out.push_back(check_quadratic_variation(spec, {64, 128, 256}, mc));
            } else {
                out.push_back(check_quadratic_variation(spec, {64, 128, 256}));
            }
            break;
        case Family::Eta:
            out.push_back(check_lrd_limit(spec, {{0.0, 1.0, 1.0, 2.0}, horizons}));
            out.push_back(check_quadratic_variation(spec, dyadic));
            out.push_back(check_variation_growth({64, 256, 1024, 4096}));
            break;
        case Family::Fbm:
            out.push_back(check_markov_defect(spec, 1.0, 2.0, 3.0));
            break;
        default:
            break;
    }
}

} // namespace

std::vector<VerificationReport> run_suite(const FamilySpec& spec,
                                          const std::string& suite,
                                          const VerifyOptions& opt) {
    if (suite != "full" && suite != "kernels" && suite != "pd" && suite != "sampling" &&
        suite != "properties")
        throw DomainError("unknown suite: " + suite);
    std::vector<VerificationReport> out;
    const bool full = suite == "full";
    if (full || suite == "kernels") add_kernels(out, spec, opt);
    if (full || suite == "pd") add_pd(out, spec, opt);
    if (full || suite == "sampling") add_sampling(out, spec, opt);
    if (full || suite == "properties") add_properties(out, spec, opt);
    std::stable_sort(out.begin(), out.end(),
                     [](const VerificationReport& x, const VerificationReport& y) {
                         return x.check < y.check;
                     });
    return out;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const VerificationReport& r) { return r.pass; });
}

} // namespace lmgp

#include <doctest.h>

#include "errors.hpp"
#include "properties.hpp"
#include "rng.hpp"
#include "verify.hpp"

#include <cmath>
#include <random>

using namespace lmgp;

namespace {
const std::vector<double> kHorizons = {1e2, 1e3, 1e4, 1e5};
const std::vector<int> kDyadic = {64, 128, 256, 512, 1024, 2048, 4096};
} // namespace

TEST_CASE("lrd limits at the canonical quadruple") {
    {
        const auto rep =
            check_lrd_limit(FamilySpec::wfbm(0, 0.5), {{0, 1, 1, 2}, kHorizons});
        CHECK(rep.parameters.at("limit") == doctest::Approx(0.5));
        CHECK(rep.pass);
    }
    {
        const auto rep = check_lrd_limit(FamilySpec::nsfbm(3), {{0, 1, 1, 2}, kHorizons});
        CHECK(rep.parameters.at("limit") == doctest::Approx(3.0));
        CHECK(rep.pass);
    }
    {
        const auto rep = check_lrd_limit(FamilySpec::eta(), {{0, 1, 1, 2}, kHorizons});
        CHECK(rep.parameters.at("limit") == doctest::Approx(1.0));
        CHECK(rep.pass);
    }
    {
        const auto rep = check_lrd_limit(FamilySpec::sfbm(1.5), {{0, 1, 1, 2}, kHorizons});
        CHECK(rep.parameters.at("limit") ==
              doctest::Approx(0.5 * 1.5 * 0.5 * 0.25 * 1.0 * 1.0)); // h(h-1)(h-2)^2/2
        CHECK(rep.pass);
    }
    { // b = 0 degenerates to a smallness check
        const auto rep =
            check_lrd_limit(FamilySpec::wfbm(0.7, 0.0), {{0, 1, 1, 2}, kHorizons});
        CHECK(rep.pass);
    }
}

TEST_CASE("asymptotic homogeneity") {
    CHECK(check_asymptotic_homogeneity(0.0, 0.4, 1.0, 2.0, {1e2, 1e3, 1e4}).pass);
    const auto rep = check_asymptotic_homogeneity(-0.5, 0.3, 1.0, 2.0, {1e2, 1e3, 1e4});
    CHECK(rep.pass);
}

TEST_CASE("short and long time asymptotics") {
    {
        const auto rep = check_short_long_asymptotics(
            0.0, 0.5, 1.0, {1e-1, 1e-2, 1e-3, 1e-4}, kHorizons);
        CHECK(rep.parameters.at("short_limit") == doctest::Approx(2.0 / 1.5));
        CHECK(rep.pass);
    }
    {
        const auto rep = check_short_long_asymptotics(
            1.0, 0.5, 1.0, {1e-1, 1e-2, 1e-3, 1e-4}, kHorizons);
        CHECK(rep.parameters.at("short_limit") == doctest::Approx(4.0 / 3.0));
        CHECK(rep.pass);
    }
    {
        const auto rep = check_short_long_asymptotics(
            -0.5, -0.5, 1.0, {1e-1, 1e-2, 1e-3, 1e-4}, kHorizons);
        CHECK(rep.parameters.at("long_limit") == doctest::Approx(2.0 * M_PI));
        CHECK(rep.pass);
    }
}

TEST_CASE("quadratic variation battery") {
    {
        const auto rep = check_quadratic_variation(FamilySpec::eta(), kDyadic);
        CHECK(rep.pass);
        CHECK(rep.parameters.at("sum_n4096") < 0.01);
        CHECK(rep.parameters.at("sum_n4096") < rep.parameters.at("sum_n64"));
    }
    { // fBm-like: sum = n (2/(b+1)) n^{-(b+1)}
        const auto rep = check_quadratic_variation(FamilySpec::wfbm(0, 0.5), kDyadic);
        CHECK(rep.pass);
        const double expected = 4096.0 * (2.0 / 1.5) * std::pow(4096.0, -1.5);
        CHECK(rep.parameters.at("sum_n4096") == doctest::Approx(expected).epsilon(1e-10));
    }
    { // b < 0: quadratic variation diverges
        const auto rep = check_quadratic_variation(FamilySpec::wfbm(0, -0.4), kDyadic);
        CHECK(rep.pass);
        CHECK(rep.parameters.at("sum_n4096") > rep.parameters.at("sum_n64"));
    }
    { // nsfBm paths are C^1: empirical quadratic variation vanishes
        McParams mc{true, 300, 2024};
        const auto rep = check_quadratic_variation(FamilySpec::nsfbm(3), {64, 128, 256}, mc);
        CHECK(rep.pass);
    }
}

TEST_CASE("variation growth of the log kernel") {
    const auto rep = check_variation_growth({64, 256, 1024, 4096});
    CHECK(rep.pass);
    CHECK(rep.parameters.at("env_n4096") > 1.1 * rep.parameters.at("env_n256"));
    CHECK(rep.parameters.at("L_n4096") > rep.parameters.at("L_n256"));
}

TEST_CASE("markov triangular defect") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 9.0);
    for (int i = 0; i < 100; ++i) {
        double s = u(rng), t = u(rng), w = u(rng);
        if (s > t) std::swap(s, t);
        if (t > w) std::swap(t, w);
        if (s > t) std::swap(s, t);
        if (!(s < t && t < w)) continue;
        const double a = -0.5 + 2.0 * uniform_open(9, 9, i);
        const auto rep = check_markov_defect(FamilySpec::wfbm(a, 0.0), s, t, w);
        CHECK(rep.pass); // defect <= 1e-10
    }
    CHECK(check_markov_defect(FamilySpec::fbm(0.5), 1, 2, 3).pass);
    CHECK(check_markov_defect(FamilySpec::wfbm(0, 0.5), 1, 2, 3).pass);  // > 1e-3
    CHECK(check_markov_defect(FamilySpec::wfbm(0, -0.5), 1, 2, 3).pass); // > 1e-3
    CHECK_THROWS_AS(check_markov_defect(FamilySpec::eta(), 2, 1, 3), DomainError);
}

TEST_CASE("increment variance ratio bounds") {
    {
        const auto rep = check_incr_var_bounds(FamilySpec::wfbm(0.0, 0.3));
        CHECK(rep.pass); // exact constant 2/(b+1)
    }
    CHECK(check_incr_var_bounds(FamilySpec::wfbm(1.2, 0.5)).pass);
    CHECK(check_incr_var_bounds(FamilySpec::wfbm(-0.5, 0.3)).pass);
    CHECK(check_incr_var_bounds(FamilySpec::nsfbm(3.0)).pass);
    CHECK(check_incr_var_bounds(FamilySpec::sfbm(1.5)).pass);
}

TEST_CASE("empirical covariance z-scores") {
    const PathEnsemble e =
        sample(FamilySpec::wfbm(0, 0), TimeGrid{{1.0, 2.0, 3.0}}, 20000, 12);
    const auto rep = check_empirical_cov(e, 3.0);
    CHECK(rep.pass);
    CHECK(rep.samples.has_value());

    const PathEnsemble tiny = sample(FamilySpec::eta(), TimeGrid{{1.0}}, 1, 12);
    const auto under = check_empirical_cov(tiny, 3.0);
    CHECK(under.pass);
    CHECK(under.note.find("underpowered") != std::string::npos);
}

TEST_CASE("distributional match between samplers") {
    const TimeGrid grid{{0.5, 1.0, 1.5, 2.0, 2.5}};
    const PathEnsemble d = sample(FamilySpec::sfbm(1.0), grid, 5000, 100);
    const PathEnsemble e = sample_sfbm_even(1.0, grid, 5000, 101);
    CHECK(check_distributional_match(d, e, 3.0, 0.0).pass);
}

TEST_CASE("increment covariance sign law") {
    CHECK(check_incr_sign_law(0.5, 0.7, 1000, 17).pass);
    CHECK(check_incr_sign_law(0.5, -0.7, 1000, 18).pass);
    CHECK(check_incr_sign_law(1.0, 0.0, 500, 19).pass);
}

TEST_CASE("integrated odd-part representation identity") {
    for (double h : {2.5, 3.0, 3.5})
        for (double s : {0.5, 1.0, 2.0})
            for (double t : {0.5, 1.0, 2.0}) {
                const auto rep = check_representation_identity(h, s, t);
                CHECK(rep.pass);
            }
    const auto spot = check_representation_identity(3.0, 1.0, 1.0);
    CHECK(spot.parameters.at("direct") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(spot.parameters.at("via_k0") == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("reports replay deterministically") {
    const auto a = check_lrd_limit(FamilySpec::wfbm(0, 0.5), {{0, 1, 1, 2}, kHorizons});
    const auto b = check_lrd_limit(FamilySpec::wfbm(0, 0.5), {{0, 1, 1, 2}, kHorizons});
    CHECK(a.defect == b.defect);
    CHECK(a.pass == b.pass);
    CHECK(a.parameters == b.parameters);
}

TEST_CASE("suite runner") {
    VerifyOptions opt;
    opt.n_paths = 2000;
    const auto reports = run_suite(FamilySpec::wfbm(0.0, 0.5), "kernels", opt);
    CHECK(reports.size() > 3);
    CHECK(all_pass(reports));
    for (std::size_t i = 1; i < reports.size(); ++i)
        CHECK(reports[i - 1].check <= reports[i].check); // deterministic order
    CHECK_THROWS_AS(run_suite(FamilySpec::eta(), "bogus", opt), DomainError);
}

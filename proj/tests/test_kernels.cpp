#include <doctest.h>

#include "errors.hpp"
#include "kernels.hpp"
#include "specfun.hpp"

#include <cmath>
#include <random>

using namespace lmgp;

namespace {
const double kLn2 = std::log(2.0);
const double kLn3 = std::log(3.0);

double rel(double x, double y) {
    return std::fabs(x - y) / std::max({std::fabs(x), std::fabs(y), 1e-300});
}
} // namespace

TEST_CASE("family spec validation") {
    CHECK_NOTHROW(FamilySpec::wfbm(0.0, 0.5));
    CHECK_NOTHROW(FamilySpec::wfbm(0.0, 1.0));    // b = 1 with a >= 0
    CHECK_NOTHROW(FamilySpec::wfbm(-0.5, -0.5));  // boundary a+b = -1
    CHECK_THROWS_AS(FamilySpec::wfbm(-0.5, 0.8), DomainError);
    CHECK_THROWS_AS(FamilySpec::wfbm(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(FamilySpec::wfbm(-1.0, 0.0), DomainError);
    CHECK_THROWS_AS(FamilySpec::wfbm(0.0, 1.2), DomainError);
    CHECK_NOTHROW(FamilySpec::sfbm(2.0));
    CHECK_NOTHROW(FamilySpec::nsfbm(2.0));
    CHECK_NOTHROW(FamilySpec::nsfbm(4.0));
    CHECK_THROWS_AS(FamilySpec::sfbm(2.5), DomainError);
    CHECK_THROWS_AS(FamilySpec::nsfbm(4.5), DomainError);
    CHECK_THROWS_AS(FamilySpec::odd_bfbm(4.0), DomainError);
    CHECK_THROWS_AS(FamilySpec::fbm(1.0), DomainError);

    CHECK(FamilySpec::wfbm(0.3, 0.5).self_similarity_index() == doctest::Approx(0.9));
    CHECK(FamilySpec::nsfbm(3.0).self_similarity_index() == doctest::Approx(1.5));
    CHECK(FamilySpec::eta().self_similarity_index() == 1.0);
    CHECK(FamilySpec::wfbm(0.0, 1.0).degeneracy() == Degeneracy::B1);
    CHECK(FamilySpec::nsfbm(4.0).degeneracy() == Degeneracy::RankOne);
    CHECK(FamilySpec::sfbm(2.0).degeneracy() == Degeneracy::ZeroKernel);
}

TEST_CASE("covariance closed forms") {
    CHECK(cov(FamilySpec::wfbm(0, 0), 2, 3) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(cov(FamilySpec::wfbm(1, 1), 1, 1) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    // a = 0 reduces to (1/(b+1)) (t^{b+1} + s^{b+1} - |s-t|^{b+1})
    for (double b : {-0.5, 0.3, 0.9}) {
        const FamilySpec w = FamilySpec::wfbm(0.0, b);
        for (double s : {0.3, 1.0, 2.7})
            for (double t : {0.6, 1.9, 4.0}) {
                const double truth =
                    (std::pow(t, b + 1) + std::pow(s, b + 1) -
                     std::pow(std::fabs(s - t), b + 1)) / (b + 1);
                CHECK(rel(cov(w, s, t), truth) < 1e-12);
            }
    }
    // h = 1 is Bm
    for (double s : {0.2, 1.0, 3.0})
        for (double t : {0.5, 2.5})
            CHECK(cov(FamilySpec::sfbm(1.0), s, t) ==
                  doctest::Approx(std::min(s, t)).epsilon(1e-14));
    CHECK(cov(FamilySpec::nsfbm(3), 1, 2) == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(cov(FamilySpec::nsfbm(3), 1, 1) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(cov(FamilySpec::eta(), 1, 1) ==
          doctest::Approx(2.0 * kLn2).epsilon(1e-14));
    CHECK(cov(FamilySpec::eta(), 1, 2) ==
          doctest::Approx(4.5 * kLn3 - 4.0 * kLn2).epsilon(1e-13));
    for (double t : {0.3, 1.7, 6.0})
        CHECK(cov(FamilySpec::eta(), t, t) ==
              doctest::Approx(2.0 * t * t * kLn2).epsilon(1e-13));
    for (double s : {0.5, 1.0})
        for (double t : {1.5, 2.0})
            CHECK(cov(FamilySpec::fbm(0.5), s, t) ==
                  doctest::Approx(std::min(s, t)).epsilon(1e-14));

    CHECK_THROWS_AS(cov(FamilySpec::eta(), -1.0, 2.0), DomainError);
}

TEST_CASE("covariance symmetry and zero at origin") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    const FamilySpec specs[] = {FamilySpec::wfbm(-0.4, 0.3), FamilySpec::wfbm(2.0, -0.8),
                                FamilySpec::sfbm(0.7),       FamilySpec::nsfbm(3.4),
                                FamilySpec::odd_bfbm(2.6),   FamilySpec::eta(),
                                FamilySpec::fbm(0.7)};
    for (const auto& spec : specs) {
        for (int i = 0; i < 100; ++i) {
            const double s = u(rng), t = u(rng);
            CHECK(cov(spec, s, t) == cov(spec, t, s)); // exact
        }
        for (int i = 0; i < 20; ++i) CHECK(cov(spec, 0.0, u(rng)) == 0.0);
    }
}

TEST_CASE("self-similarity scaling identities") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 8.0);
    const FamilySpec specs[] = {FamilySpec::wfbm(-0.4, 0.3), FamilySpec::wfbm(1.5, 1.0),
                                FamilySpec::sfbm(1.3),       FamilySpec::nsfbm(2.8),
                                FamilySpec::odd_bfbm(3.2),   FamilySpec::eta(),
                                FamilySpec::fbm(0.25)};
    for (const auto& spec : specs) {
        const double expo = 2.0 * spec.self_similarity_index();
        for (double c : {0.5, 2.0, 10.0})
            for (int i = 0; i < 30; ++i) {
                const double s = u(rng), t = u(rng);
                CHECK(rel(cov(spec, c * s, c * t), std::pow(c, expo) * cov(spec, s, t)) <
                      1e-10);
            }
    }
}

TEST_CASE("wfbm quadrature oracle reference values") {
    CHECK(wfbm_cov_quad(0, 0.5, 1, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    for (double s : {0.4, 1.0, 2.0})
        for (double t : {0.7, 3.0})
            CHECK(wfbm_cov_quad(0, 0, s, t) ==
                  doctest::Approx(2.0 * std::min(s, t)).epsilon(1e-10));
    CHECK(wfbm_cov_quad(-0.5, -0.5, 1, 1) ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-9));
    CHECK_THROWS_AS(wfbm_cov_quad(-0.5, 0.8, 1.0, 2.0), DomainError);
}

TEST_CASE("wfbm double-integral oracle reference values") {
    CHECK(wfbm_cov_double(1, 1, 1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(wfbm_cov_double(0, 1, 1, 1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(wfbm_cov_double(0, 0.5, 1, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK_THROWS_AS(wfbm_cov_double(0.0, -0.2, 1, 2), DomainError);
    CHECK_THROWS_AS(wfbm_cov_double(0.0, 0.0, 1, 2), DomainError);
}

TEST_CASE("oracle agreement on random grids") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.05, 9.0);
    for (auto [a, b] : {std::pair{-0.4, 0.3}, std::pair{0.8, -0.6}, std::pair{1.7, 1.0},
                        std::pair{-0.85, 0.1}}) {
        std::vector<double> pts(8);
        for (double& p : pts) p = u(rng);
        std::sort(pts.begin(), pts.end());
        const FamilySpec w = FamilySpec::wfbm(a, b);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i; j < pts.size(); ++j) {
                const double c = cov(w, pts[i], pts[j]);
                CHECK(std::fabs(c - wfbm_cov_quad(a, b, pts[i], pts[j])) <=
                      1e-8 * (1.0 + std::fabs(c)));
                if (b > 0.0)
                    CHECK(std::fabs(c - wfbm_cov_double(a, b, pts[i], pts[j])) <=
                          1e-8 * (1.0 + std::fabs(c)));
            }
    }
}

TEST_CASE("nsfbm triple-integral oracle") {
    CHECK(nsfbm_cov_triple(3, 1, 1) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(nsfbm_cov_triple(3, 1, 2) == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(nsfbm_cov_triple(2.5, 0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(nsfbm_cov_triple(4.2, 1, 1), DomainError);
    for (double h : {2.5, 3.0, 3.5}) {
        const FamilySpec spec = FamilySpec::nsfbm(h);
        for (double s : {0.5, 1.0, 2.0})
            for (double t : {0.5, 1.3, 3.1}) {
                const double c = cov(spec, s, t);
                CHECK(std::fabs(nsfbm_cov_triple(h, s, t) - c) <=
                      1e-4 * (1.0 + std::fabs(c)));
            }
    }
}

TEST_CASE("eta triple-integral oracle") {
    CHECK(eta_cov_triple(1, 1) == doctest::Approx(2.0 * kLn2).epsilon(1e-8));
    CHECK(eta_cov_triple(1, 2) ==
          doctest::Approx(4.5 * kLn3 - 4.0 * kLn2).epsilon(1e-8));
    for (double t : {0.5, 2.0})
        CHECK(eta_cov_triple(t, t) ==
              doctest::Approx(2.0 * t * t * kLn2).epsilon(1e-8));
    const FamilySpec spec = FamilySpec::eta();
    for (double s : {0.3, 1.0, 2.4})
        for (double t : {0.8, 1.9, 4.6}) {
            const double c = cov(spec, s, t);
            CHECK(std::fabs(eta_cov_triple(s, t) - c) <= 1e-6 * (1.0 + std::fabs(c)));
        }
}

TEST_CASE("wfbm increment variance") {
    for (double b : {-0.5, 0.2, 1.0})
        for (auto [s, t] : {std::pair{0.0, 1.0}, std::pair{0.5, 2.0}})
            CHECK(wfbm_incr_var(0.0, b, s, t) ==
                  doctest::Approx(2.0 * std::pow(t - s, b + 1) / (b + 1)).epsilon(1e-12));
    CHECK(wfbm_incr_var(1, 0, 0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(wfbm_incr_var(0.7, -0.2, 1.3, 1.3) == 0.0);
    CHECK_THROWS_AS(wfbm_incr_var(0, 0.5, 2.0, 1.0), DomainError);

    // identity against the covariance combination
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.05, 6.0);
    for (auto [a, b] : {std::pair{-0.4, 0.3}, std::pair{1.2, -0.7}, std::pair{0.5, 1.0}}) {
        const FamilySpec w = FamilySpec::wfbm(a, b);
        for (int i = 0; i < 40; ++i) {
            double s = u(rng), t = u(rng);
            if (s > t) std::swap(s, t);
            if (t == s) continue;
            const double combo = cov(w, t, t) + cov(w, s, s) - 2.0 * cov(w, s, t);
            CHECK(rel(wfbm_incr_var(a, b, s, t), combo) < 1e-10);
        }
    }
}

TEST_CASE("wfbm increment covariance") {
    CHECK(wfbm_incr_cov(0.7, 0.0, {0, 1, 1, 2}) == 0.0); // exactly
    // int_0^1 [(2-u)^{1/2} - (1-u)^{1/2}] du = (2/3)(2 sqrt(2) - 2)
    CHECK(wfbm_incr_cov(0, 0.5, {0, 1, 1, 2}) ==
          doctest::Approx((2.0 / 3.0) * (2.0 * std::sqrt(2.0) - 2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(IncrementQuadruple(0, 2, 1, 3), DomainError);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.1, 9.9);
    for (double b : {0.6, -0.4}) {
        for (int i = 0; i < 1000; ++i) {
            double p[4] = {u(rng), u(rng), u(rng), u(rng)};
            std::sort(p, p + 4);
            if (p[1] - p[0] < 1e-3 || p[3] - p[2] < 1e-3) continue;
            const double v = wfbm_incr_cov(0.8, b, {p[0], p[1], p[2], p[3]});
            if (b > 0) CHECK(v > 0.0);
            else CHECK(v < 0.0);
        }
    }

    // consistency with the covariance combination
    const FamilySpec w = FamilySpec::wfbm(0.8, 0.6);
    const IncrementQuadruple q{0.5, 1.0, 2.0, 3.0};
    const double combo = cov(w, q.v, q.t) - cov(w, q.v, q.s) - cov(w, q.r, q.t) +
                         cov(w, q.r, q.s);
    CHECK(rel(wfbm_incr_cov(0.8, 0.6, q), combo) < 1e-11);
}

TEST_CASE("eta increment variance") {
    CHECK(eta_incr_var(0, 1) == doctest::Approx(2.0 * kLn2).epsilon(1e-10));
    CHECK(eta_incr_var(1, 1) == 0.0);
    const FamilySpec e = FamilySpec::eta();
    for (auto [s, t] : {std::pair{0.3, 0.9}, std::pair{1.0, 2.0}, std::pair{0.0, 2.5},
                        std::pair{2.0, 2.75}}) {
        const double combo = cov(e, t, t) + cov(e, s, s) - 2.0 * cov(e, s, t);
        CHECK(rel(eta_incr_var(s, t), combo) < 1e-10);
    }
}

TEST_CASE("eta increment variance brackets at dyadic partitions") {
    // the ordered-triangle integral (= half the increment variance) lies in
    // [log k / (2 n^2), log k / n^2] for k >= 55
    const int n = 256;
    for (int k : {55, 100, 200, 255}) {
        const double half =
            0.5 * eta_incr_var(static_cast<double>(k) / n,
                               static_cast<double>(k + 1) / n);
        const double lk = std::log(static_cast<double>(k));
        CHECK(half >= lk / (2.0 * n * n));
        CHECK(half <= lk / (static_cast<double>(n) * n));
    }
}

TEST_CASE("degenerate kernels") {
    const FamilySpec r1 = FamilySpec::nsfbm(4.0);
    for (double s : {0.5, 1.0, 2.0})
        for (double t : {0.7, 3.0})
            CHECK(cov(r1, s, t) == 12.0 * s * s * t * t); // exact closed form
    const FamilySpec z = FamilySpec::sfbm(2.0);
    for (double s : {0.5, 2.0}) CHECK(cov(z, s, 1.0) == 0.0);
    // constant variance on the boundary a+b = -1
    const FamilySpec b = FamilySpec::wfbm(-0.5, -0.5);
    const double c = 2.0 * specfun::beta(0.5, 0.5); // = 2 pi
    CHECK(c == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
    for (double t : {0.01, 0.4, 1.0, 9.0})
        CHECK(cov(b, t, t) == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("odd-part kernel") {
    const FamilySpec o = FamilySpec::odd_bfbm(3.0);
    CHECK(cov(o, 1, 2) == doctest::Approx(3.0 - 1.0).epsilon(1e-14));
    CHECK(cov(o, 1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(incr_var(o, 1.0, 2.0) ==
          doctest::Approx(cov(o, 2, 2) + cov(o, 1, 1) - 2.0 * cov(o, 1, 2)));
}

TEST_CASE("near-degenerate h close to 2") {
    for (double h : {2.0 - 1e-6, 2.0 + 1e-6}) {
        const FamilySpec spec = h < 2.0 ? FamilySpec::sfbm(h) : FamilySpec::nsfbm(h);
        for (double s : {0.5, 1.0, 2.0})
            for (double t : {0.5, 1.0, 2.0})
                CHECK(std::fabs(cov(spec, s, t)) <
                      1e-5 * std::max(s, t) * std::max(s, t));
    }
}

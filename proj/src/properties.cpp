#include "properties.hpp"
#include "errors.hpp"
#include "pd_analysis.hpp"
#include "rng.hpp"
#include "specfun.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace lmgp {

using specfun::adaptive_quad;
using specfun::EndpointHint;
using specfun::gauss_legendre;

namespace {

constexpr double kTiny = 1e-300;

double rel_err(double value, double target) {
    return std::fabs(value - target) / std::max(std::fabs(target), kTiny);
}

// tensor Gauss-Legendre over a rectangle
double gl2d(const std::function<double(double, double)>& f, double a1, double b1,
            double a2, double b2, int n = 16) {
    const auto& gl = gauss_legendre(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double u = a1 + (b1 - a1) * gl.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            const double w = a2 + (b2 - a2) * gl.nodes[j];
            row += gl.weights[j] * f(u, w);
        }
        acc += gl.weights[i] * row;
    }
    return acc * (b1 - a1) * (b2 - a2);
}

// mixed-derivative kernel of the h-family, stable for u << w
double k00_sfbm(double h, double u, double w) {
    const double p = h - 2.0;
    const double base = std::pow(w, p);
    const double d = std::expm1(p * std::log1p(u / w)) - std::expm1(p * std::log1p(-u / w));
    return -0.5 * (2.0 - h) * h * (h - 1.0) * base * d;
}

// monotone decrease allowing a floor once errors reach numerical noise
bool decreasing_with_floor(const std::vector<double>& errs, double floor_abs) {
    for (std::size_t i = 1; i < errs.size(); ++i)
        if (errs[i] >= errs[i - 1] && errs[i] > floor_abs) return false;
    return true;
}

} // namespace

double incr_cov_distant(const FamilySpec& spec, const IncrementQuadruple& q, double T) {
    switch (spec.family) {
        case Family::Wfbm:
            return wfbm_incr_cov(spec.a, spec.b,
                                 IncrementQuadruple(q.r, q.v, q.s + T, q.t + T));
        case Family::Sfbm:
        case Family::Nsfbm:
            return gl2d([&](double u, double w) { return k00_sfbm(spec.h, u, w); }, q.r,
                        q.v, q.s + T, q.t + T);
        case Family::Eta:
            return gl2d([](double u, double w) { return std::log1p(2.0 * u / (w - u)); },
                        q.r, q.v, q.s + T, q.t + T);
        default:
            throw DomainError("incr_cov_distant: unsupported family");
    }
}

VerificationReport check_lrd_limit(const FamilySpec& spec, const LrdQuadruple& lq) {
    VerificationReport rep;
    rep.check = "lrd_limit";
    rep.spec_label = spec.label();
    const auto& q = lq.q;
    rep.parameters = {{"r", q.r}, {"v", q.v}, {"s", q.s}, {"t", q.t}};

    double limit = 0.0, exponent = 0.0;
    switch (spec.family) {
        case Family::Wfbm:
            limit = spec.b / (spec.a + 1.0) * (q.t - q.s) *
                    (std::pow(q.v, spec.a + 1.0) - std::pow(q.r, spec.a + 1.0));
            exponent = 1.0 - spec.b;
            break;
        case Family::Sfbm:
        case Family::Nsfbm: {
            const double h = spec.h;
            limit = 0.5 * h * (h - 1.0) * (h - 2.0) * (h - 2.0) * (q.t - q.s) *
                    (q.v * q.v - q.r * q.r);
            exponent = 3.0 - h;
            break;
        }
        case Family::Eta:
            limit = (q.t - q.s) * (q.v * q.v - q.r * q.r);
            exponent = 1.0;
            break;
        default:
            throw DomainError("check_lrd_limit: unsupported family");
    }
    rep.parameters["limit"] = limit;

    std::vector<double> errs;
    for (double T : lq.horizons)
        errs.push_back(std::fabs(std::pow(T, exponent) * incr_cov_distant(spec, q, T) -
                                 limit));
    const double scale = std::max(std::fabs(limit), 1e-6);
    rep.defect = errs.back() / scale;
    rep.threshold = spec.family == Family::Wfbm && spec.b == 0.0 ? 1e-12 : 1e-2;
    rep.finish();
    if (!decreasing_with_floor(errs, 1e-9 * scale)) {
        rep.pass = false;
        rep.note = "error sequence not decreasing";
        rep.defect = std::max(rep.defect, rep.threshold * 2.0);
    }
    return rep;
}

VerificationReport check_asymptotic_homogeneity(double a, double b, double s, double t,
                                                const std::vector<double>& horizons) {
    VerificationReport rep;
    rep.check = "asymptotic_homogeneity";
    rep.spec_label = FamilySpec::wfbm(a, b).label();
    if (s > t) std::swap(s, t);
    rep.parameters = {{"a", a}, {"b", b}, {"s", s}, {"t", t}};

    const double limit =
        (std::pow(t, b + 1.0) + std::pow(s, b + 1.0) -
         (s == t ? 0.0 : std::pow(t - s, b + 1.0))) / (b + 1.0);
    auto scaled = [&](double T) {
        if (s == 0.0) return 0.0;
        auto f1 = [&](double u) { return std::pow(1.0 + u / T, a) * std::pow(t - u, b); };
        auto f2 = [&](double u) { return std::pow(1.0 + u / T, a) * std::pow(s - u, b); };
        const double tol = 1e-11 * (1.0 + std::fabs(limit));
        const double i1 =
            adaptive_quad(f1, 0.0, s, tol, EndpointHint{0.0, s == t ? b : 0.0}).value;
        const double i2 = adaptive_quad(f2, 0.0, s, tol, EndpointHint{0.0, b}).value;
        return i1 + i2;
    };
    std::vector<double> errs;
    for (double T : horizons) errs.push_back(std::fabs(scaled(T) - limit));
    const double scale = std::max(std::fabs(limit), kTiny);
    rep.defect = errs.back() / scale;
    rep.threshold = 1e-2;
    rep.finish();
    if (!decreasing_with_floor(errs, 1e-9 * scale)) {
        rep.pass = false;
        rep.defect = std::max(rep.defect, 2.0 * rep.threshold);
        rep.note = "defect sequence not decreasing";
    }
    return rep;
}

VerificationReport check_short_long_asymptotics(double a, double b, double t,
                                                const std::vector<double>& eps_values,
                                                const std::vector<double>& horizons) {
    VerificationReport rep;
    rep.check = "short_long_asymptotics";
    rep.spec_label = FamilySpec::wfbm(a, b).label();
    rep.parameters = {{"a", a}, {"b", b}, {"t", t}};

    const double short_limit = 2.0 * std::pow(t, a) / (b + 1.0);
    const double long_limit = 2.0 * specfun::beta(a + 1.0, b + 1.0);
    rep.parameters["short_limit"] = short_limit;
    rep.parameters["long_limit"] = long_limit;

    std::vector<double> short_errs, long_errs;
    for (double eps : eps_values)
        short_errs.push_back(
            std::fabs(std::pow(eps, -(b + 1.0)) * wfbm_incr_var(a, b, t, t + eps) -
                      short_limit));
    for (double T : horizons)
        long_errs.push_back(
            std::fabs(std::pow(T, -(1.0 + a + b)) * wfbm_incr_var(a, b, t, t + T) -
                      long_limit));

    const double ds = short_errs.back() / std::fabs(short_limit);
    const double dl = long_errs.back() / std::fabs(long_limit);
    rep.defect = std::max(ds, dl);
    rep.threshold = 1e-2;
    rep.finish();
    if (!decreasing_with_floor(short_errs, 1e-10 * std::fabs(short_limit)) ||
        !decreasing_with_floor(long_errs, 1e-10 * std::fabs(long_limit))) {
        rep.pass = false;
        rep.defect = std::max(rep.defect, 2.0 * rep.threshold);
        rep.note = "error sequences not decreasing";
    }
    return rep;
}

VerificationReport check_quadratic_variation(const FamilySpec& spec,
                                             const std::vector<int>& n_values,
                                             const McParams& mc) {
    VerificationReport rep;
    rep.check = "quadratic_variation";
    rep.spec_label = spec.label();
    rep.threshold = 0.0;
    rep.defect = 0.0;

    std::vector<double> sums;
    double bracket_defect = 0.0;
    for (int n : n_values) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double ev =
                incr_var(spec, static_cast<double>(k) / n, static_cast<double>(k + 1) / n);
            sum += ev;
            if (spec.family == Family::Eta && k >= 55) {
                // per-term bracket of the ordered-triangle integral (= ev/2)
                const double lo = std::log(static_cast<double>(k)) / (2.0 * n * n);
                const double hi = std::log(static_cast<double>(k)) / (1.0 * n * n);
                const double half = 0.5 * ev;
                if (half < lo) bracket_defect = std::max(bracket_defect, (lo - half) / lo);
                if (half > hi) bracket_defect = std::max(bracket_defect, (half - hi) / hi);
            }
        }
        sums.push_back(sum);
        rep.parameters["sum_n" + std::to_string(n)] = sum;
    }

    bool expect_decreasing = true;
    switch (spec.family) {
        case Family::Wfbm: expect_decreasing = spec.b > 0.0; break;
        case Family::Sfbm: expect_decreasing = spec.h > 1.0; break;
        default: break;
    }
    bool direction_ok = true;
    for (std::size_t i = 1; i < sums.size(); ++i) {
        if (expect_decreasing && !(sums[i] < sums[i - 1])) direction_ok = false;
        if (!expect_decreasing && spec.family == Family::Wfbm && spec.b < 0.0 &&
            !(sums[i] > sums[i - 1]))
            direction_ok = false;
    }
    if (!direction_ok) {
        rep.defect = std::max(rep.defect, 1.0);
        rep.note = "sum sequence direction unexpected";
    }

    if (spec.family == Family::Eta) {
        rep.defect = std::max(rep.defect, bracket_defect);
        if (!(sums.back() < 0.01)) {
            rep.defect = std::max(rep.defect, sums.back());
            rep.note = "final quadratic variation sum too large";
        }
        // sum of the per-term upper brackets, again on the half quantity
        const int n_last = n_values.back();
        const double shape =
            (std::log(static_cast<double>(n_last)) * (n_last - 1) + n_last) /
            (static_cast<double>(n_last) * n_last);
        if (!(0.5 * sums.back() < shape)) {
            rep.defect = std::max(rep.defect, 1.0);
            rep.note = "half-sum exceeds bracket envelope";
        }
    }

    if (mc.enabled && !n_values.empty()) {
        const int n = n_values.front();
        std::vector<double> pts(n + 1);
        for (int i = 0; i <= n; ++i) pts[i] = static_cast<double>(i) / n;
        const PathEnsemble e = sample(spec, TimeGrid{pts}, mc.n_paths, mc.seed);
        double mean = 0.0, m2 = 0.0;
        for (Eigen::Index p = 0; p < e.paths.rows(); ++p) {
            double qv = 0.0;
            for (int i = 0; i < n; ++i) {
                const double d = e.paths(p, i + 1) - e.paths(p, i);
                qv += d * d;
            }
            const double delta = qv - mean;
            mean += delta / static_cast<double>(p + 1);
            m2 += delta * (qv - mean);
        }
        const double sd = std::sqrt(m2 / std::max<Eigen::Index>(1, e.paths.rows() - 1));
        const double se = sd / std::sqrt(static_cast<double>(e.paths.rows()));
        rep.samples = McMeta{static_cast<long long>(mc.n_paths), mc.seed, se};
        if (std::fabs(mean - sums.front()) > 5.0 * se + 1e-12) {
            rep.defect = std::max(rep.defect, 1.0);
            rep.note = "empirical quadratic variation disagrees";
        }
    }

    rep.threshold = 0.0;
    rep.finish();
    return rep;
}

VerificationReport check_variation_growth(const std::vector<int>& n_values) {
    VerificationReport rep;
    rep.check = "variation_growth";
    rep.spec_label = "eta";
    const FamilySpec spec = FamilySpec::eta();
    const double c_abs = std::sqrt(2.0 / M_PI); // E|Z| = sd sqrt(2/pi)

    std::vector<double> len, env;
    for (int n : n_values) {
        double L = 0.0;
        for (int k = 0; k < n; ++k)
            L += c_abs * std::sqrt(incr_var(spec, static_cast<double>(k) / n,
                                            static_cast<double>(k + 1) / n));
        double E = 0.0;
        for (int k = 1; k < n; ++k) E += std::sqrt(std::log(static_cast<double>(k)));
        E /= static_cast<double>(n);
        len.push_back(L);
        env.push_back(E);
        rep.parameters["L_n" + std::to_string(n)] = L;
        rep.parameters["env_n" + std::to_string(n)] = E;
    }
    rep.defect = 0.0;
    for (std::size_t i = 1; i < len.size(); ++i)
        if (!(len[i] > len[i - 1])) rep.defect = 1.0;
    double min_ratio = HUGE_VAL;
    for (std::size_t i = 0; i < len.size(); ++i)
        if (env[i] > 0.0) min_ratio = std::min(min_ratio, len[i] / env[i]);
    rep.parameters["min_ratio"] = min_ratio;
    if (!(min_ratio >= 0.5)) rep.defect = std::max(rep.defect, 1.0);
    rep.threshold = 0.0;
    rep.finish();
    return rep;
}

VerificationReport check_markov_defect(const FamilySpec& spec, double s, double t,
                                       double u) {
    if (!(0.0 < s && s < t && t < u))
        throw DomainError("check_markov_defect: requires 0 < s < t < u");
    VerificationReport rep;
    rep.check = "markov_defect";
    rep.spec_label = spec.label();
    rep.parameters = {{"s", s}, {"t", t}, {"u", u}};
    const double p1 = cov(spec, s, u) * cov(spec, t, t);
    const double p2 = cov(spec, s, t) * cov(spec, t, u);
    const double rel = std::fabs(p1 - p2) / std::max({std::fabs(p1), std::fabs(p2), kTiny});
    const bool triangular = (spec.family == Family::Wfbm && spec.b == 0.0) ||
                            (spec.family == Family::Fbm && spec.hurst == 0.5);
    rep.parameters["relative_defect"] = rel;
    if (triangular) {
        rep.defect = rel;
        rep.threshold = 1e-10;
    } else {
        // non-Markov: the defect must be decisively positive
        rep.defect = rel > 1e-3 ? 0.0 : 1.0;
        rep.threshold = 0.0;
        rep.note = "expect positive triangular defect";
    }
    rep.finish();
    return rep;
}

VerificationReport check_incr_var_bounds(const FamilySpec& spec) {
    VerificationReport rep;
    rep.check = "incr_var_bounds";
    rep.spec_label = spec.label();
    rep.threshold = 0.0;
    rep.defect = 0.0;

    auto band = [&](double exponent, double lo_time, double hi_time, const char* tag) {
        double rmin = HUGE_VAL, rmax = 0.0;
        for (int i = 0; i < 12; ++i) {
            const double s = lo_time + (hi_time - lo_time) * i / 12.0;
            for (int j = 1; j <= 8; ++j) {
                const double gap = (hi_time - lo_time) * std::pow(2.0, -j);
                const double t = s + gap;
                if (t > hi_time) continue;
                const double ratio = incr_var(spec, s, t) / std::pow(gap, exponent);
                rmin = std::min(rmin, ratio);
                rmax = std::max(rmax, ratio);
            }
        }
        rep.parameters[std::string(tag) + "_min"] = rmin;
        rep.parameters[std::string(tag) + "_max"] = rmax;
        if (!(rmin > 0.0) || !std::isfinite(rmax)) rep.defect = 1.0;
        return std::pair{rmin, rmax};
    };

    switch (spec.family) {
        case Family::Wfbm: {
            const double a = spec.a, b = spec.b;
            if (a == 0.0) {
                const auto [rmin, rmax] = band(b + 1.0, 0.0, 5.0, "exact");
                const double c = 2.0 / (b + 1.0);
                rep.defect = std::max(std::fabs(rmin - c), std::fabs(rmax - c)) / c;
                rep.threshold = 1e-12;
            } else if (a > 0.0) {
                band(b + 1.0, 0.1, 5.0, "upper_b1");
            } else {
                if (1.0 + a + b > 0.0) band(1.0 + a + b, 0.0, 5.0, "upper_sum");
                band(b + 1.0, 0.0, 5.0, "lower_b1"); // a <= 0, bounded times
            }
            break;
        }
        case Family::Sfbm:
            band(spec.h, 0.0, 5.0, "h_band");
            break;
        case Family::Nsfbm:
            band(2.0, 0.25, 5.0, "sq_band");
            band(spec.h, 0.0, 5.0, "h_lower");
            break;
        default:
            throw DomainError("check_incr_var_bounds: unsupported family");
    }
    rep.finish();
    return rep;
}

VerificationReport check_empirical_cov(const PathEnsemble& e, double tol_sigmas) {
    VerificationReport rep;
    rep.check = "empirical_cov";
    rep.spec_label = e.spec.label();
    rep.parameters = {{"n", static_cast<double>(e.paths.rows())},
                      {"tol_sigmas", tol_sigmas}};
    const std::size_t m = e.grid.size();
    const Eigen::MatrixXd emp = empirical_cov(e);
    const long long n = e.paths.rows();

    int total = 0, within = 0, excluded = 0;
    double mean_se = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double c = cov(e.spec, e.grid[i], e.grid[j]);
            const double var_prod = cov(e.spec, e.grid[i], e.grid[i]) *
                                        cov(e.spec, e.grid[j], e.grid[j]) +
                                    c * c;
            if (var_prod <= 0.0) {
                ++excluded;
                continue;
            }
            const double se = std::sqrt(var_prod / std::max<long long>(n, 1));
            mean_se += se;
            ++total;
            if (std::fabs(emp(i, j) - c) <= tol_sigmas * se) ++within;
        }
    rep.samples = McMeta{n, e.seed, total > 0 ? mean_se / total : 0.0};
    rep.parameters["pairs"] = total;
    rep.parameters["excluded"] = excluded;
    if (n < 2) {
        rep.note = "underpowered: fewer than 2 paths";
        rep.defect = 0.0;
        rep.threshold = 0.0;
        rep.finish();
        return rep;
    }
    const double frac = total > 0 ? static_cast<double>(within) / total : 1.0;
    rep.parameters["fraction_within"] = frac;
    rep.defect = std::max(0.0, 0.95 - frac);
    rep.threshold = 0.0;
    rep.finish();
    return rep;
}

VerificationReport check_distributional_match(const PathEnsemble& a,
                                              const PathEnsemble& b, double tol_sigmas,
                                              double bias_allowance) {
    if (a.grid.size() != b.grid.size())
        throw DomainError("check_distributional_match: grids differ");
    VerificationReport rep;
    rep.check = "distributional_match";
    rep.spec_label = a.spec.label() + "|" + method_name(b.method);
    rep.parameters = {{"n_a", static_cast<double>(a.paths.rows())},
                      {"n_b", static_cast<double>(b.paths.rows())},
                      {"tol_sigmas", tol_sigmas},
                      {"bias_allowance", bias_allowance}};
    const std::size_t m = a.grid.size();
    const Eigen::MatrixXd ca = empirical_cov(a), cb = empirical_cov(b);

    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            scale = std::max(scale, std::fabs(cov(a.spec, a.grid[i], a.grid[j])));

    int total = 0, within = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double c = cov(a.spec, a.grid[i], a.grid[j]);
            const double var_prod = cov(a.spec, a.grid[i], a.grid[i]) *
                                        cov(a.spec, a.grid[j], a.grid[j]) +
                                    c * c;
            const double se2 = var_prod / std::max<Eigen::Index>(a.paths.rows(), 1) +
                               var_prod / std::max<Eigen::Index>(b.paths.rows(), 1);
            const double budget =
                tol_sigmas * std::sqrt(se2) + bias_allowance * scale;
            ++total;
            if (std::fabs(ca(i, j) - cb(i, j)) <= budget) ++within;
        }
    const double frac = total > 0 ? static_cast<double>(within) / total : 1.0;
    rep.parameters["fraction_within"] = frac;
    rep.samples = McMeta{static_cast<long long>(a.paths.rows()), a.seed, 0.0};
    rep.defect = std::max(0.0, 0.95 - frac);
    rep.threshold = 0.0;
    rep.finish();
    return rep;
}

VerificationReport check_incr_sign_law(double a, double b, int n_quadruples,
                                       std::uint64_t seed) {
    VerificationReport rep;
    rep.check = "incr_sign_law";
    rep.spec_label = FamilySpec::wfbm(a, b).label();
    rep.parameters = {{"a", a}, {"b", b}, {"n", static_cast<double>(n_quadruples)}};
    int violations = 0;
    int made = 0;
    for (int i = 0; made < n_quadruples && i < 10 * n_quadruples; ++i) {
        double pts[4];
        for (int k = 0; k < 4; ++k)
            pts[k] = 0.1 + 9.9 * uniform_open(seed, i, k);
        std::sort(pts, pts + 4);
        if (pts[1] - pts[0] < 1e-3 || pts[3] - pts[2] < 1e-3 || pts[2] - pts[1] < 0.0)
            continue;
        ++made;
        const double v = wfbm_incr_cov(a, b, {pts[0], pts[1], pts[2], pts[3]});
        if (b == 0.0) {
            if (v != 0.0) ++violations;
        } else if (b > 0.0) {
            if (!(v > 0.0)) ++violations;
        } else {
            if (!(v < 0.0)) ++violations;
        }
    }
    rep.parameters["violations"] = violations;
    rep.defect = violations;
    rep.threshold = 0.0;
    rep.finish();
    return rep;
}

VerificationReport check_representation_identity(double h, double s, double t) {
    VerificationReport rep;
    rep.check = "representation_identity";
    rep.spec_label = FamilySpec::nsfbm(h).label();
    rep.parameters = {{"h", h}, {"s", s}, {"t", t}};
    if (s > t) std::swap(s, t);
    // inner w-integral of K0 over [0,t] in closed form (u <= s <= t)
    auto inner = [&](double u) {
        return (std::pow(u + t, h - 1.0) - 2.0 * std::pow(u, h - 1.0) -
                std::pow(t - u, h - 1.0)) / (h - 1.0);
    };
    const double tol = 1e-10 * (1.0 + std::pow(t, h));
    const double outer = adaptive_quad(inner, 0.0, s, tol).value;
    const double viaK0 = 0.5 * h * (h - 1.0) * (h - 2.0) * outer;
    const double direct = cov(FamilySpec::nsfbm(h), s, t);
    rep.parameters["via_k0"] = viaK0;
    rep.parameters["direct"] = direct;
    rep.defect = rel_err(viaK0, direct);
    rep.threshold = 1e-6;
    rep.finish();
    return rep;
}

} // namespace lmgp

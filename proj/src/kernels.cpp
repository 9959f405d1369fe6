#include "kernels.hpp"
#include "errors.hpp"
#include "specfun.hpp"

#include <algorithm>
#include <cmath>

namespace lmgp {

using specfun::adaptive_quad;
using specfun::beta;
using specfun::EndpointHint;
using specfun::gauss_legendre;
using specfun::reg_inc_beta;

IncrementQuadruple::IncrementQuadruple(double r, double v, double s, double t)
    : r(r), v(v), s(s), t(t) {
    if (!(0.0 <= r && r < v && v <= s && s < t))
        throw DomainError("increment quadruple: requires 0 <= r < v <= s < t");
}

namespace {

inline double x2logx(double x) { return x == 0.0 ? 0.0 : x * x * std::log(x); }

double wfbm_cov_closed(double a, double b, double s, double t) {
    // s <= t assumed, s > 0
    const double p = a + 1.0, q = b + 1.0, sigma = a + b + 1.0;
    const double B = beta(p, q);
    return B * (std::pow(t, sigma) * reg_inc_beta(s / t, p, q) + std::pow(s, sigma));
}

double sfbm_kernel(double h, double s, double t) {
    if (h == 4.0) return 12.0 * s * s * t * t;
    return (2.0 - h) * (std::pow(s, h) + std::pow(t, h) -
                        0.5 * (std::pow(s + t, h) +
                               (s == t ? 0.0 : std::pow(std::fabs(s - t), h))));
}

} // namespace

double cov(const FamilySpec& spec, double s, double t) {
    if (s < 0.0 || t < 0.0) throw DomainError("cov: times must be nonnegative");
    if (s == 0.0 || t == 0.0) return 0.0;
    if (s > t) std::swap(s, t);
    switch (spec.family) {
        case Family::Wfbm:
            return wfbm_cov_closed(spec.a, spec.b, s, t);
        case Family::Sfbm:
        case Family::Nsfbm:
            return sfbm_kernel(spec.h, s, t);
        case Family::OddBfbm:
            return std::pow(s + t, spec.h - 2.0) -
                   (s == t ? 0.0 : std::pow(t - s, spec.h - 2.0));
        case Family::Eta:
            return -(x2logx(s) + x2logx(t) -
                     0.5 * (x2logx(s + t) + x2logx(t - s)));
        case Family::Fbm: {
            const double e = 2.0 * spec.hurst;
            return 0.5 * (std::pow(s, e) + std::pow(t, e) -
                          (s == t ? 0.0 : std::pow(t - s, e)));
        }
    }
    return 0.0;
}

double fbm_cov_two_sided(double hurst, double s, double t) {
    const double e = 2.0 * hurst;
    const double as = std::fabs(s), at = std::fabs(t), ad = std::fabs(s - t);
    return 0.5 * ((as == 0.0 ? 0.0 : std::pow(as, e)) +
                  (at == 0.0 ? 0.0 : std::pow(at, e)) -
                  (ad == 0.0 ? 0.0 : std::pow(ad, e)));
}

double wfbm_cov_quad(double a, double b, double s, double t, double tol) {
    if (!(a > -1.0) || !(b > -1.0 && b <= 1.0) || !(std::fabs(b) <= 1.0 + a))
        throw DomainError("wfbm_cov_quad: parameters outside admissible range");
    if (s < 0.0 || t < 0.0) throw DomainError("wfbm_cov_quad: negative time");
    if (s == 0.0 || t == 0.0) return 0.0;
    if (s > t) std::swap(s, t);

    // magnitude estimate of the two pieces, not of t^sigma (s may be << t)
    const double scale =
        std::pow(s, a + 1.0) * std::pow(t, b) + std::pow(s, a + b + 1.0);
    const double abs_tol = 0.5 * tol * scale;

    // int_0^s u^a (s-u)^b du : singular at both ends
    auto f2 = [&](double u) { return std::pow(u, a) * std::pow(s - u, b); };
    const double i2 = adaptive_quad(f2, 0.0, s, abs_tol, EndpointHint{a, b}).value;
    if (s == t) return 2.0 * i2;

    // int_0^s u^a (t-u)^b du : singular at 0 only
    auto f1 = [&](double u) { return std::pow(u, a) * std::pow(t - u, b); };
    const double i1 = adaptive_quad(f1, 0.0, s, abs_tol, EndpointHint{a, 0.0}).value;
    return i1 + i2;
}

double wfbm_cov_double(double a, double b, double s, double t, double tol) {
    if (!(b > 0.0 && b <= 1.0))
        throw DomainError("wfbm_cov_double: requires 0 < b <= 1");
    if (!(a > -1.0) || !(std::fabs(b) <= 1.0 + a))
        throw DomainError("wfbm_cov_double: parameters outside admissible range");
    if (s < 0.0 || t < 0.0) throw DomainError("wfbm_cov_double: negative time");
    if (s == 0.0 || t == 0.0) return 0.0;
    if (s > t) std::swap(s, t);

    // Inner r-integral of (u^r)^a |u-r|^{b-1} over [0,t] in closed form
    // (u <= s <= t throughout): u^{a+b} B(a+1,b) + u^a (t-u)^b / b. The two
    // terms carry different endpoint powers, so they are integrated
    // separately with their own hints.
    const double Bab = beta(a + 1.0, b);
    const double scale =
        std::pow(s, a + 1.0) * std::pow(t, b) + std::pow(s, a + b + 1.0);
    const double abs_tol = 0.5 * tol * scale;
    auto g1 = [&](double u) { return std::pow(u, a + b); };
    auto g2 = [&](double u) { return std::pow(u, a) * std::pow(t - u, b); };
    const double i1 =
        adaptive_quad(g1, 0.0, s, abs_tol / std::max(1.0, b * Bab),
                      EndpointHint{std::min(a + b, 0.0), 0.0})
            .value;
    const double i2 =
        adaptive_quad(g2, 0.0, s, abs_tol, EndpointHint{a, s == t ? b : 0.0}).value;
    return b * Bab * i1 + i2;
}

double nsfbm_cov_triple(double h, double s, double t, double tol) {
    if (!(h > 2.0 && h < 4.0))
        throw DomainError("nsfbm_cov_triple: requires 2 < h < 4");
    if (s < 0.0 || t < 0.0) throw DomainError("nsfbm_cov_triple: negative time");
    if (s == 0.0 || t == 0.0) return 0.0;
    if (s > t) std::swap(s, t);

    // Innermost u' integral in closed form; u mapped to [0,1]; the pure-power
    // piece ((s-r)x)^{h-2} integrates to (s-r)^{h-2}/(h-1).
    const auto& gl = gauss_legendre(32);
    auto outer = [&](double r) {
        const double w = s - r;
        auto phi = [&](double x) { return std::pow(t - r + w * x, h - 2.0); };
        const double smooth = gl.apply(phi);
        return w * (smooth - std::pow(w, h - 2.0) / (h - 1.0));
    };
    const double scale = 1.0 + std::pow(t, h);
    const double val = adaptive_quad(outer, 0.0, s, 0.01 * tol * scale).value;
    return h * (h - 1.0) * (h - 2.0) * val;
}

double eta_cov_triple(double s, double t, double tol) {
    if (!(s > 0.0) || !(t > 0.0))
        throw DomainError("eta_cov_triple: requires s, t > 0");
    if (s > t) std::swap(s, t);

    // Inner u' integral is log-closed; the -log(x) part of the u integral is
    // subtracted exactly (integral 1), the smooth remainder by quadrature.
    const auto& gl = gauss_legendre(32);
    auto outer = [&](double r) {
        const double w = s - r;
        if (w == 0.0) return 0.0;
        auto phi = [&](double x) { return std::log(t - r + w * x); };
        return w * (gl.apply(phi) - std::log(w) + 1.0);
    };
    const double scale = 1.0 + t * t * (1.0 + std::fabs(std::log(t)));
    return 2.0 * adaptive_quad(outer, 0.0, s, 0.01 * tol * scale).value;
}

double wfbm_incr_var(double a, double b, double s, double t) {
    if (s > t) throw DomainError("wfbm_incr_var: requires s <= t");
    if (s < 0.0) throw DomainError("wfbm_incr_var: negative time");
    if (s == t) return 0.0;
    if (b == 0.0) return 2.0 * (std::pow(t, a + 1.0) - std::pow(s, a + 1.0)) / (a + 1.0);
    const double p = a + 1.0, q = b + 1.0, sigma = a + b + 1.0;
    // 2 int_s^t u^a (t-u)^b du; complement form keeps precision as s -> t.
    return 2.0 * std::pow(t, sigma) * beta(p, q) * reg_inc_beta((t - s) / t, q, p);
}

double wfbm_incr_cov(double a, double b, const IncrementQuadruple& quad) {
    if (b == 0.0) return 0.0;
    const double p = a + 1.0, q = b + 1.0;
    const double B = beta(p, q);
    auto piece = [&](double T) {
        return std::pow(T, a + b + 1.0) * B *
               (reg_inc_beta(quad.v / T, p, q) - reg_inc_beta(quad.r / T, p, q));
    };
    return piece(quad.t) - piece(quad.s);
}

double eta_incr_var(double s, double t, double tol) {
    if (s > t) throw DomainError("eta_incr_var: requires s <= t");
    if (s < 0.0) throw DomainError("eta_incr_var: negative time");
    if (s == t) return 0.0;
    const double d = t - s;
    auto xlogx = [](double x) { return x == 0.0 ? 0.0 : x * std::log(x); };
    // Ordered inner integral in closed form; factor 2 restores the symmetric
    // square (0,d)^2, which is what matches the covariance combination.
    auto g = [&](double u) {
        return xlogx(2.0 * s + 2.0 * u) - xlogx(2.0 * s + u) - xlogx(u);
    };
    // result magnitude ~ d^2 (log((2s+2d)/d) + 3/2)
    const double scale =
        d * d * (3.0 + std::fabs(std::log((2.0 * s + 2.0 * d) / d)));
    return 2.0 * adaptive_quad(g, 0.0, d, 0.1 * tol * scale).value;
}

double incr_var(const FamilySpec& spec, double s, double t) {
    if (s > t) std::swap(s, t);
    if (s < 0.0) throw DomainError("incr_var: negative time");
    if (s == t) return 0.0;
    switch (spec.family) {
        case Family::Wfbm:
            return wfbm_incr_var(spec.a, spec.b, s, t);
        case Family::Sfbm:
        case Family::Nsfbm: {
            const double h = spec.h;
            return (2.0 - h) * (std::pow(t - s, h) + std::pow(s + t, h) -
                                std::pow(2.0, h - 1.0) * (std::pow(s, h) + std::pow(t, h)));
        }
        case Family::OddBfbm:
        case Family::Eta:
            return cov(spec, t, t) + cov(spec, s, s) - 2.0 * cov(spec, s, t);
        case Family::Fbm:
            return std::pow(t - s, 2.0 * spec.hurst);
    }
    return 0.0;
}

} // namespace lmgp

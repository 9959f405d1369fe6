#include "specfun.hpp"
#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <mutex>

namespace lmgp::specfun {

double ln_beta(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw DomainError("ln_beta: arguments must be positive");
    return std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q);
}

double beta(double p, double q) { return std::exp(ln_beta(p, q)); }

namespace {

// Modified Lentz continued fraction for I_x(p,q), x < (p+1)/(p+q+2).
double beta_cont_frac(double x, double p, double q) {
    constexpr int max_iter = 512;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min() / eps;

    const double qab = p + q;
    const double qap = p + 1.0;
    const double qam = p - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (q - m) * x / ((qam + m2) * (p + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 4.0 * eps) return h;
    }
    throw NumericalError("reg_inc_beta: continued fraction did not converge");
}

} // namespace

double reg_inc_beta(double x, double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw DomainError("reg_inc_beta: p, q must be positive");
    if (x < 0.0 || x > 1.0)
        throw DomainError("reg_inc_beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x > (p + 1.0) / (p + q + 2.0))
        return 1.0 - reg_inc_beta(1.0 - x, q, p);
    const double front =
        std::exp(p * std::log(x) + q * std::log1p(-x) - ln_beta(p, q));
    return front * beta_cont_frac(x, p, q) / p;
}

double QuadRule::apply(const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
}

QuadRule gauss_jacobi(int n, double alpha_exp, double beta_exp) {
    if (n < 1) throw DomainError("gauss_jacobi: n must be >= 1");
    if (!(alpha_exp > -1.0) || !(beta_exp > -1.0))
        throw DomainError("gauss_jacobi: exponents must exceed -1");

    const double al = alpha_exp, be = beta_exp;
    // Three-term recurrence coefficients of Jacobi polynomials on [-1,1]
    // with weight (1-x)^al (1+x)^be; Golub-Welsch on the tridiagonal matrix.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    auto diag_a = [&](int k) -> double {
        if (k == 0) return (be - al) / (al + be + 2.0);
        const double s = 2.0 * k + al + be;
        return (be * be - al * al) / (s * (s + 2.0));
    };
    auto offdiag_b = [&](int k) -> double {
        if (k == 1) {
            // (k+al+be)/(2k+al+be-1) cancels at k=1
            return 4.0 * (1.0 + al) * (1.0 + be) /
                   ((al + be + 2.0) * (al + be + 2.0) * (al + be + 3.0));
        }
        const double s = 2.0 * k + al + be;
        return 4.0 * k * (k + al) * (k + be) * (k + al + be) /
               (s * s * (s + 1.0) * (s - 1.0));
    };
    for (int k = 0; k < n; ++k) {
        J(k, k) = diag_a(k);
        if (k >= 1) {
            const double b = std::sqrt(offdiag_b(k));
            J(k, k - 1) = b;
            J(k - 1, k) = b;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw NumericalError("gauss_jacobi: eigen decomposition failed");

    const double mu0 = std::exp((al + be + 1.0) * std::log(2.0) + ln_beta(al + 1.0, be + 1.0));
    QuadRule rule;
    rule.alpha_exp = al;
    rule.beta_exp = be;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.nodes[i] = 0.5 * (x + 1.0);                               // map to (0,1)
        rule.weights[i] = mu0 * v0 * v0 * std::pow(2.0, -(al + be + 1.0));
    }
    return rule;
}

const QuadRule& gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, gauss_jacobi(n, 0.0, 0.0)).first;
    return it->second;
}

namespace {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK qk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double kronrod;
    double err;
    double resabs; // int of |f|, for the attainable-accuracy floor
    int depth;
    bool frozen; // depth-capped or at the roundoff floor
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    double resabs = kWgk[7] * std::fabs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    }
    for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    Panel p{a, b, resk * h, std::fabs((resk - resg) * h), resabs * h, depth, false};
    const double floor =
        50.0 * std::numeric_limits<double>::epsilon() * p.resabs;
    if (p.depth >= 60 || p.err <= floor) p.frozen = true;
    return p;
}

// Globally adaptive bisection: always split the open panel with the largest
// error estimate. Local tolerances would force full-tree refinement near
// algebraic endpoint singularities, so the budget is on the error sum.
QuadResult adapt_core(const std::function<double(double)>& f, double a, double b,
                      double tol) {
    QuadResult out;
    if (a == b) return out;

    auto worse = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> open(worse);
    double frozen_err = 0.0, frozen_val = 0.0, open_err = 0.0, total_resabs = 0.0;
    auto push = [&](Panel&& p) {
        if (p.frozen) {
            frozen_err += p.err;
            frozen_val += p.kronrod;
            total_resabs += p.resabs;
        } else {
            open_err += p.err;
            open.push(std::move(p));
        }
    };
    push(gk15(f, a, b, 0));

    constexpr std::size_t max_splits = 1u << 14;
    for (std::size_t splits = 0;
         !open.empty() && frozen_err + open_err > tol && splits < max_splits;
         ++splits) {
        const Panel p = open.top();
        open.pop();
        open_err -= p.err;
        const double m = 0.5 * (p.a + p.b);
        push(gk15(f, p.a, m, p.depth + 1));
        push(gk15(f, m, p.b, p.depth + 1));
    }

    out.value = frozen_val;
    const double raw_err = frozen_err + open_err;
    while (!open.empty()) {
        out.value += open.top().kronrod;
        total_resabs += open.top().resabs;
        open.pop();
    }
    // accumulated-summation roundoff floor on the reported estimate
    out.error_estimate = std::max(
        raw_err, 100.0 * std::numeric_limits<double>::epsilon() * total_resabs);
    if (raw_err > tol)
        throw ToleranceError("adaptive_quad: tolerance not reached", out.value,
                             out.error_estimate);
    return out;
}

// Substitution w = (distance to the singular endpoint)^(p+1), which maps
// f ~ (dist)^p to a bounded integrand q * phi with phi = f * dist^{-p}.
// The power is divided out against the same floating-point distance that f
// sees internally, so the singular factor cancels exactly; the sub-ulp tail
// where the endpoint is no longer representable is integrated with phi frozen
// at its innermost safe value.
QuadResult integrate_power_end(const std::function<double(double)>& f, double a,
                               double b, double p, bool left_end, double tol) {
    const double endpoint = left_end ? a : b;
    const double q = 1.0 / (p + 1.0);
    const double wmax = std::pow(b - a, p + 1.0);
    const double dist_cut = 16.0 * std::numeric_limits<double>::epsilon() *
                            (std::fabs(endpoint) + (b - a));
    const double w_cut = std::min(std::pow(dist_cut, p + 1.0), 0.5 * wmax);

    auto phi_at = [&](double w) {
        const double u = left_end ? a + std::pow(w, q) : b - std::pow(w, q);
        const double d = left_end ? u - a : b - u; // f's own view of the distance
        if (!(d > 0.0)) return 0.0;
        return f(u) * std::pow(d, -p);
    };
    const double phi_edge = phi_at(w_cut);
    const double tail = q * phi_edge * w_cut;

    auto g = [&](double w) { return q * phi_at(w); };
    QuadResult r = adapt_core(g, w_cut, wmax, tol);
    r.value += tail;
    r.error_estimate +=
        std::numeric_limits<double>::epsilon() * std::fabs(tail);
    return r;
}

} // namespace

QuadResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                         double tol, EndpointHint hint) {
    if (!(a < b)) {
        if (a == b) return {};
        throw DomainError("adaptive_quad: requires a <= b");
    }
    if (hint.left_exponent <= -1.0 || hint.right_exponent <= -1.0)
        throw DomainError("adaptive_quad: endpoint exponents must exceed -1");
    tol = std::max(tol, 1e-14);

    // only exponents in (-1, 0) are singular; nonnegative ones need no
    // substitution (the Jacobian of the transform would itself be singular)
    const bool left = hint.left_exponent < 0.0;
    const bool right = hint.right_exponent < 0.0;
    if (!left && !right) return adapt_core(f, a, b, tol);
    if (left && !right)
        return integrate_power_end(f, a, b, hint.left_exponent, true, tol);
    if (!left && right)
        return integrate_power_end(f, a, b, hint.right_exponent, false, tol);

    const double m = 0.5 * (a + b);
    const QuadResult l = integrate_power_end(f, a, m, hint.left_exponent, true, 0.5 * tol);
    const QuadResult r =
        integrate_power_end(f, m, b, hint.right_exponent, false, 0.5 * tol);
    return {l.value + r.value, l.error_estimate + r.error_estimate};
}

} // namespace lmgp::specfun

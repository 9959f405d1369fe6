#include "lmgp/lmgp.h"

#include "errors.hpp"
#include "family.hpp"
#include "kernels.hpp"
#include "pd_analysis.hpp"
#include "report_json.hpp"
#include "sampling.hpp"
#include "verify.hpp"

#include <cstring>
#include <new>
#include <string>

struct lmgp_spec {
    lmgp::FamilySpec spec;
};

namespace {

thread_local std::string g_last_error;

lmgp_status fail(lmgp_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
lmgp_status guarded(Fn&& fn) {
    try {
        fn();
        return LMGP_OK;
    } catch (const lmgp::ToleranceError& e) {
        return fail(LMGP_ERR_TOLERANCE, e.what());
    } catch (const lmgp::DomainError& e) {
        return fail(LMGP_ERR_DOMAIN, e.what());
    } catch (const lmgp::NumericalError& e) {
        return fail(LMGP_ERR_NUMERICAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LMGP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LMGP_ERR_INTERNAL, e.what());
    }
}

lmgp::Family to_family(lmgp_family f) {
    switch (f) {
        case LMGP_FAMILY_WFBM: return lmgp::Family::Wfbm;
        case LMGP_FAMILY_SFBM: return lmgp::Family::Sfbm;
        case LMGP_FAMILY_NSFBM: return lmgp::Family::Nsfbm;
        case LMGP_FAMILY_ODD_BFBM: return lmgp::Family::OddBfbm;
        case LMGP_FAMILY_ETA: return lmgp::Family::Eta;
        case LMGP_FAMILY_FBM: return lmgp::Family::Fbm;
    }
    throw lmgp::DomainError("unknown family id");
}

lmgp::FamilySpec make_spec(lmgp_family family, double p1, double p2) {
    switch (to_family(family)) {
        case lmgp::Family::Wfbm: return lmgp::FamilySpec::wfbm(p1, p2);
        case lmgp::Family::Sfbm: return lmgp::FamilySpec::sfbm(p1);
        case lmgp::Family::Nsfbm: return lmgp::FamilySpec::nsfbm(p1);
        case lmgp::Family::OddBfbm: return lmgp::FamilySpec::odd_bfbm(p1);
        case lmgp::Family::Eta: return lmgp::FamilySpec::eta();
        case lmgp::Family::Fbm: return lmgp::FamilySpec::fbm(p1);
    }
    throw lmgp::DomainError("unknown family id");
}

} // namespace

extern "C" {

const char* lmgp_last_error(void) { return g_last_error.c_str(); }

lmgp_status lmgp_spec_create(lmgp_family family, double p1, double p2,
                             lmgp_spec** out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    *out = nullptr;
    return guarded([&] { *out = new lmgp_spec{make_spec(family, p1, p2)}; });
}

void lmgp_spec_destroy(lmgp_spec* spec) { delete spec; }

lmgp_status lmgp_spec_self_similarity(const lmgp_spec* spec, double* out) {
    if (!spec || !out) return fail(LMGP_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = spec->spec.self_similarity_index(); });
}

lmgp_status lmgp_classify(lmgp_family family, double p1, double p2,
                          lmgp_verdict* out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    return guarded([&] {
        const lmgp::ValidityVerdict v = lmgp::classify(to_family(family), p1, p2);
        out->valid = v.valid ? 1 : 0;
        out->regime = static_cast<int>(v.regime);
        out->degeneracy = static_cast<int>(v.degeneracy);
    });
}

lmgp_status lmgp_cov(const lmgp_spec* spec, double s, double t, double* out) {
    if (!spec || !out) return fail(LMGP_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = lmgp::cov(spec->spec, s, t); });
}

lmgp_status lmgp_wfbm_cov_quad(double a, double b, double s, double t, double tol,
                               double* out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    return guarded([&] {
        *out = lmgp::wfbm_cov_quad(a, b, s, t, tol > 0.0 ? tol : 1e-10);
    });
}

lmgp_status lmgp_wfbm_cov_double(double a, double b, double s, double t, double tol,
                                 double* out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    return guarded([&] {
        *out = lmgp::wfbm_cov_double(a, b, s, t, tol > 0.0 ? tol : 1e-10);
    });
}

lmgp_status lmgp_nsfbm_cov_triple(double h, double s, double t, double tol,
                                  double* out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    return guarded([&] {
        *out = lmgp::nsfbm_cov_triple(h, s, t, tol > 0.0 ? tol : 1e-6);
    });
}

lmgp_status lmgp_eta_cov_triple(double s, double t, double tol, double* out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    return guarded([&] { *out = lmgp::eta_cov_triple(s, t, tol > 0.0 ? tol : 1e-8); });
}

lmgp_status lmgp_wfbm_incr_var(double a, double b, double s, double t, double* out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    return guarded([&] { *out = lmgp::wfbm_incr_var(a, b, s, t); });
}

lmgp_status lmgp_wfbm_incr_cov(double a, double b, double r, double v, double s,
                               double t, double* out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    return guarded([&] {
        *out = lmgp::wfbm_incr_cov(a, b, lmgp::IncrementQuadruple(r, v, s, t));
    });
}

lmgp_status lmgp_eta_incr_var(double s, double t, double* out) {
    if (!out) return fail(LMGP_ERR_ARGUMENT, "out is null");
    return guarded([&] { *out = lmgp::eta_incr_var(s, t); });
}

lmgp_status lmgp_gram(const lmgp_spec* spec, const double* times, size_t m,
                      double* out) {
    if (!spec || (!times && m > 0) || (!out && m > 0))
        return fail(LMGP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const lmgp::GramMatrix gm =
            lmgp::gram(spec->spec, lmgp::TimeGrid{{times, times + m}});
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) out[i * m + j] = gm.entries(i, j);
    });
}

lmgp_status lmgp_psd_certificate(const double* matrix, size_t m, double tol,
                                 double* min_eigenvalue, int* pass) {
    if ((!matrix && m > 0) || !min_eigenvalue || !pass)
        return fail(LMGP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        Eigen::MatrixXd a(m, m);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) a(i, j) = matrix[i * m + j];
        const lmgp::PsdCertificate cert =
            lmgp::psd_certificate(a, tol > 0.0 ? tol : 1e-8);
        *min_eigenvalue = cert.min_eigenvalue;
        *pass = cert.pass ? 1 : 0;
    });
}

lmgp_status lmgp_wfbm_witness(double a, double b, double* t, double* defect,
                              int* analytic_bound) {
    if (!t || !defect) return fail(LMGP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const lmgp::ViolationWitness w = lmgp::violation_witness(a, b);
        *t = w.t;
        *defect = w.defect;
        if (analytic_bound) *analytic_bound = w.analytic_bound ? 1 : 0;
    });
}

lmgp_status lmgp_cholesky_jitter(const double* matrix, size_t m, double* lower,
                                 double* applied_jitter) {
    if ((!matrix && m > 0) || (!lower && m > 0) || !applied_jitter)
        return fail(LMGP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        Eigen::MatrixXd a(m, m);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) a(i, j) = matrix[i * m + j];
        const lmgp::CholeskyFactor f = lmgp::cholesky_with_jitter(a);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) lower[i * m + j] = f.lower(i, j);
        *applied_jitter = f.applied_jitter;
    });
}

lmgp_status lmgp_sample(const lmgp_spec* spec, const double* times, size_t m,
                        size_t n, uint64_t seed, lmgp_method method, int substeps,
                        int threads, double* out) {
    if (!spec || (!times && m > 0) || (!out && m * n > 0))
        return fail(LMGP_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        lmgp::SampleMethod mm = lmgp::SampleMethod::DirectCholesky;
        switch (method) {
            case LMGP_METHOD_DIRECT_CHOLESKY: mm = lmgp::SampleMethod::DirectCholesky; break;
            case LMGP_METHOD_EVEN_PART: mm = lmgp::SampleMethod::EvenPart; break;
            case LMGP_METHOD_ODD_PART_INTEGRATED:
                mm = lmgp::SampleMethod::OddPartIntegrated;
                break;
            case LMGP_METHOD_TIME_CHANGED_BM: mm = lmgp::SampleMethod::TimeChangedBm; break;
            default: throw lmgp::DomainError("unknown sampling method");
        }
        const lmgp::PathEnsemble e =
            lmgp::sample_with_method(spec->spec, lmgp::TimeGrid{{times, times + m}}, n,
                                     seed, mm, substeps < 1 ? 1 : substeps, threads);
        for (size_t p = 0; p < n; ++p)
            for (size_t i = 0; i < m; ++i) out[p * m + i] = e.paths(p, i);
    });
}

lmgp_status lmgp_verify(const lmgp_spec* spec, const char* suite, uint64_t seed,
                        size_t n_paths, int substeps, int threads, double tol,
                        char** json_out, int* all_pass) {
    if (!spec || !suite || !json_out || !all_pass)
        return fail(LMGP_ERR_ARGUMENT, "null argument");
    *json_out = nullptr;
    return guarded([&] {
        lmgp::VerifyOptions opt;
        opt.seed = seed;
        if (n_paths > 0) opt.n_paths = n_paths;
        if (substeps > 0) opt.substeps = substeps;
        opt.threads = threads;
        if (tol > 0.0) opt.tol_override = tol;
        const auto reports = lmgp::run_suite(spec->spec, suite, opt);
        const std::string text = lmgp::reports_to_json(reports).dump(2);
        char* buf = static_cast<char*>(::operator new(text.size() + 1));
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *json_out = buf;
        *all_pass = lmgp::all_pass(reports) ? 1 : 0;
    });
}

void lmgp_string_free(char* s) { ::operator delete(s); }

} // extern "C"

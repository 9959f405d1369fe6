/* longmem-gp: self-similar long-memory Gaussian process kernels, positive
 * definiteness analysis, exact path sampling, and property verification.
 *
 * C API over the C++ core: opaque handles, integer status codes, and
 * caller-provided buffers. All functions are thread-safe; a failure message
 * for the calling thread is available through lmgp_last_error().
 */
#ifndef LMGP_H
#define LMGP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define LMGP_VERSION_MAJOR 1
#define LMGP_VERSION_MINOR 0
#define LMGP_VERSION_PATCH 0

typedef enum lmgp_status {
    LMGP_OK = 0,
    LMGP_ERR_ARGUMENT = 1,  /* null pointer / malformed input */
    LMGP_ERR_DOMAIN = 2,    /* parameter outside admissible range */
    LMGP_ERR_TOLERANCE = 3, /* quadrature tolerance not reached */
    LMGP_ERR_NUMERICAL = 4, /* factorization or sweep failure */
    LMGP_ERR_INTERNAL = 5
} lmgp_status;

typedef enum lmgp_family {
    LMGP_FAMILY_WFBM = 0,
    LMGP_FAMILY_SFBM = 1,
    LMGP_FAMILY_NSFBM = 2,
    LMGP_FAMILY_ODD_BFBM = 3,
    LMGP_FAMILY_ETA = 4,
    LMGP_FAMILY_FBM = 5
} lmgp_family;

typedef enum lmgp_method {
    LMGP_METHOD_DIRECT_CHOLESKY = 0,
    LMGP_METHOD_EVEN_PART = 1,
    LMGP_METHOD_ODD_PART_INTEGRATED = 2,
    LMGP_METHOD_TIME_CHANGED_BM = 3
} lmgp_method;

typedef enum lmgp_regime {
    LMGP_REGIME_B_NONPOS = 0,
    LMGP_REGIME_B_POS = 1,
    LMGP_REGIME_SUM_NEG = 2,
    LMGP_REGIME_B_GT_APLUS1 = 3,
    LMGP_REGIME_B_GT1 = 4,
    LMGP_REGIME_H_RANGE = 5,
    LMGP_REGIME_PARAM_RANGE = 6
} lmgp_regime;

typedef enum lmgp_degeneracy {
    LMGP_DEGEN_NONE = 0,
    LMGP_DEGEN_B1 = 1,
    LMGP_DEGEN_ZERO_KERNEL = 2,
    LMGP_DEGEN_RANK_ONE = 3
} lmgp_degeneracy;

typedef struct lmgp_verdict {
    int valid; /* 1 = positive-definite kernel */
    int regime;
    int degeneracy;
} lmgp_verdict;

/* Message for the most recent failing call on this thread. */
const char* lmgp_last_error(void);

/* --- family specs (opaque) ------------------------------------------------ */

typedef struct lmgp_spec lmgp_spec;

/* p1/p2 meaning: wfbm (a, b); sfbm/nsfbm/odd_bfbm (h, unused);
 * eta (unused); fbm (H, unused). */
lmgp_status lmgp_spec_create(lmgp_family family, double p1, double p2,
                             lmgp_spec** out);
void lmgp_spec_destroy(lmgp_spec* spec);
lmgp_status lmgp_spec_self_similarity(const lmgp_spec* spec, double* out);

/* Total classifier on raw parameters; never fails on finite input. */
lmgp_status lmgp_classify(lmgp_family family, double p1, double p2,
                          lmgp_verdict* out);

/* --- kernels ---------------------------------------------------------------- */

lmgp_status lmgp_cov(const lmgp_spec* spec, double s, double t, double* out);
lmgp_status lmgp_wfbm_cov_quad(double a, double b, double s, double t, double tol,
                               double* out);
lmgp_status lmgp_wfbm_cov_double(double a, double b, double s, double t, double tol,
                                 double* out);
lmgp_status lmgp_nsfbm_cov_triple(double h, double s, double t, double tol,
                                  double* out);
lmgp_status lmgp_eta_cov_triple(double s, double t, double tol, double* out);
lmgp_status lmgp_wfbm_incr_var(double a, double b, double s, double t, double* out);
/* requires 0 <= r < v <= s < t */
lmgp_status lmgp_wfbm_incr_cov(double a, double b, double r, double v, double s,
                               double t, double* out);
lmgp_status lmgp_eta_incr_var(double s, double t, double* out);

/* --- Gram matrices and positive definiteness -------------------------------- */

/* gram: out is row-major m*m. */
lmgp_status lmgp_gram(const lmgp_spec* spec, const double* times, size_t m,
                      double* out);
lmgp_status lmgp_psd_certificate(const double* matrix, size_t m, double tol,
                                 double* min_eigenvalue, int* pass);
/* witness for an invalid wfbm pair (a, b > -1): t with
 * Q(1,t)^2 > Q(1,1) Q(t,t); certified > 0 defect. */
lmgp_status lmgp_wfbm_witness(double a, double b, double* t, double* defect,
                              int* analytic_bound);
/* L (row-major, lower triangular) with L L^T = matrix + jitter I. */
lmgp_status lmgp_cholesky_jitter(const double* matrix, size_t m, double* lower,
                                 double* applied_jitter);

/* --- sampling ---------------------------------------------------------------- */

/* out is row-major n*m (path-major); deterministic in
 * (spec, times, n, seed, method, substeps) at any thread count. */
lmgp_status lmgp_sample(const lmgp_spec* spec, const double* times, size_t m,
                        size_t n, uint64_t seed, lmgp_method method, int substeps,
                        int threads, double* out);

/* --- verification ------------------------------------------------------------ */

/* suite: "kernels" | "pd" | "sampling" | "properties" | "full".
 * json_out receives a malloc'd JSON array of reports; free with
 * lmgp_string_free. all_pass set to 1 iff every report passes. */
lmgp_status lmgp_verify(const lmgp_spec* spec, const char* suite, uint64_t seed,
                        size_t n_paths, int substeps, int threads, double tol,
                        char** json_out, int* all_pass);
void lmgp_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LMGP_H */

/*
 * halfline — Dirichlet eigenvalues of half-line Schrodinger operators on
 * [0, X] via the Prufer phase, with eigenvalue-spacing bound verification
 * and amalgamated-norm diagnostics.
 *
 * C89-compatible surface over the C++ core. All objects are opaque handles;
 * every fallible call returns hl_status, and hl_last_error() describes the
 * most recent failure on the calling thread. Strings returned through char**
 * are heap-allocated and must be released with hl_string_free().
 */
#ifndef HALFLINE_H
#define HALFLINE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
    HL_OK = 0,
    HL_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or null handle */
    HL_ERR_DOMAIN = 2,           /* evaluation outside the defined domain */
    HL_ERR_BAD_SPEC = 3,         /* malformed potential spec document */
    HL_ERR_NUMERICAL = 4,        /* tolerance not reachable / no convergence */
    HL_ERR_AMBIGUOUS = 5,        /* result too close to a decision boundary */
    HL_ERR_INTERNAL = 6
} hl_status;

const char* hl_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* hl_last_error(void);

void hl_string_free(char* s);

typedef struct hl_potential hl_potential;
typedef struct hl_eigenset hl_eigenset;
typedef struct hl_bound_report hl_bound_report;
typedef struct hl_norm_report hl_norm_report;

/* ---- potentials ------------------------------------------------------- */

/*
 * spec_json: {"family": "...", "params": {...}, "support_start": r}
 * Families: zero | exponential (c, lambda) | power (c, gamma) |
 * wigner_von_neumann (c, omega, gamma) | step_sequence (c, eta) |
 * bump_train (bumps: [[lo, hi, height], ...]) |
 * random_decaying (c, eta, seed).
 */
hl_status hl_potential_create_json(const char* spec_json, hl_potential** out);
void hl_potential_destroy(hl_potential* pot);

hl_status hl_potential_spec_json(const hl_potential* pot, char** json_out);
hl_status hl_potential_eval(const hl_potential* pot, double x, double* out);
hl_status hl_potential_cumulative_abs(const hl_potential* pot, double x,
                                      double* out);
/* Same integral, forced through adaptive quadrature (cross-validation). */
hl_status hl_potential_cumulative_abs_quadrature(const hl_potential* pot,
                                                 double x, double* out);
/* Fills out[0..count-1] with v_n = integral_n^{n+1} |V|. */
hl_status hl_potential_unit_cell_masses(const hl_potential* pot, size_t count,
                                        double* out);

/* ---- Prufer phase ------------------------------------------------------ */

/*
 * Transports the phase theta from 0 to X at momentum k > 0 and reports
 * f = k*X + theta(X). E = k^2 is a Dirichlet eigenvalue of the truncated
 * operator exactly when f is a multiple of pi. Pass rel_tol/abs_tol <= 0 to
 * use the defaults (1e-10 / 1e-12, or the HALFLINE_ODE_RTOL /
 * HALFLINE_ODE_ATOL environment overrides). Output pointers may be NULL.
 */
hl_status hl_prufer_phase(const hl_potential* pot, double k, double X,
                          double rel_tol, double abs_tol, double* theta_out,
                          double* f_out, double* log_amplitude_out,
                          double* err_estimate_out);
hl_status hl_prufer_f(const hl_potential* pot, double k, double X,
                      double* f_out);

/* Analytic lower bound (beta-alpha)X - (1/alpha + 1/beta) I(X) for
 * f_beta(X) - f_alpha(X). */
hl_status hl_phase_difference_bound(const hl_potential* pot, double alpha,
                                    double beta, double X, double* out);

/* ---- eigenvalues ------------------------------------------------------- */

/* root_tol <= 0 selects the default (1e-10 or HALFLINE_ROOT_TOL);
 * threads <= 0 selects the hardware concurrency. */
hl_status hl_eigenvalues_in_window(const hl_potential* pot, double X,
                                   double k_lo, double k_hi, double root_tol,
                                   int threads, hl_eigenset** out);

/* Finite-difference oracle over an energy window; handles E_lo < 0.
 * mesh_sizes: strictly decreasing grid spacings; pass n_meshes = 0 for an
 * automatic mesh ladder. extrapolate != 0 enables Richardson extrapolation. */
hl_status hl_fd_eigenvalues(const hl_potential* pot, double X, double E_lo,
                            double E_hi, const double* mesh_sizes,
                            size_t n_meshes, int extrapolate,
                            hl_eigenset** out);

/* floor(f_k(X)/pi); HL_ERR_AMBIGUOUS when f is within 1e-9 of a multiple
 * of pi. */
hl_status hl_crossing_count(const hl_potential* pot, double X, double k,
                            int* out);

size_t hl_eigenset_size(const hl_eigenset* set);
/* Any of k/E/residual may be NULL. k is NaN for negative-energy oracle
 * eigenvalues. */
hl_status hl_eigenset_get(const hl_eigenset* set, size_t index, double* k,
                          double* E, double* residual);
const char* hl_eigenset_method(const hl_eigenset* set);
size_t hl_eigenset_warning_count(const hl_eigenset* set);
const char* hl_eigenset_warning(const hl_eigenset* set, size_t index);
hl_status hl_eigenset_csv(const hl_eigenset* set, char** csv_out);
hl_status hl_eigenset_json(const hl_eigenset* set, char** json_out);
/* Pairs each eigenvalue of `set` with `oracle` by index and adds oracle_E
 * and rel_diff columns. */
hl_status hl_eigenset_comparison_csv(const hl_eigenset* set,
                                     const hl_eigenset* oracle,
                                     char** csv_out);
/* Consecutive momentum spacings against h (columns k,dk,E,dE,h,dk_over_h). */
hl_status hl_eigenset_spacing_csv(const hl_eigenset* set, double h,
                                  char** csv_out);
void hl_eigenset_destroy(hl_eigenset* set);

/* ---- spacing bound ------------------------------------------------------ */

/* h(X) = pi/X + (2/(aX)) integral_0^X |V|. */
hl_status hl_spacing_bound(const hl_potential* pot, double a, double X,
                           double* out);
/* margin = (beta-alpha)X - pi - (1/alpha + 1/beta) I(X); holds iff >= 0. */
hl_status hl_criterion_margin(const hl_potential* pot, double alpha,
                              double beta, double X, int* holds_out,
                              double* margin_out);

/*
 * Slides windows of width h(X)*h_scale (start step stride_fraction of the
 * width) across [a, k_hi] for every X in X_values and records windows that
 * contain no eigenvalue momentum. stride_fraction <= 0 selects 0.25,
 * h_scale <= 0 selects 1.0.
 */
hl_status hl_verify_bound(const hl_potential* pot, double a,
                          const double* X_values, size_t n_X, double k_hi,
                          double stride_fraction, double h_scale, int threads,
                          hl_bound_report** out);

/* Free case: nonzero *empty_out confirms the open window
 * (m pi/X + eps, (m+1) pi/X - eps) contains no eigenvalue momentum. */
hl_status hl_sharpness_probe(double X, unsigned m, double epsilon,
                             int* empty_out);

size_t hl_bound_report_run_count(const hl_bound_report* report);
hl_status hl_bound_report_run(const hl_bound_report* report, size_t index,
                              double* X, double* h, size_t* windows_checked,
                              long* min_count, double* min_margin);
size_t hl_bound_report_violation_count(const hl_bound_report* report);
size_t hl_bound_report_windows_checked(const hl_bound_report* report);
hl_status hl_bound_report_csv(const hl_bound_report* report, char** csv_out);
hl_status hl_bound_report_json(const hl_bound_report* report,
                               char** json_out);
void hl_bound_report_destroy(hl_bound_report* report);

/* ---- norms -------------------------------------------------------------- */

/* Partial norm over `cells` unit cells; tail_bound_out (may be NULL)
 * receives an upper bound on the omitted p-sum, +inf when unbounded. */
hl_status hl_amalgam_norm(const hl_potential* pot, double p, size_t cells,
                          double* value_out, double* tail_bound_out);
hl_status hl_weak_amalgam_norm(const hl_potential* pot, double p,
                               size_t cells, double* out);
/* Cellwise v_n^p <= integral_n^{n+1}|V|^p on all n < cells. */
hl_status hl_holder_check(const hl_potential* pot, double p, size_t cells,
                          int* ok_out);

hl_status hl_norm_report_create(const hl_potential* pot, double p,
                                size_t cells, hl_norm_report** out);
/* growth_exponent_out is NaN when I(x) never rises above 1e-12. */
hl_status hl_norm_report_values(const hl_norm_report* report, double* lp_out,
                                double* lp_tail_out, double* weak_out,
                                double* growth_exponent_out, double* cap_out);
hl_status hl_norm_report_json(const hl_norm_report* report, char** json_out);
hl_status hl_norm_report_trace_csv(const hl_norm_report* report,
                                   char** csv_out);
void hl_norm_report_destroy(hl_norm_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HALFLINE_H */

#include "halfline.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bounds.hpp"
#include "eigensolver.hpp"
#include "errors.hpp"
#include "norms.hpp"
#include "parallel.hpp"
#include "serialize.hpp"

struct hl_potential {
    halfline::potential impl;
};
struct hl_eigenset {
    halfline::eigenvalue_set impl;
};
struct hl_bound_report {
    halfline::bound_report impl;
};
struct hl_norm_report {
    halfline::norm_report impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

template <class Fn>
hl_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        g_last_error.clear();
        return HL_OK;
    } catch (const halfline::spec_error& e) {
        set_error(e.what());
        return HL_ERR_BAD_SPEC;
    } catch (const halfline::domain_error& e) {
        set_error(e.what());
        return HL_ERR_DOMAIN;
    } catch (const halfline::ambiguous_error& e) {
        set_error(e.what());
        return HL_ERR_AMBIGUOUS;
    } catch (const halfline::numerical_error& e) {
        set_error(e.what());
        return HL_ERR_NUMERICAL;
    } catch (const halfline::argument_error& e) {
        set_error(e.what());
        return HL_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return HL_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return HL_ERR_INTERNAL;
    }
}

hl_status bad_argument(const char* what) {
    set_error(what);
    return HL_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit_string(const std::string& s, char** out) {
    *out = dup_string(s);
    if (!*out) throw std::bad_alloc();
}

halfline::ode_tolerance tolerance_or_default(double rel, double abs) {
    halfline::ode_tolerance tol;
    if (rel > 0.0) tol.rel = rel;
    if (abs > 0.0) tol.abs = abs;
    return tol;
}

}  // namespace

extern "C" {

const char* hl_version(void) { return "1.0.0"; }

const char* hl_last_error(void) { return g_last_error.c_str(); }

void hl_string_free(char* s) { std::free(s); }

/* ---- potentials ------------------------------------------------------- */

hl_status hl_potential_create_json(const char* spec_json, hl_potential** out) {
    if (!spec_json || !out) return bad_argument("null argument");
    return guarded([&] {
        auto spec = halfline::potential_spec::from_json(spec_json);
        *out = new hl_potential{halfline::potential(std::move(spec))};
    });
}

void hl_potential_destroy(hl_potential* pot) { delete pot; }

hl_status hl_potential_spec_json(const hl_potential* pot, char** json_out) {
    if (!pot || !json_out) return bad_argument("null argument");
    return guarded(
        [&] { emit_string(pot->impl.spec().to_json() + "\n", json_out); });
}

hl_status hl_potential_eval(const hl_potential* pot, double x, double* out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded([&] { *out = pot->impl.eval(x); });
}

hl_status hl_potential_cumulative_abs(const hl_potential* pot, double x,
                                      double* out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded([&] { *out = pot->impl.cumulative_abs(x); });
}

hl_status hl_potential_cumulative_abs_quadrature(const hl_potential* pot,
                                                 double x, double* out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded([&] { *out = pot->impl.cumulative_abs_quadrature(x); });
}

hl_status hl_potential_unit_cell_masses(const hl_potential* pot, size_t count,
                                        double* out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded([&] {
        const std::vector<double> masses = pot->impl.unit_cell_masses(count);
        std::memcpy(out, masses.data(), masses.size() * sizeof(double));
    });
}

/* ---- Prufer phase ------------------------------------------------------ */

hl_status hl_prufer_phase(const hl_potential* pot, double k, double X,
                          double rel_tol, double abs_tol, double* theta_out,
                          double* f_out, double* log_amplitude_out,
                          double* err_estimate_out) {
    if (!pot) return bad_argument("null argument");
    return guarded([&] {
        halfline::prufer_integrator integ(pot->impl,
                                          tolerance_or_default(rel_tol, abs_tol));
        const halfline::phase_solution sol = integ.integrate_phase(k, X);
        if (theta_out) *theta_out = sol.theta;
        if (f_out) *f_out = sol.f;
        if (log_amplitude_out) *log_amplitude_out = sol.log_amplitude;
        if (err_estimate_out) *err_estimate_out = sol.err_estimate;
    });
}

hl_status hl_prufer_f(const hl_potential* pot, double k, double X,
                      double* f_out) {
    return hl_prufer_phase(pot, k, X, 0.0, 0.0, nullptr, f_out, nullptr,
                           nullptr);
}

hl_status hl_phase_difference_bound(const hl_potential* pot, double alpha,
                                    double beta, double X, double* out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded(
        [&] { *out = halfline::phase_difference_bound(pot->impl, alpha, beta, X); });
}

/* ---- eigenvalues ------------------------------------------------------- */

hl_status hl_eigenvalues_in_window(const hl_potential* pot, double X,
                                   double k_lo, double k_hi, double root_tol,
                                   int threads, hl_eigenset** out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded([&] {
        halfline::solver_options opt;
        if (root_tol > 0.0) opt.root_tol = root_tol;
        opt.threads = halfline::resolve_threads(threads);
        *out = new hl_eigenset{
            halfline::eigenvalues_in_window(pot->impl, X, k_lo, k_hi, opt)};
    });
}

hl_status hl_fd_eigenvalues(const hl_potential* pot, double X, double E_lo,
                            double E_hi, const double* mesh_sizes,
                            size_t n_meshes, int extrapolate,
                            hl_eigenset** out) {
    if (!pot || !out) return bad_argument("null argument");
    if (n_meshes > 0 && !mesh_sizes)
        return bad_argument("mesh_sizes is null but n_meshes > 0");
    return guarded([&] {
        halfline::oracle_config cfg;
        if (n_meshes > 0) {
            cfg.mesh_sizes.assign(mesh_sizes, mesh_sizes + n_meshes);
            cfg.extrapolate = extrapolate != 0;
        } else {
            cfg = halfline::default_oracle_config(X, E_hi);
            cfg.extrapolate = extrapolate != 0;
        }
        *out = new hl_eigenset{
            halfline::fd_oracle_eigenvalues(pot->impl, X, E_lo, E_hi, cfg)};
    });
}

hl_status hl_crossing_count(const hl_potential* pot, double X, double k,
                            int* out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded([&] { *out = halfline::crossing_count(pot->impl, X, k); });
}

size_t hl_eigenset_size(const hl_eigenset* set) {
    return set ? set->impl.size() : 0;
}

hl_status hl_eigenset_get(const hl_eigenset* set, size_t index, double* k,
                          double* E, double* residual) {
    if (!set) return bad_argument("null argument");
    if (index >= set->impl.size()) return bad_argument("index out of range");
    if (k) *k = set->impl.eigen_momenta[index];
    if (E) *E = set->impl.eigen_energies[index];
    if (residual) *residual = set->impl.residuals[index];
    return HL_OK;
}

const char* hl_eigenset_method(const hl_eigenset* set) {
    return set ? halfline::method_name(set->impl.method) : "";
}

size_t hl_eigenset_warning_count(const hl_eigenset* set) {
    return set ? set->impl.warnings.size() : 0;
}

const char* hl_eigenset_warning(const hl_eigenset* set, size_t index) {
    if (!set || index >= set->impl.warnings.size()) return "";
    return set->impl.warnings[index].c_str();
}

hl_status hl_eigenset_csv(const hl_eigenset* set, char** csv_out) {
    if (!set || !csv_out) return bad_argument("null argument");
    return guarded(
        [&] { emit_string(halfline::eigenset_csv(set->impl), csv_out); });
}

hl_status hl_eigenset_json(const hl_eigenset* set, char** json_out) {
    if (!set || !json_out) return bad_argument("null argument");
    return guarded(
        [&] { emit_string(halfline::eigenset_json(set->impl), json_out); });
}

hl_status hl_eigenset_comparison_csv(const hl_eigenset* set,
                                     const hl_eigenset* oracle,
                                     char** csv_out) {
    if (!set || !oracle || !csv_out) return bad_argument("null argument");
    return guarded([&] {
        emit_string(halfline::oracle_comparison_csv(set->impl, oracle->impl),
                    csv_out);
    });
}

hl_status hl_eigenset_spacing_csv(const hl_eigenset* set, double h,
                                  char** csv_out) {
    if (!set || !csv_out) return bad_argument("null argument");
    return guarded(
        [&] { emit_string(halfline::spacing_csv(set->impl, h), csv_out); });
}

void hl_eigenset_destroy(hl_eigenset* set) { delete set; }

/* ---- spacing bound ------------------------------------------------------ */

hl_status hl_spacing_bound(const hl_potential* pot, double a, double X,
                           double* out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded([&] { *out = halfline::h_of(pot->impl, a, X); });
}

hl_status hl_criterion_margin(const hl_potential* pot, double alpha,
                              double beta, double X, int* holds_out,
                              double* margin_out) {
    if (!pot) return bad_argument("null argument");
    return guarded([&] {
        const halfline::criterion_result r =
            halfline::criterion_holds(pot->impl, alpha, beta, X);
        if (holds_out) *holds_out = r.holds ? 1 : 0;
        if (margin_out) *margin_out = r.margin;
    });
}

hl_status hl_verify_bound(const hl_potential* pot, double a,
                          const double* X_values, size_t n_X, double k_hi,
                          double stride_fraction, double h_scale, int threads,
                          hl_bound_report** out) {
    if (!pot || !out) return bad_argument("null argument");
    if (n_X > 0 && !X_values)
        return bad_argument("X_values is null but n_X > 0");
    return guarded([&] {
        halfline::verify_options opt;
        if (stride_fraction > 0.0) opt.stride_fraction = stride_fraction;
        if (h_scale > 0.0) opt.h_scale = h_scale;
        opt.threads = halfline::resolve_threads(threads);
        *out = new hl_bound_report{halfline::verify_bound(
            pot->impl, a, std::span<const double>(X_values, n_X), k_hi, opt)};
    });
}

hl_status hl_sharpness_probe(double X, unsigned m, double epsilon,
                             int* empty_out) {
    if (!empty_out) return bad_argument("null argument");
    return guarded(
        [&] { *empty_out = halfline::sharpness_probe(X, m, epsilon) ? 1 : 0; });
}

size_t hl_bound_report_run_count(const hl_bound_report* report) {
    return report ? report->impl.runs.size() : 0;
}

hl_status hl_bound_report_run(const hl_bound_report* report, size_t index,
                              double* X, double* h, size_t* windows_checked,
                              long* min_count, double* min_margin) {
    if (!report) return bad_argument("null argument");
    if (index >= report->impl.runs.size())
        return bad_argument("index out of range");
    const halfline::bound_run& run = report->impl.runs[index];
    if (X) *X = run.X;
    if (h) *h = run.h;
    if (windows_checked) *windows_checked = run.windows_checked;
    if (min_count) *min_count = run.min_count;
    if (min_margin) *min_margin = run.min_margin;
    return HL_OK;
}

size_t hl_bound_report_violation_count(const hl_bound_report* report) {
    if (!report) return 0;
    size_t n = 0;
    for (const halfline::bound_run& run : report->impl.runs)
        n += run.violations.size();
    return n;
}

size_t hl_bound_report_windows_checked(const hl_bound_report* report) {
    return report ? report->impl.windows_checked() : 0;
}

hl_status hl_bound_report_csv(const hl_bound_report* report, char** csv_out) {
    if (!report || !csv_out) return bad_argument("null argument");
    return guarded(
        [&] { emit_string(halfline::bound_report_csv(report->impl), csv_out); });
}

hl_status hl_bound_report_json(const hl_bound_report* report,
                               char** json_out) {
    if (!report || !json_out) return bad_argument("null argument");
    return guarded([&] {
        emit_string(halfline::bound_report_json(report->impl), json_out);
    });
}

void hl_bound_report_destroy(hl_bound_report* report) { delete report; }

/* ---- norms -------------------------------------------------------------- */

hl_status hl_amalgam_norm(const hl_potential* pot, double p, size_t cells,
                          double* value_out, double* tail_bound_out) {
    if (!pot || !value_out) return bad_argument("null argument");
    return guarded([&] {
        const halfline::amalgam_result r =
            halfline::amalgam_norm(pot->impl, p, cells);
        *value_out = r.value;
        if (tail_bound_out) *tail_bound_out = r.tail_bound;
    });
}

hl_status hl_weak_amalgam_norm(const hl_potential* pot, double p,
                               size_t cells, double* out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded(
        [&] { *out = halfline::weak_amalgam_norm(pot->impl, p, cells); });
}

hl_status hl_holder_check(const hl_potential* pot, double p, size_t cells,
                          int* ok_out) {
    if (!pot || !ok_out) return bad_argument("null argument");
    return guarded([&] {
        *ok_out = halfline::holder_embedding_check(pot->impl, p, cells) ? 1 : 0;
    });
}

hl_status hl_norm_report_create(const hl_potential* pot, double p,
                                size_t cells, hl_norm_report** out) {
    if (!pot || !out) return bad_argument("null argument");
    return guarded([&] {
        *out = new hl_norm_report{halfline::make_norm_report(pot->impl, p, cells)};
    });
}

hl_status hl_norm_report_values(const hl_norm_report* report, double* lp_out,
                                double* lp_tail_out, double* weak_out,
                                double* growth_exponent_out, double* cap_out) {
    if (!report) return bad_argument("null argument");
    if (lp_out) *lp_out = report->impl.lp_L1.value;
    if (lp_tail_out) *lp_tail_out = report->impl.lp_L1.tail_bound;
    if (weak_out) *weak_out = report->impl.lp_w_L1;
    if (growth_exponent_out) *growth_exponent_out = report->impl.growth_exponent;
    if (cap_out) *cap_out = report->impl.trace.cap;
    return HL_OK;
}

hl_status hl_norm_report_json(const hl_norm_report* report, char** json_out) {
    if (!report || !json_out) return bad_argument("null argument");
    return guarded(
        [&] { emit_string(halfline::norm_report_json(report->impl), json_out); });
}

hl_status hl_norm_report_trace_csv(const hl_norm_report* report,
                                   char** csv_out) {
    if (!report || !csv_out) return bad_argument("null argument");
    return guarded(
        [&] { emit_string(halfline::trace_csv(report->impl.trace), csv_out); });
}

void hl_norm_report_destroy(hl_norm_report* report) { delete report; }

} /* extern "C" */

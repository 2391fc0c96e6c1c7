#pragma once

#include <span>
#include <vector>

#include "eigensolver.hpp"

namespace halfline {

// h(X) = pi/X + (2/(aX)) * integral_0^X |V|; any momentum window of this
// width inside [a, inf) must contain an eigenvalue momentum of H_X.
double h_of(const potential& V, double a, double X);

struct criterion_result {
    bool holds = false;
    double margin = 0.0;  // (beta - alpha)X - pi - (1/alpha + 1/beta) I(X)
};

criterion_result criterion_holds(const potential& V, double alpha, double beta,
                                 double X);

struct window_check {
    double alpha = 0.0;
    double beta = 0.0;
    double margin = 0.0;
    long eigen_count = 0;
    bool violation = false;
};

// Outcome of the sliding-window scan at one interval length X.
struct bound_run {
    double X = 0.0;
    double h = 0.0;            // h_of(V, a, X)
    double width = 0.0;        // window width actually used: h * h_scale
    std::size_t windows_checked = 0;
    long min_count = 0;
    double min_margin = 0.0;
    std::vector<window_check> windows;
    std::vector<window_check> violations;
};

struct bound_report {
    double a = 0.0;
    double h_scale = 1.0;
    double energy_shift = 0.0;  // reserved for a constant-shift variant; unused
    std::vector<bound_run> runs;

    bool has_violations() const;
    std::size_t windows_checked() const;
};

struct verify_options {
    double stride_fraction = 0.25;  // window-start step, as a fraction of width
    double h_scale = 1.0;           // diagnostic weakening of the bound
    double slack = 1e-8;            // tau: absorb root-refinement error
    ode_tolerance ode;
    int threads = 1;
};

// Slides windows [alpha, alpha + h*h_scale] from a to k_hi and checks each
// one contains an eigenvalue momentum. Existence certificates come from
// integer-crossing counts of f at the window edges; windows that look empty
// are rescanned densely before being recorded as violations.
bound_run verify_theorem(const potential& V, double a, double X, double k_hi,
                         const verify_options& opt = {});

bound_report verify_bound(const potential& V, double a,
                          std::span<const double> X_values, double k_hi,
                          const verify_options& opt = {});

// Free case: the open momentum window (m*pi/X + eps, (m+1)*pi/X - eps) must
// contain no eigenvalue, so the constant pi in h cannot be lowered.
bool sharpness_probe(double X, unsigned m, double epsilon);

}  // namespace halfline

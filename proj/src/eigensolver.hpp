#pragma once

#include <string>
#include <vector>

#include "prufer.hpp"

namespace halfline {

enum class eigen_method { prufer_shooting, fd_oracle };
const char* method_name(eigen_method m);

// Dirichlet eigenvalues of -u'' + V u on [0, X] inside one momentum window.
struct eigenvalue_set {
    double X = 0.0;
    double k_lo = 0.0;
    double k_hi = 0.0;
    std::vector<double> eigen_momenta;   // sorted; NaN entries for E < 0
    std::vector<double> eigen_energies;  // k^2 (or the raw oracle energy)
    std::vector<double> residuals;       // |f - m*pi| resp. extrapolation drift
    eigen_method method = eigen_method::prufer_shooting;
    std::vector<std::string> warnings;

    std::size_t size() const { return eigen_energies.size(); }
};

struct solver_options {
    ode_tolerance ode;
    double root_tol = defaults::root_tol();
    int max_escalations = 6;  // pitch halvings when a gap jumps by more than pi
    int threads = 1;
};

struct oracle_config {
    std::vector<double> mesh_sizes;  // grid spacings, strictly decreasing
    bool extrapolate = true;

    void validate() const;
};

// Spacings so the finest mesh resolves the oscillation at E_hi and two
// coarser meshes feed the extrapolation.
oracle_config default_oracle_config(double X, double E_hi);

// All k in [k_lo, k_hi] with f_k(X) on a multiple of pi, each bracketed on a
// scan grid and polished to |f - m*pi| < root_tol.
eigenvalue_set eigenvalues_in_window(const potential& V, double X, double k_lo,
                                     double k_hi,
                                     const solver_options& opt = {});

// floor(f_k(X)/pi): candidate count of eigenvalues with momentum <= k.
// Throws ambiguous_error when f_k(X) sits within 1e-9 of a multiple of pi.
int crossing_count(const potential& V, double X, double k,
                   const solver_options& opt = {});

// Independent route: second-order finite differences on a uniform grid,
// Sturm-sequence bisection on the tridiagonal system, Richardson
// extrapolation across meshes. Covers E < 0, which the phase route cannot.
eigenvalue_set fd_oracle_eigenvalues(const potential& V, double X, double E_lo,
                                     double E_hi, const oracle_config& cfg);

}  // namespace halfline

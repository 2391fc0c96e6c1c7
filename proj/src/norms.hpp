#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "potential.hpp"

namespace halfline {

// Partial amalgamated norm over the first `cells` unit cells, plus an upper
// bound on the omitted p-sum tail (infinite when the family admits none).
struct amalgam_result {
    double value = 0.0;       // (sum_{n<cells} v_n^p)^(1/p)
    double tail_bound = 0.0;  // upper bound on sum_{n>=cells} v_n^p
    double p = 0.0;
    std::size_t cells = 0;

    double upper() const;  // norm bound including the tail
};

amalgam_result amalgam_norm(const potential& V, double p, std::size_t cells);

// sup_s s * #{n < cells : v_n > s}^(1/p), evaluated exactly by sorting the
// masses and maximizing v_(j) * j^(1/p) over ranks j.
double weak_amalgam_norm(const potential& V, double p, std::size_t cells);

struct ratio_trace {
    std::vector<double> x;
    std::vector<double> ratio;  // I(x) / x^(1 - 1/p)
    double cap = 0.0;           // weak lemma: delta * p/(p-1); 0 when unset
};

// Powers of two from 2^lo_exp to 2^hi_exp inclusive.
std::vector<double> dyadic_grid(int lo_exp, int hi_exp);

// Strong-norm decay: finite lp(L1) forces I(x)/x^(1-1/p) -> 0.
ratio_trace growth_check_strong(const potential& V, double p,
                                std::span<const double> grid);

// Weak-norm cap: I(x) <= delta * p/(p-1) * x^(1-1/p) with delta the weak
// amalgam norm, estimated from `weak_cells` masses.
ratio_trace growth_check_weak(const potential& V, double p,
                              std::span<const double> grid,
                              std::size_t weak_cells);

// Cellwise v_n^p <= integral_n^{n+1} |V|^p for all n < cells.
bool holder_embedding_check(const potential& V, double p, std::size_t cells,
                            double tol = 1e-10);

// Least-squares slope of log I(x) against log x over the grid; NaN when I is
// below 1e-12 anywhere on the grid (no meaningful exponent).
double fitted_growth_exponent(const potential& V,
                              std::span<const double> grid);

struct norm_report {
    double p = 0.0;
    std::size_t cells = 0;
    amalgam_result lp_L1;
    double lp_w_L1 = 0.0;
    double growth_exponent = 0.0;  // NaN when undefined
    ratio_trace trace;             // weak trace with cap
};

norm_report make_norm_report(const potential& V, double p, std::size_t cells);

}  // namespace halfline

#include "norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace halfline {

namespace {

void require_p(double p) {
    if (!std::isfinite(p) || p <= 1.0)
        throw argument_error("p: must be finite and > 1");
}

// Upper bound on sum_{n>=N} v_n^p from the family's decay envelope.
double tail_p_sum_bound(const potential& V, double p, std::size_t N) {
    const potential_spec& spec = V.spec();
    const double inf = std::numeric_limits<double>::infinity();
    const double c = std::abs(spec.amplitude);
    const double n0 = double(N);
    switch (spec.family) {
        case family_kind::zero:
            return 0.0;
        case family_kind::bump_train: {
            double last = 0.0;
            for (const bump& b : spec.bumps) last = std::max(last, b.hi);
            double sum = 0.0;
            for (std::size_t n = N; double(n) < last; ++n)
                sum += std::pow(V.cell_mass(n), p);
            return sum;
        }
        case family_kind::exponential: {
            // v_n <= A e^{-lambda n} with A the full-cell mass factor
            const double l = spec.decay_rate;
            const double A = (c / l) * (1.0 - std::exp(-l));
            return std::pow(A, p) * std::exp(-l * p * n0) /
                   (1.0 - std::exp(-l * p));
        }
        case family_kind::power:
        case family_kind::wigner_von_neumann: {
            // v_n <= c (1+n)^{-gamma}; integral comparison from N-1
            const double q = spec.exponent * p;
            if (q <= 1.0) return inf;
            const double base = std::max(n0 - 1.0, 0.0);
            return std::pow(c, p) * std::pow(1.0 + base, 1.0 - q) / (q - 1.0);
        }
        case family_kind::step_sequence:
        case family_kind::random_decaying: {
            // v_n <= c (n+1)^{-eta}
            const double q = spec.exponent * p;
            if (q <= 1.0) return inf;
            return std::pow(c, p) * std::pow(std::max(n0, 1.0), 1.0 - q) /
                   (q - 1.0);
        }
    }
    return inf;
}

}  // namespace

double amalgam_result::upper() const {
    if (!std::isfinite(tail_bound))
        return std::numeric_limits<double>::infinity();
    return std::pow(std::pow(value, p) + tail_bound, 1.0 / p);
}

amalgam_result amalgam_norm(const potential& V, double p, std::size_t cells) {
    require_p(p);
    if (cells < 1) throw argument_error("cells: must be >= 1");
    double psum = 0.0;
    for (std::size_t n = 0; n < cells; ++n)
        psum += std::pow(V.cell_mass(n), p);
    amalgam_result out;
    out.value = std::pow(psum, 1.0 / p);
    out.tail_bound = tail_p_sum_bound(V, p, cells);
    out.p = p;
    out.cells = cells;
    return out;
}

double weak_amalgam_norm(const potential& V, double p, std::size_t cells) {
    require_p(p);
    if (cells < 1) throw argument_error("cells: must be >= 1");
    std::vector<double> masses = V.unit_cell_masses(cells);
    std::sort(masses.begin(), masses.end(), std::greater<>());
    double best = 0.0;
    for (std::size_t j = 0; j < masses.size(); ++j) {
        if (masses[j] <= 0.0) break;  // ranks past the support add nothing
        best = std::max(best, masses[j] * std::pow(double(j + 1), 1.0 / p));
    }
    return best;
}

std::vector<double> dyadic_grid(int lo_exp, int hi_exp) {
    if (lo_exp > hi_exp)
        throw argument_error("dyadic_grid: requires lo_exp <= hi_exp");
    std::vector<double> grid;
    grid.reserve(std::size_t(hi_exp - lo_exp + 1));
    for (int e = lo_exp; e <= hi_exp; ++e) grid.push_back(std::ldexp(1.0, e));
    return grid;
}

ratio_trace growth_check_strong(const potential& V, double p,
                                std::span<const double> grid) {
    require_p(p);
    ratio_trace out;
    const double expo = 1.0 - 1.0 / p;
    for (double x : grid) {
        if (!(x > 0.0)) throw argument_error("grid: entries must be > 0");
        out.x.push_back(x);
        out.ratio.push_back(V.cumulative_abs(x) / std::pow(x, expo));
    }
    return out;
}

ratio_trace growth_check_weak(const potential& V, double p,
                              std::span<const double> grid,
                              std::size_t weak_cells) {
    ratio_trace out = growth_check_strong(V, p, grid);
    const double delta = weak_amalgam_norm(V, p, weak_cells);
    out.cap = delta * p / (p - 1.0);
    return out;
}

bool holder_embedding_check(const potential& V, double p, std::size_t cells,
                            double tol) {
    require_p(p);
    for (std::size_t n = 0; n < cells; ++n) {
        const double lhs = std::pow(V.cell_mass(n), p);
        const double rhs = V.abs_power_cell_integral(n, p);
        if (lhs > rhs + tol) return false;
    }
    return true;
}

double fitted_growth_exponent(const potential& V,
                              std::span<const double> grid) {
    if (grid.size() < 2)
        throw argument_error("fitted_growth_exponent: need >= 2 grid points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (double x : grid) {
        const double I = V.cumulative_abs(x);
        if (I <= 1e-12) return std::numeric_limits<double>::quiet_NaN();
        const double lx = std::log(x), ly = std::log(I);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = double(grid.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

norm_report make_norm_report(const potential& V, double p, std::size_t cells) {
    norm_report report;
    report.p = p;
    report.cells = cells;
    report.lp_L1 = amalgam_norm(V, p, cells);
    report.lp_w_L1 = weak_amalgam_norm(V, p, cells);
    const std::vector<double> grid = dyadic_grid(4, 20);
    report.growth_exponent = fitted_growth_exponent(V, grid);
    report.trace = growth_check_weak(V, p, grid, cells);
    return report;
}

}  // namespace halfline

#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "parallel.hpp"

namespace halfline {

namespace {

constexpr double pi = std::numbers::pi;

long pi_floor(double f) { return static_cast<long>(std::floor(f / pi)); }

void validate_verify_options(const verify_options& opt) {
    if (!(opt.stride_fraction > 0.0) || opt.stride_fraction > 1.0)
        throw argument_error("verify_options.stride_fraction: must be in (0, 1]");
    if (!(opt.h_scale > 0.0) || !std::isfinite(opt.h_scale))
        throw argument_error("verify_options.h_scale: must be finite and > 0");
    if (!(opt.slack >= 0.0))
        throw argument_error("verify_options.slack: must be >= 0");
    opt.ode.validate();
}

// Last resort for a window whose edge counts show no crossing: walk the
// tau-expanded window densely and look for any floor change or grazing touch.
bool dense_crossing_scan(const prufer_integrator& integ, double X, double lo,
                         double hi) {
    constexpr int samples = 96;
    double prev_f = integ.f_at(lo, X);
    long prev_floor = pi_floor(prev_f);
    for (int i = 1; i <= samples; ++i) {
        const double k = lo + (hi - lo) * double(i) / samples;
        const double f = integ.f_at(k, X);
        if (pi_floor(f) != prev_floor) return true;
        if (std::abs(f - std::round(f / pi) * pi) < 1e-9) return true;
        prev_f = f;
        prev_floor = pi_floor(f);
    }
    return false;
}

}  // namespace

double h_of(const potential& V, double a, double X) {
    if (!std::isfinite(a) || a <= 0.0)
        throw argument_error("h_of: a must be finite and > 0");
    if (!std::isfinite(X) || X <= 0.0)
        throw argument_error("h_of: X must be finite and > 0");
    return pi / X + (2.0 / (a * X)) * V.cumulative_abs(X);
}

criterion_result criterion_holds(const potential& V, double alpha, double beta,
                                 double X) {
    if (!(alpha > 0.0) || !(beta > alpha))
        throw argument_error("criterion_holds: requires 0 < alpha < beta");
    if (!std::isfinite(X) || X <= 0.0)
        throw argument_error("criterion_holds: X must be finite and > 0");
    const double margin = (beta - alpha) * X - pi -
                          (1.0 / alpha + 1.0 / beta) * V.cumulative_abs(X);
    return {margin >= 0.0, margin};
}

bool bound_report::has_violations() const {
    for (const bound_run& run : runs)
        if (!run.violations.empty()) return true;
    return false;
}

std::size_t bound_report::windows_checked() const {
    std::size_t n = 0;
    for (const bound_run& run : runs) n += run.windows_checked;
    return n;
}

bound_run verify_theorem(const potential& V, double a, double X, double k_hi,
                         const verify_options& opt) {
    if (!std::isfinite(a) || a <= 0.0)
        throw argument_error("verify_theorem: a must be finite and > 0");
    if (!std::isfinite(k_hi) || k_hi <= a)
        throw argument_error("verify_theorem: requires k_hi > a");
    validate_verify_options(opt);

    bound_run run;
    run.X = X;
    run.h = h_of(V, a, X);
    run.width = run.h * opt.h_scale;

    const double w = run.width;
    const double snap = 1e-12 * std::max(1.0, k_hi);
    if (a + w > k_hi + snap) return run;  // no window fits; nothing to check

    const double stride = opt.stride_fraction * w;
    const std::size_t n_windows = static_cast<std::size_t>(
        std::floor((k_hi - w - a) / stride + snap / stride)) + 1;

    // When the width is an exact multiple of the stride, window ends land on
    // the start lattice and each f evaluation is shared by several windows.
    const long ratio = std::lround(w / stride);
    const bool shared =
        ratio >= 1 && std::abs(double(ratio) * stride - w) < 1e-9 * w;

    const prufer_integrator integ(V, opt.ode);
    std::vector<double> alphas(n_windows), betas(n_windows);
    for (std::size_t i = 0; i < n_windows; ++i) {
        alphas[i] = a + double(i) * stride;
        betas[i] = alphas[i] + w;
    }

    std::vector<double> f_alpha(n_windows), f_beta(n_windows);
    if (shared) {
        const std::size_t points = n_windows + static_cast<std::size_t>(ratio);
        std::vector<double> lattice(points), f(points);
        for (std::size_t j = 0; j < points; ++j)
            lattice[j] = a + double(j) * stride;
        parallel_for(points, opt.threads,
                     [&](std::size_t j) { f[j] = integ.f_at(lattice[j], X); });
        for (std::size_t i = 0; i < n_windows; ++i) {
            f_alpha[i] = f[i];
            f_beta[i] = f[i + static_cast<std::size_t>(ratio)];
        }
    } else {
        parallel_for(n_windows, opt.threads, [&](std::size_t i) {
            f_alpha[i] = integ.f_at(alphas[i], X);
            f_beta[i] = integ.f_at(betas[i], X);
        });
    }

    const double mass = V.cumulative_abs(X);
    run.windows.resize(n_windows);
    parallel_for(n_windows, opt.threads, [&](std::size_t i) {
        window_check& wc = run.windows[i];
        wc.alpha = alphas[i];
        wc.beta = betas[i];
        wc.margin = (wc.beta - wc.alpha) * X - pi -
                    (1.0 / wc.alpha + 1.0 / wc.beta) * mass;
        wc.eigen_count = pi_floor(f_beta[i]) - pi_floor(f_alpha[i]);
        if (wc.eigen_count <= 0) {
            // edge counts say empty: re-examine the tau-expanded window
            const double lo = std::max(wc.alpha - opt.slack, 0.5 * wc.alpha);
            const double hi = wc.beta + opt.slack;
            const long expanded =
                pi_floor(integ.f_at(hi, X)) - pi_floor(integ.f_at(lo, X));
            if (expanded >= 1) {
                wc.eigen_count = expanded;
            } else if (dense_crossing_scan(integ, X, lo, hi)) {
                wc.eigen_count = 1;
            } else {
                wc.eigen_count = 0;
                wc.violation = true;
            }
        }
    });

    run.windows_checked = n_windows;
    run.min_count = run.windows.empty() ? 0 : run.windows.front().eigen_count;
    run.min_margin = run.windows.empty() ? 0.0 : run.windows.front().margin;
    for (const window_check& wc : run.windows) {
        run.min_count = std::min(run.min_count, wc.eigen_count);
        run.min_margin = std::min(run.min_margin, wc.margin);
        if (wc.violation) run.violations.push_back(wc);
    }
    return run;
}

bound_report verify_bound(const potential& V, double a,
                          std::span<const double> X_values, double k_hi,
                          const verify_options& opt) {
    if (X_values.empty())
        throw argument_error("verify_bound: X_values must be nonempty");
    bound_report report;
    report.a = a;
    report.h_scale = opt.h_scale;
    for (double X : X_values)
        report.runs.push_back(verify_theorem(V, a, X, k_hi, opt));
    return report;
}

bool sharpness_probe(double X, unsigned m, double epsilon) {
    if (!std::isfinite(X) || X <= 0.0)
        throw argument_error("sharpness_probe: X must be finite and > 0");
    if (m < 1) throw argument_error("sharpness_probe: m must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon < pi / (2.0 * X)))
        throw argument_error("sharpness_probe: requires 0 < epsilon < pi/(2X)");
    const double k_lo = double(m) * pi / X + epsilon;
    const double k_hi = double(m + 1) * pi / X - epsilon;
    potential zero{potential_spec{}};
    const eigenvalue_set found = eigenvalues_in_window(zero, X, k_lo, k_hi);
    return found.size() == 0;
}

}  // namespace halfline

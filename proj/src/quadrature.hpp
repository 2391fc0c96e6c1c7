#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <span>
#include <vector>

#include "errors.hpp"

namespace halfline {

struct quad_result {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

namespace quad_detail {

// 15-point Kronrod extension of 7-point Gauss, nodes on [-1, 1].
inline constexpr double kron_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kron_weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Gauss weights match kron_nodes[1], [3], [5] and the centre.
inline constexpr double gauss_weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gk15(F&& f, double lo, double hi, double& kronrod, double& err) {
    const double c = 0.5 * (lo + hi);
    const double hl = 0.5 * (hi - lo);
    double fk = kron_weights[7] * f(c);
    double fg = gauss_weights[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = hl * kron_nodes[i];
        const double pair = f(c - dx) + f(c + dx);
        fk += kron_weights[i] * pair;
        if (i % 2 == 1) fg += gauss_weights[i / 2] * pair;
    }
    kronrod = fk * hl;
    err = std::abs((fk - fg) * hl);
}

struct panel {
    double lo, hi, value, error;
    bool operator<(const panel& o) const { return error < o.error; }
};

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration of f over [lo, hi]. Integration is
// seeded with one panel per smooth piece: split_points must list every
// interior point where f (or a derivative) jumps. Bisects the worst panel
// until sum of panel error estimates meets max(abs_tol, rel_tol * |value|).
template <class F>
quad_result integrate_adaptive(F&& f, double lo, double hi,
                               std::span<const double> split_points,
                               double abs_tol, double rel_tol,
                               int max_panels = 4000) {
    if (!(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw argument_error("integrate_adaptive: invalid interval");
    quad_result out;
    if (hi == lo) return out;

    std::priority_queue<quad_detail::panel> queue;
    double total = 0.0, total_err = 0.0;
    int panels = 0;
    double prev = lo;
    auto push_panel = [&](double a, double b) {
        if (b <= a) return;
        quad_detail::panel p{a, b, 0.0, 0.0};
        quad_detail::gk15(f, a, b, p.value, p.error);
        total += p.value;
        total_err += p.error;
        ++panels;
        queue.push(p);
    };
    for (double s : split_points) {
        if (s > prev && s < hi) {
            push_panel(prev, s);
            prev = s;
        }
    }
    push_panel(prev, hi);
    if (panels > max_panels)
        throw numerical_error("integrate_adaptive: split list exceeds panel budget");

    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (panels >= max_panels) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "integrate_adaptive: no convergence after %d panels, "
                          "achieved error estimate %.3e",
                          panels, total_err);
            throw numerical_error(msg);
        }
        quad_detail::panel worst = queue.top();
        queue.pop();
        total -= worst.value;
        total_err -= worst.error;
        --panels;
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // interval at floating point resolution; keep its estimate
            total += worst.value;
            total_err += worst.error;
            ++panels;
            break;
        }
        push_panel(worst.lo, mid);
        push_panel(mid, worst.hi);
    }

    out.value = total;
    out.error_estimate = total_err;
    out.panels = panels;
    return out;
}

}  // namespace halfline

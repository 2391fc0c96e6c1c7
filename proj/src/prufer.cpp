#include "prufer.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace halfline {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat, applied to the stage derivatives for the embedded error estimate
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

void ode_tolerance::validate() const {
    if (!std::isfinite(rel) || rel < 1e-13)
        throw argument_error("ode_tolerance.rel: must be finite and >= 1e-13");
    if (!std::isfinite(abs) || abs <= 0.0)
        throw argument_error("ode_tolerance.abs: must be finite and > 0");
}

prufer_integrator::prufer_integrator(const potential& V, ode_tolerance tol)
    : V_(&V), tol_(tol) {
    tol_.validate();
}

// One smooth segment [lo, hi]: V has no jump inside, so the right endpoint is
// sampled as a left limit and stages never read across a discontinuity.
void prufer_integrator::advance_segment(double k, double lo, double hi,
                                        double state[2], phase_solution& out,
                                        bool record) const {
    const double span = hi - lo;
    if (span <= 0.0) return;

    auto vfun = [&](double x) {
        return x >= hi ? V_->value_left_limit(hi) : V_->value_at(x);
    };
    // state = {theta, logR}; phi = 2kx + 2*theta drives both components
    auto rhs = [&](double x, const double y[2], double dy[2]) {
        const double v = vfun(x) / (2.0 * k);
        const double phi = 2.0 * k * x + 2.0 * y[0];
        dy[0] = v * (std::cos(phi) - 1.0);
        dy[1] = v * std::sin(phi);
    };

    double x = lo;
    double h = std::min({0.1, 0.1 / k, span});
    double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], ytmp[2], ynew[2];
    rhs(x, state, k1);
    bool fsal_valid = true;

    while (x < hi) {
        if (x + h > hi) h = hi - x;
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
            throw numerical_error("phase integration stalled near x = " +
                                  std::to_string(x));
        if (!fsal_valid) {
            rhs(x, state, k1);
            fsal_valid = true;
        }

        for (int i = 0; i < 2; ++i) ytmp[i] = state[i] + h * a21 * k1[i];
        rhs(x + c2 * h, ytmp, k2);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = state[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(x + c3 * h, ytmp, k3);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = state[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(x + c4 * h, ytmp, k4);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = state[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                      a54 * k4[i]);
        rhs(x + c5 * h, ytmp, k5);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = state[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                      a64 * k4[i] + a65 * k5[i]);
        rhs(x + h, ytmp, k6);
        for (int i = 0; i < 2; ++i)
            ynew[i] = state[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                      b5 * k5[i] + b6 * k6[i]);
        rhs(x + h, ynew, k7);

        double err_norm = 0.0;
        double err_theta = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            if (i == 0) err_theta = std::abs(ei);
            const double scale =
                tol_.abs + tol_.rel * std::max(std::abs(state[i]), std::abs(ynew[i]));
            err_norm += (ei / scale) * (ei / scale);
        }
        err_norm = std::sqrt(0.5 * err_norm);

        if (err_norm <= 1.0) {
            x += h;
            state[0] = ynew[0];
            state[1] = ynew[1];
            k1[0] = k7[0];
            k1[1] = k7[1];
            out.steps += 1;
            out.err_estimate += err_theta;
            if (record) out.checkpoints.push_back({x, state[0]});
        } else {
            out.rejected += 1;
            fsal_valid = true;  // k1 still matches (x, state)
        }
        const double grow = err_norm > 0.0
                                ? 0.9 * std::pow(err_norm, -0.2)
                                : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
    }
}

phase_solution prufer_integrator::integrate_phase(
    double k, double X, std::size_t max_checkpoints) const {
    if (!std::isfinite(k) || k <= 0.0)
        throw domain_error("integrate_phase: k must be finite and > 0");
    if (!std::isfinite(X) || X < 0.0)
        throw domain_error("integrate_phase: X must be finite and >= 0");

    phase_solution out;
    if (X == 0.0 || V_->vanishes_on(X)) {
        out.f = k * X;
        return out;
    }

    double state[2] = {0.0, 0.0};
    std::vector<double> cuts = V_->breakpoints_in(0.0, X);
    cuts.push_back(X);
    double lo = 0.0;
    for (double hi : cuts) {
        // a segment carrying no mass of |V| leaves theta and logR unchanged
        if (V_->cumulative_abs(hi) - V_->cumulative_abs(lo) != 0.0)
            advance_segment(k, lo, hi, state, out, max_checkpoints > 0);
        lo = hi;
    }
    if (max_checkpoints > 0 && out.checkpoints.size() > max_checkpoints) {
        std::vector<phase_point> thinned;
        thinned.reserve(max_checkpoints);
        if (max_checkpoints == 1) {
            thinned.push_back(out.checkpoints.back());
        } else {
            const double step = double(out.checkpoints.size() - 1) /
                                double(max_checkpoints - 1);
            for (std::size_t i = 0; i < max_checkpoints; ++i)
                thinned.push_back(out.checkpoints[std::size_t(i * step)]);
        }
        out.checkpoints = std::move(thinned);
    }
    out.theta = state[0];
    out.log_amplitude = state[1];
    out.f = k * X + state[0];
    return out;
}

double prufer_integrator::f_at(double k, double X) const {
    return integrate_phase(k, X).f;
}

double phase_difference_bound(const potential& V, double alpha, double beta,
                              double X) {
    if (!(alpha > 0.0) || !(beta > alpha))
        throw argument_error("phase_difference_bound: requires 0 < alpha < beta");
    if (!std::isfinite(X) || X < 0.0)
        throw argument_error("phase_difference_bound: X must be finite and >= 0");
    return (beta - alpha) * X -
           (1.0 / alpha + 1.0 / beta) * V.cumulative_abs(X);
}

}  // namespace halfline

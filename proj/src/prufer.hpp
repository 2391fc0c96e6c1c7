#pragma once

#include <cstddef>

#include "defaults.hpp"
#include "potential.hpp"

namespace halfline {

struct ode_tolerance {
    double rel = defaults::ode_rel();
    double abs = defaults::ode_abs();

    void validate() const;  // throws argument_error
};

struct phase_point {
    double x = 0.0;
    double theta = 0.0;
};

// Result of transporting the phase from 0 to X at momentum k.
struct phase_solution {
    double theta = 0.0;          // theta_k(X), with theta_k(0) = 0
    double f = 0.0;              // k*X + theta_k(X)
    double log_amplitude = 0.0;  // log R(X) - log R(0), diagnostic only
    double err_estimate = 0.0;   // sum of accepted local error estimates on theta
    std::size_t steps = 0;
    std::size_t rejected = 0;
    std::vector<phase_point> checkpoints;  // sampled (x, theta), if requested
};

// Integrates theta' = (V(x)/2k) * (cos(2kx + 2*theta) - 1) with an embedded
// RK5(4) pair, restarting at every discontinuity of V so no step straddles a
// jump. E = k^2 is a Dirichlet eigenvalue of the operator truncated at X
// exactly when f(k, X) is an integer multiple of pi.
class prufer_integrator {
public:
    explicit prufer_integrator(const potential& V, ode_tolerance tol = {});

    // max_checkpoints > 0 records up to that many (x, theta) samples taken at
    // accepted step boundaries, thinned evenly.
    phase_solution integrate_phase(double k, double X,
                                   std::size_t max_checkpoints = 0) const;
    double f_at(double k, double X) const;

    const ode_tolerance& tolerance() const { return tol_; }

private:
    void advance_segment(double k, double lo, double hi, double state[2],
                         phase_solution& out, bool record) const;

    const potential* V_;
    ode_tolerance tol_;
};

// Lower bound on f_beta(X) - f_alpha(X) that needs only the mass of |V|:
// (beta - alpha) * X - (1/alpha + 1/beta) * integral_0^X |V|.
double phase_difference_bound(const potential& V, double alpha, double beta,
                              double X);

}  // namespace halfline

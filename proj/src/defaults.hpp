#pragma once

#include <cstdlib>

namespace halfline::defaults {

// Default tolerances. Each can be overridden through an environment
// variable, read once at first use:
//   HALFLINE_ODE_RTOL  relative tolerance of the phase integrator
//   HALFLINE_ODE_ATOL  absolute tolerance of the phase integrator
//   HALFLINE_ROOT_TOL  phase residual target of the eigenvalue refinement

inline double env_or(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    double parsed = std::strtod(v, &end);
    return (end != v && parsed > 0.0) ? parsed : fallback;
}

inline double ode_rel() {
    static const double v = env_or("HALFLINE_ODE_RTOL", 1e-10);
    return v;
}

inline double ode_abs() {
    static const double v = env_or("HALFLINE_ODE_ATOL", 1e-12);
    return v;
}

inline double root_tol() {
    static const double v = env_or("HALFLINE_ROOT_TOL", 1e-10);
    return v;
}

inline constexpr double quad_abs = 1e-12;
inline constexpr double quad_rel = 1e-10;

}  // namespace halfline::defaults

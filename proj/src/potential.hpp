#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace halfline {

enum class family_kind {
    zero,
    exponential,        // c * exp(-lambda x)
    power,              // c * (1 + x)^(-gamma)
    wigner_von_neumann, // c * sin(omega x) * (1 + x)^(-gamma)
    step_sequence,      // height c (n+1)^(-eta) on [n, n+1)
    bump_train,         // finite list of constant bumps
    random_decaying,    // height c (n+1)^(-eta) u_n on [n, n+1), u_n seeded in [0,1)
};

const char* family_name(family_kind f);
family_kind family_from_name(std::string_view name);  // throws spec_error

// One rectangular bump: height on [lo, hi), zero outside.
struct bump {
    double lo = 0.0;
    double hi = 0.0;
    double height = 0.0;
};

struct potential_spec {
    family_kind family = family_kind::zero;
    double support_start = 0.0;  // V vanishes on [0, support_start)
    double amplitude = 0.0;      // c
    double decay_rate = 0.0;     // lambda
    double exponent = 0.0;       // gamma or eta, depending on family
    double frequency = 0.0;      // omega
    std::uint64_t seed = 0;      // random_decaying
    std::vector<bump> bumps;     // bump_train, ascending and disjoint

    // Throws spec_error naming the offending field.
    void validate() const;

    std::string to_json() const;
    static potential_spec from_json(std::string_view text);
};

// A locally integrable potential on (0, inf). Immutable after construction
// except the integral checkpoint cache, which is append-only and idempotent;
// every method is safe to call concurrently.
class potential {
  public:
    explicit potential(potential_spec spec);

    const potential_spec& spec() const { return spec_; }

    // V(x) for x > 0; right-continuous at breakpoints.
    double eval(double x) const;

    // I(x) = int_0^x |V(t)| dt for x >= 0. Closed form where the family
    // admits one; per-cell quadrature with integer checkpoints otherwise.
    double cumulative_abs(double x) const;

    // Same integral forced through the adaptive quadrature path.
    double cumulative_abs_quadrature(double x) const;

    // v_n = I(n+1) - I(n) for n = 0..count-1.
    std::vector<double> unit_cell_masses(std::size_t count) const;
    double cell_mass(std::size_t n) const;

    // int_n^{n+1} |V(t)|^p dt, p >= 1.
    double abs_power_cell_integral(std::size_t n, double p) const;

    // Points strictly inside (lo, hi) where V jumps or is otherwise
    // non-smooth; ODE integration restarts there.
    std::vector<double> breakpoints_in(double lo, double hi) const;

    // Breakpoints plus interior sign changes of V, where |V| has a kink.
    std::vector<double> quad_splits_in(double lo, double hi) const;

    // V(x) for x >= 0 without the domain check; right-continuous.
    double value_at(double x) const;
    // One-sided limit of V from below; used at the right end of a smooth
    // piece so integration never samples across a jump.
    double value_left_limit(double x) const;

    // Mean of V over [lo, hi]; exact for piecewise-constant families,
    // midpoint value otherwise.
    double average_on(double lo, double hi) const;

    bool piecewise_constant() const;

    // True when V vanishes a.e. on [0, upto].
    bool vanishes_on(double upto) const { return cumulative_abs(upto) == 0.0; }

  private:
    double step_height(double cell_index) const;
    double closed_form_cum(double x) const;
    double quad_cum(double lo, double hi) const;
    void ensure_checkpoints(std::size_t upto) const;

    potential_spec spec_;
    bool has_closed_cum_ = false;

    mutable std::mutex cache_mutex_;
    mutable std::vector<double> checkpoints_;  // checkpoints_[j] = I(j)
    mutable double checkpoint_carry_ = 0.0;    // compensation for the running sum
};

}  // namespace halfline

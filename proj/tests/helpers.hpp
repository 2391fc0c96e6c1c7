#pragma once

#include "potential.hpp"

namespace testpot {

using halfline::family_kind;
using halfline::potential;
using halfline::potential_spec;

inline potential zero() { return potential(potential_spec{}); }

inline potential exponential(double c, double lambda, double s0 = 0.0) {
    potential_spec s;
    s.family = family_kind::exponential;
    s.amplitude = c;
    s.decay_rate = lambda;
    s.support_start = s0;
    return potential(std::move(s));
}

inline potential power(double c, double gamma, double s0 = 0.0) {
    potential_spec s;
    s.family = family_kind::power;
    s.amplitude = c;
    s.exponent = gamma;
    s.support_start = s0;
    return potential(std::move(s));
}

inline potential wigner(double c, double omega, double gamma) {
    potential_spec s;
    s.family = family_kind::wigner_von_neumann;
    s.amplitude = c;
    s.frequency = omega;
    s.exponent = gamma;
    return potential(std::move(s));
}

inline potential step(double c, double eta) {
    potential_spec s;
    s.family = family_kind::step_sequence;
    s.amplitude = c;
    s.exponent = eta;
    return potential(std::move(s));
}

inline potential random_decaying(double c, double eta, std::uint64_t seed) {
    potential_spec s;
    s.family = family_kind::random_decaying;
    s.amplitude = c;
    s.exponent = eta;
    s.seed = seed;
    return potential(std::move(s));
}

inline potential bumps(std::vector<halfline::bump> list) {
    potential_spec s;
    s.family = family_kind::bump_train;
    s.bumps = std::move(list);
    return potential(std::move(s));
}

// Constant c on [0, width): a single bump, so V has compact support and the
// constant-potential eigenvalues n^2 pi^2/X^2 + c are exact references.
inline potential constant(double c, double width) {
    return bumps({{0.0, width, c}});
}

}  // namespace testpot

#include "potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "defaults.hpp"
#include "quadrature.hpp"

namespace halfline {

namespace {

constexpr std::size_t max_checkpoint_cells = 50'000'000;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based draw: cell n is O(1) to reach and identical across runs,
// platforms and thread counts.
double random_unit(std::uint64_t seed, std::uint64_t n) {
    const std::uint64_t bits = splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (n + 1)));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double overlap(double lo, double hi, double a, double b) {
    return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw spec_error(field + ": " + why);
}

}  // namespace

const char* family_name(family_kind f) {
    switch (f) {
        case family_kind::zero: return "zero";
        case family_kind::exponential: return "exponential";
        case family_kind::power: return "power";
        case family_kind::wigner_von_neumann: return "wigner_von_neumann";
        case family_kind::step_sequence: return "step_sequence";
        case family_kind::bump_train: return "bump_train";
        case family_kind::random_decaying: return "random_decaying";
    }
    return "unknown";
}

family_kind family_from_name(std::string_view name) {
    for (family_kind f : {family_kind::zero, family_kind::exponential,
                          family_kind::power, family_kind::wigner_von_neumann,
                          family_kind::step_sequence, family_kind::bump_train,
                          family_kind::random_decaying}) {
        if (name == family_name(f)) return f;
    }
    throw spec_error("family: unknown value '" + std::string(name) + "'");
}

void potential_spec::validate() const {
    if (!std::isfinite(support_start) || support_start < 0.0)
        bad_field("support_start", "must be finite and >= 0");
    auto need_finite = [](double v, const char* field) {
        if (!std::isfinite(v)) bad_field(field, "must be finite");
    };
    switch (family) {
        case family_kind::zero:
            break;
        case family_kind::exponential:
            need_finite(amplitude, "params.c");
            if (!std::isfinite(decay_rate) || decay_rate <= 0.0)
                bad_field("params.lambda", "must be > 0");
            break;
        case family_kind::power:
            need_finite(amplitude, "params.c");
            if (!std::isfinite(exponent) || exponent <= 0.0)
                bad_field("params.gamma", "must be > 0");
            break;
        case family_kind::wigner_von_neumann:
            need_finite(amplitude, "params.c");
            if (!std::isfinite(frequency) || frequency <= 0.0)
                bad_field("params.omega", "must be > 0");
            if (!std::isfinite(exponent) || exponent <= 0.0)
                bad_field("params.gamma", "must be > 0");
            break;
        case family_kind::step_sequence:
        case family_kind::random_decaying:
            need_finite(amplitude, "params.c");
            if (!std::isfinite(exponent) || exponent < 0.0)
                bad_field("params.eta", "malformed sequence rule: must be >= 0");
            break;
        case family_kind::bump_train: {
            double prev_hi = 0.0;
            for (std::size_t i = 0; i < bumps.size(); ++i) {
                const bump& b = bumps[i];
                const std::string field = "params.bumps[" + std::to_string(i) + "]";
                if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !std::isfinite(b.height))
                    bad_field(field, "entries must be finite");
                if (b.lo < 0.0) bad_field(field, "lo must be >= 0");
                if (!(b.lo < b.hi)) bad_field(field, "requires lo < hi");
                if (i > 0 && b.lo < prev_hi)
                    bad_field(field, "bumps must be ascending and disjoint");
                prev_hi = b.hi;
            }
            break;
        }
    }
}

std::string potential_spec::to_json() const {
    nlohmann::json params = nlohmann::json::object();
    switch (family) {
        case family_kind::zero:
            break;
        case family_kind::exponential:
            params["c"] = amplitude;
            params["lambda"] = decay_rate;
            break;
        case family_kind::power:
            params["c"] = amplitude;
            params["gamma"] = exponent;
            break;
        case family_kind::wigner_von_neumann:
            params["c"] = amplitude;
            params["omega"] = frequency;
            params["gamma"] = exponent;
            break;
        case family_kind::step_sequence:
            params["c"] = amplitude;
            params["eta"] = exponent;
            break;
        case family_kind::random_decaying:
            params["c"] = amplitude;
            params["eta"] = exponent;
            params["seed"] = seed;
            break;
        case family_kind::bump_train: {
            auto arr = nlohmann::json::array();
            for (const bump& b : bumps) arr.push_back({b.lo, b.hi, b.height});
            params["bumps"] = std::move(arr);
            break;
        }
    }
    nlohmann::json doc{{"family", family_name(family)},
                       {"params", std::move(params)},
                       {"support_start", support_start}};
    return doc.dump();
}

potential_spec potential_spec::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw spec_error(std::string("potential spec: invalid document: ") + e.what());
    }
    if (!doc.is_object()) throw spec_error("potential spec: expected an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "family" && key != "params" && key != "support_start")
            bad_field(key, "unknown field");
    }
    if (!doc.contains("family") || !doc["family"].is_string())
        bad_field("family", "required string");

    potential_spec spec;
    spec.family = family_from_name(doc["family"].get<std::string>());
    if (doc.contains("support_start")) {
        if (!doc["support_start"].is_number())
            bad_field("support_start", "must be a number");
        spec.support_start = doc["support_start"].get<double>();
    }

    nlohmann::json params = nlohmann::json::object();
    if (doc.contains("params")) {
        if (!doc["params"].is_object()) bad_field("params", "must be an object");
        params = doc["params"];
    }
    auto take_number = [&params](const char* key, bool required, double fallback) {
        if (!params.contains(key)) {
            if (required) bad_field(std::string("params.") + key, "required");
            return fallback;
        }
        if (!params[key].is_number())
            bad_field(std::string("params.") + key, "must be a number");
        double v = params[key].get<double>();
        params.erase(key);
        return v;
    };

    switch (spec.family) {
        case family_kind::zero:
            break;
        case family_kind::exponential:
            spec.amplitude = take_number("c", true, 0.0);
            spec.decay_rate = take_number("lambda", true, 0.0);
            break;
        case family_kind::power:
            spec.amplitude = take_number("c", true, 0.0);
            spec.exponent = take_number("gamma", true, 0.0);
            break;
        case family_kind::wigner_von_neumann:
            spec.amplitude = take_number("c", true, 0.0);
            spec.frequency = take_number("omega", true, 0.0);
            spec.exponent = take_number("gamma", true, 0.0);
            break;
        case family_kind::step_sequence:
            spec.amplitude = take_number("c", true, 0.0);
            spec.exponent = take_number("eta", true, 0.0);
            break;
        case family_kind::random_decaying:
            spec.amplitude = take_number("c", true, 0.0);
            spec.exponent = take_number("eta", true, 0.0);
            if (!params.contains("seed") || !params["seed"].is_number_integer())
                bad_field("params.seed", "required integer");
            spec.seed = params["seed"].get<std::uint64_t>();
            params.erase("seed");
            break;
        case family_kind::bump_train: {
            if (!params.contains("bumps") || !params["bumps"].is_array())
                bad_field("params.bumps", "required array of [lo, hi, height]");
            std::size_t i = 0;
            for (const auto& entry : params["bumps"]) {
                const std::string field = "params.bumps[" + std::to_string(i) + "]";
                if (!entry.is_array() || entry.size() != 3)
                    bad_field(field, "expected [lo, hi, height]");
                for (const auto& e : entry)
                    if (!e.is_number()) bad_field(field, "entries must be numbers");
                spec.bumps.push_back({entry[0].get<double>(), entry[1].get<double>(),
                                      entry[2].get<double>()});
                ++i;
            }
            params.erase("bumps");
            break;
        }
    }
    for (const auto& [key, value] : params.items()) {
        (void)value;
        bad_field("params." + key, std::string("unknown field for family ") +
                                       family_name(spec.family));
    }
    spec.validate();
    return spec;
}

potential::potential(potential_spec spec) : spec_(std::move(spec)) {
    spec_.validate();
    std::sort(spec_.bumps.begin(), spec_.bumps.end(),
              [](const bump& a, const bump& b) { return a.lo < b.lo; });
    switch (spec_.family) {
        case family_kind::zero:
        case family_kind::exponential:
        case family_kind::power:
        case family_kind::bump_train:
            has_closed_cum_ = true;
            break;
        default:
            has_closed_cum_ = false;
            break;
    }
    checkpoints_.push_back(0.0);  // I(0) = 0
}

double potential::step_height(double cell_index) const {
    double h = spec_.amplitude * std::pow(cell_index + 1.0, -spec_.exponent);
    if (spec_.family == family_kind::random_decaying)
        h *= random_unit(spec_.seed, static_cast<std::uint64_t>(cell_index));
    return h;
}

double potential::value_at(double x) const {
    if (x < spec_.support_start) return 0.0;
    switch (spec_.family) {
        case family_kind::zero:
            return 0.0;
        case family_kind::exponential:
            return spec_.amplitude * std::exp(-spec_.decay_rate * x);
        case family_kind::power:
            return spec_.amplitude * std::pow(1.0 + x, -spec_.exponent);
        case family_kind::wigner_von_neumann:
            return spec_.amplitude * std::sin(spec_.frequency * x) *
                   std::pow(1.0 + x, -spec_.exponent);
        case family_kind::step_sequence:
        case family_kind::random_decaying:
            return step_height(std::floor(x));
        case family_kind::bump_train: {
            for (const bump& b : spec_.bumps) {
                if (x < b.lo) break;
                if (x < b.hi) return b.height;
            }
            return 0.0;
        }
    }
    return 0.0;
}

double potential::value_left_limit(double x) const {
    if (x <= spec_.support_start) return 0.0;
    switch (spec_.family) {
        case family_kind::step_sequence:
        case family_kind::random_decaying: {
            double cell = std::floor(x);
            if (cell == x) cell -= 1.0;
            if (cell < 0.0) return 0.0;
            return step_height(cell);
        }
        case family_kind::bump_train: {
            for (const bump& b : spec_.bumps) {
                if (x <= b.lo) break;
                if (x <= b.hi) return b.height;
            }
            return 0.0;
        }
        default:
            return value_at(x);
    }
}

double potential::eval(double x) const {
    if (!std::isfinite(x) || x <= 0.0)
        throw domain_error("eval: x must be finite and > 0");
    return value_at(x);
}

double potential::closed_form_cum(double x) const {
    const double s0 = spec_.support_start;
    switch (spec_.family) {
        case family_kind::zero:
            return 0.0;
        case family_kind::exponential: {
            if (x <= s0) return 0.0;
            const double c = std::abs(spec_.amplitude);
            const double l = spec_.decay_rate;
            return (c / l) * (std::exp(-l * s0) - std::exp(-l * x));
        }
        case family_kind::power: {
            if (x <= s0) return 0.0;
            const double c = std::abs(spec_.amplitude);
            const double g = spec_.exponent;
            if (g == 1.0) return c * (std::log1p(x) - std::log1p(s0));
            return c * (std::pow(1.0 + x, 1.0 - g) - std::pow(1.0 + s0, 1.0 - g)) /
                   (1.0 - g);
        }
        case family_kind::bump_train: {
            double sum = 0.0;
            for (const bump& b : spec_.bumps)
                sum += std::abs(b.height) * overlap(b.lo, b.hi, s0, x);
            return sum;
        }
        default:
            throw error("closed_form_cum: family has no closed form");
    }
}

double potential::quad_cum(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    const std::vector<double> splits = quad_splits_in(lo, hi);
    const int budget = std::max<int>(4000, 4 * static_cast<int>(splits.size()) + 64);
    auto integrand = [this](double t) { return std::abs(value_at(t)); };
    return integrate_adaptive(integrand, lo, hi, splits, defaults::quad_abs,
                              defaults::quad_rel, budget)
        .value;
}

double potential::cell_mass(std::size_t n) const {
    const double lo = static_cast<double>(n);
    const double hi = lo + 1.0;
    const double s0 = spec_.support_start;
    switch (spec_.family) {
        case family_kind::zero:
            return 0.0;
        case family_kind::exponential:
        case family_kind::power:
        case family_kind::bump_train:
            return closed_form_cum(hi) - closed_form_cum(lo);
        case family_kind::step_sequence:
        case family_kind::random_decaying:
            return std::abs(step_height(lo)) * overlap(lo, hi, s0, hi);
        case family_kind::wigner_von_neumann: {
            const double from = std::max(lo, s0);
            return from >= hi ? 0.0 : quad_cum(from, hi);
        }
    }
    return 0.0;
}

void potential::ensure_checkpoints(std::size_t upto) const {
    // caller holds cache_mutex_
    if (upto >= max_checkpoint_cells)
        throw argument_error("cumulative_abs: x exceeds the checkpoint cache limit");
    while (checkpoints_.size() <= upto) {
        const std::size_t n = checkpoints_.size() - 1;
        // compensated running sum; extension is deterministic, so concurrent
        // extensions would write identical values
        double y = cell_mass(n) - checkpoint_carry_;
        double t = checkpoints_.back() + y;
        checkpoint_carry_ = (t - checkpoints_.back()) - y;
        checkpoints_.push_back(t);
    }
}

double potential::cumulative_abs(double x) const {
    if (!std::isfinite(x) || x < 0.0)
        throw domain_error("cumulative_abs: x must be finite and >= 0");
    if (x == 0.0) return 0.0;
    if (has_closed_cum_) return closed_form_cum(x);

    const double cell = std::floor(x);
    const std::size_t n = static_cast<std::size_t>(std::min(cell, 5e7));
    double base;
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        ensure_checkpoints(n);
        base = checkpoints_[n];
    }
    if (x == cell) return base;

    const double s0 = spec_.support_start;
    switch (spec_.family) {
        case family_kind::step_sequence:
        case family_kind::random_decaying:
            return base + std::abs(step_height(cell)) * overlap(cell, x, s0, x);
        case family_kind::wigner_von_neumann: {
            const double from = std::max(cell, s0);
            return from >= x ? base : base + quad_cum(from, x);
        }
        default:
            return base;  // unreachable: closed-form families handled above
    }
}

double potential::cumulative_abs_quadrature(double x) const {
    if (!std::isfinite(x) || x < 0.0)
        throw domain_error("cumulative_abs_quadrature: x must be finite and >= 0");
    return quad_cum(0.0, x);
}

std::vector<double> potential::unit_cell_masses(std::size_t count) const {
    std::vector<double> masses;
    masses.reserve(count);
    for (std::size_t n = 0; n < count; ++n) masses.push_back(cell_mass(n));
    return masses;
}

double potential::abs_power_cell_integral(std::size_t n, double p) const {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw argument_error("abs_power_cell_integral: p must be >= 1");
    const double lo = static_cast<double>(n);
    const double hi = lo + 1.0;
    const double u = std::max(lo, spec_.support_start);
    if (u >= hi) return 0.0;
    const double c = std::abs(spec_.amplitude);
    switch (spec_.family) {
        case family_kind::zero:
            return 0.0;
        case family_kind::exponential: {
            const double lp = spec_.decay_rate * p;
            return std::pow(c, p) * (std::exp(-lp * u) - std::exp(-lp * hi)) / lp;
        }
        case family_kind::power: {
            const double q = spec_.exponent * p;
            if (q == 1.0) return std::pow(c, p) * std::log((1.0 + hi) / (1.0 + u));
            return std::pow(c, p) *
                   (std::pow(1.0 + u, 1.0 - q) - std::pow(1.0 + hi, 1.0 - q)) /
                   (q - 1.0);
        }
        case family_kind::step_sequence:
        case family_kind::random_decaying:
            return std::pow(std::abs(step_height(lo)), p) * (hi - u);
        case family_kind::bump_train: {
            double sum = 0.0;
            for (const bump& b : spec_.bumps)
                sum += std::pow(std::abs(b.height), p) * overlap(b.lo, b.hi, u, hi);
            return sum;
        }
        case family_kind::wigner_von_neumann: {
            const std::vector<double> splits = quad_splits_in(u, hi);
            auto integrand = [this, p](double t) {
                return std::pow(std::abs(value_at(t)), p);
            };
            return integrate_adaptive(integrand, u, hi, splits, defaults::quad_abs,
                                      defaults::quad_rel, 4000)
                .value;
        }
    }
    return 0.0;
}

std::vector<double> potential::breakpoints_in(double lo, double hi) const {
    std::vector<double> pts;
    const double s0 = spec_.support_start;
    if (s0 > 0.0 && s0 > lo && s0 < hi) pts.push_back(s0);
    switch (spec_.family) {
        case family_kind::step_sequence:
        case family_kind::random_decaying: {
            double n = std::floor(std::max(lo, s0)) + 1.0;
            for (; n < hi; n += 1.0)
                if (n > lo && n > s0) pts.push_back(n);
            break;
        }
        case family_kind::bump_train: {
            for (const bump& b : spec_.bumps) {
                for (double edge : {b.lo, b.hi})
                    if (edge > lo && edge < hi && edge >= s0) pts.push_back(edge);
            }
            break;
        }
        default:
            break;
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<double> potential::quad_splits_in(double lo, double hi) const {
    std::vector<double> pts = breakpoints_in(lo, hi);
    if (spec_.family == family_kind::wigner_von_neumann) {
        const double period = std::acos(-1.0) / spec_.frequency;
        double j = std::ceil(std::max(lo, spec_.support_start) / period);
        if (j < 1.0) j = 1.0;
        for (double z = j * period; z < hi; z = (++j) * period)
            if (z > lo && z > spec_.support_start) pts.push_back(z);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }
    return pts;
}

double potential::average_on(double lo, double hi) const {
    if (!(hi > lo)) throw argument_error("average_on: requires lo < hi");
    const double s0 = spec_.support_start;
    switch (spec_.family) {
        case family_kind::zero:
            return 0.0;
        case family_kind::step_sequence:
        case family_kind::random_decaying: {
            double sum = 0.0;
            for (double n = std::floor(std::max(lo, 0.0)); n < hi; n += 1.0) {
                const double w = overlap(std::max(n, s0), n + 1.0, lo, hi);
                if (w > 0.0) sum += step_height(n) * w;
            }
            return sum / (hi - lo);
        }
        case family_kind::bump_train: {
            double sum = 0.0;
            for (const bump& b : spec_.bumps)
                sum += b.height * overlap(std::max(b.lo, s0), b.hi, lo, hi);
            return sum / (hi - lo);
        }
        default:
            return value_at(0.5 * (lo + hi));
    }
}

bool potential::piecewise_constant() const {
    switch (spec_.family) {
        case family_kind::zero:
        case family_kind::step_sequence:
        case family_kind::random_decaying:
        case family_kind::bump_train:
            return true;
        default:
            return false;
    }
}

}  // namespace halfline

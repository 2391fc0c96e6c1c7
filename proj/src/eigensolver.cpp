#include "eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "parallel.hpp"

namespace halfline {

namespace {

constexpr double pi = 3.14159265358979323846;

struct bracket {
    double a, fa, b, fb;
    long m;  // target multiple: root of f(k) - m*pi
};

// Secant steps inside a sign-change bracket, falling back to bisection when
// the secant point leaves the bracket or stalls. Returns the refined k and
// the final residual |f - m*pi|.
std::pair<double, double> refine_crossing(const prufer_integrator& integ,
                                          double X, bracket br,
                                          double root_tol) {
    const double target = double(br.m) * pi;
    double ga = br.fa - target;
    double gb = br.fb - target;
    if (std::abs(ga) < root_tol) return {br.a, std::abs(ga)};
    if (std::abs(gb) < root_tol) return {br.b, std::abs(gb)};

    double a = br.a, b = br.b;
    double best_k = std::abs(ga) < std::abs(gb) ? a : b;
    double best_g = std::min(std::abs(ga), std::abs(gb));
    for (int it = 0; it < 100; ++it) {
        double c = b - gb * (b - a) / (gb - ga);
        const double width = b - a;
        if (!std::isfinite(c) || c <= a + 0.01 * width || c >= b - 0.01 * width)
            c = 0.5 * (a + b);
        const double gc = integ.f_at(c, X) - target;
        if (std::abs(gc) < best_g) {
            best_g = std::abs(gc);
            best_k = c;
        }
        if (std::abs(gc) < root_tol) return {c, std::abs(gc)};
        if ((ga < 0.0) == (gc < 0.0)) {
            a = c;
            ga = gc;
        } else {
            b = c;
            gb = gc;
        }
        if (b - a < 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, b))
            break;  // bracket at float resolution; best_g is what the data allows
    }
    return {best_k, best_g};
}

// Multiples of pi strictly inside (lo, hi] — the half-open convention keeps a
// crossing that lands exactly on a shared grid value in one interval only.
void multiples_between(double lo, double hi, std::vector<long>& out) {
    out.clear();
    const long first = static_cast<long>(std::floor(lo / pi)) + 1;
    const long last = static_cast<long>(std::floor(hi / pi));
    for (long m = first; m <= last; ++m) out.push_back(m);
}

double fd_sample(const potential& V, double x, double h) {
    if (V.piecewise_constant()) return V.average_on(x - 0.5 * h, x + 0.5 * h);
    return V.value_at(x);
}

int sturm_count_below(const std::vector<double>& d, double e2, double sigma,
                      double pivmin) {
    int count = 0;
    double q = d[0] - sigma;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (std::abs(q) < pivmin) q = -pivmin;
        q = d[i] - sigma - e2 / q;
        if (q < 0.0) ++count;
    }
    return count;
}

// idx-th smallest eigenvalue (1-based) via bisection on the Sturm count.
double sturm_bisect(const std::vector<double>& d, double e2, double pivmin,
                    int idx, double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count_below(d, e2, mid, pivmin) >= idx)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() *
                               std::max(1.0, std::max(std::abs(lo), std::abs(hi))))
            break;
    }
    return 0.5 * (lo + hi);
}

// Neville table evaluated at t = 0; t holds h^2 per mesh.
double extrapolate_to_zero(std::vector<double> t, std::vector<double> y,
                           double* last_correction) {
    const std::size_t n = y.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            y[i] = y[i + 1] + (y[i + 1] - y[i]) * t[i + level] /
                                  (t[i] - t[i + level]);
        }
    }
    if (last_correction) {
        // difference between full-depth and depth-minus-one extrapolants
        *last_correction = n >= 2 ? std::abs(y[0] - y[1]) : 0.0;
    }
    return y[0];
}

}  // namespace

const char* method_name(eigen_method m) {
    return m == eigen_method::prufer_shooting ? "prufer_shooting" : "fd_oracle";
}

void oracle_config::validate() const {
    if (mesh_sizes.empty())
        throw argument_error("oracle_config.mesh_sizes: must be nonempty");
    double prev = std::numeric_limits<double>::infinity();
    for (double h : mesh_sizes) {
        if (!std::isfinite(h) || h <= 0.0)
            throw argument_error("oracle_config.mesh_sizes: entries must be > 0");
        if (h >= prev)
            throw argument_error(
                "oracle_config.mesh_sizes: must be strictly decreasing");
        prev = h;
    }
}

oracle_config default_oracle_config(double X, double E_hi) {
    if (!std::isfinite(X) || X <= 0.0)
        throw argument_error("default_oracle_config: X must be > 0");
    const double osc = 1.0 / (10.0 * std::sqrt(std::max(E_hi, 1.0)));
    double h = std::min(osc, X / 200.0);
    h = std::max(h, X / 2e6);
    return oracle_config{{4.0 * h, 2.0 * h, h}, true};
}

eigenvalue_set eigenvalues_in_window(const potential& V, double X, double k_lo,
                                     double k_hi, const solver_options& opt) {
    if (!std::isfinite(X) || X <= 0.0)
        throw argument_error("eigenvalues_in_window: X must be finite and > 0");
    if (!std::isfinite(k_lo) || k_lo <= 0.0)
        throw argument_error("eigenvalues_in_window: k_lo must be > 0");
    if (!std::isfinite(k_hi) || k_hi < k_lo)
        throw argument_error("eigenvalues_in_window: requires k_hi >= k_lo");

    eigenvalue_set out;
    out.X = X;
    out.k_lo = k_lo;
    out.k_hi = k_hi;

    if (k_hi - k_lo < 2.0 * opt.root_tol) {
        out.warnings.push_back("degenerate window: k_hi - k_lo < 2*root_tol; "
                               "returning empty set");
        return out;
    }

    const prufer_integrator integ(V, opt.ode);
    const double budget = V.cumulative_abs(X) / (k_lo * X);
    const double pitch_target = (pi / (4.0 * X)) / (1.0 + budget);
    const std::size_t cells = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil((k_hi - k_lo) / pitch_target)));
    const double pitch = (k_hi - k_lo) / double(cells);

    std::vector<double> ks(cells + 1), fs(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        ks[i] = i == cells ? k_hi : k_lo + double(i) * pitch;
    parallel_for(cells + 1, opt.threads,
                 [&](std::size_t i) { fs[i] = integ.f_at(ks[i], X); });

    // escalate any grid gap whose phase jump exceeds pi before bracketing
    std::vector<bracket> brackets;
    std::vector<long> ms;
    struct seg {
        double a, fa, b, fb;
        int depth;
    };
    std::vector<seg> stack;
    for (std::size_t i = 0; i + 1 <= cells; ++i)
        stack.push_back({ks[i], fs[i], ks[i + 1], fs[i + 1], 0});
    // preserve ascending-k order of brackets: process stack as LIFO of
    // reversed pushes instead — simpler to sort at the end, so just recurse
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
        seg s = stack.back();
        stack.pop_back();
        if (std::abs(s.fb - s.fa) > pi) {
            if (s.depth >= opt.max_escalations)
                throw numerical_error(
                    "eigenvalues_in_window: grid gap still jumps by more than "
                    "pi after " +
                    std::to_string(opt.max_escalations) + " pitch halvings");
            const double km = 0.5 * (s.a + s.b);
            const double fm = integ.f_at(km, X);
            stack.push_back({km, fm, s.b, s.fb, s.depth + 1});
            stack.push_back({s.a, s.fa, km, fm, s.depth + 1});
            continue;
        }
        const bool increasing = s.fb >= s.fa;
        multiples_between(increasing ? s.fa : s.fb, increasing ? s.fb : s.fa,
                          ms);
        for (long m : ms) brackets.push_back({s.a, s.fa, s.b, s.fb, m});
    }

    std::vector<std::pair<double, double>> found(brackets.size());
    parallel_for(brackets.size(), opt.threads, [&](std::size_t i) {
        found[i] = refine_crossing(integ, X, brackets[i], opt.root_tol);
    });
    std::sort(found.begin(), found.end());

    const double dedupe = 50.0 * opt.root_tol;
    for (const auto& [k, res] : found) {
        if (!out.eigen_momenta.empty() &&
            k - out.eigen_momenta.back() < dedupe)
            continue;
        out.eigen_momenta.push_back(k);
        out.eigen_energies.push_back(k * k);
        out.residuals.push_back(res);
    }
    return out;
}

int crossing_count(const potential& V, double X, double k,
                   const solver_options& opt) {
    if (!std::isfinite(X) || X <= 0.0)
        throw argument_error("crossing_count: X must be finite and > 0");
    if (!std::isfinite(k) || k <= 0.0)
        throw argument_error("crossing_count: k must be > 0");
    const prufer_integrator integ(V, opt.ode);
    const double f = integ.f_at(k, X);
    const double nearest = std::round(f / pi) * pi;
    if (std::abs(f - nearest) < 1e-9)
        throw ambiguous_error(
            "crossing_count: f_k(X) within 1e-9 of a multiple of pi; perturb k");
    return static_cast<int>(std::floor(f / pi));
}

eigenvalue_set fd_oracle_eigenvalues(const potential& V, double X, double E_lo,
                                     double E_hi, const oracle_config& cfg) {
    if (!std::isfinite(X) || X <= 0.0)
        throw argument_error("fd_oracle_eigenvalues: X must be finite and > 0");
    if (!(E_lo < E_hi))
        throw argument_error("fd_oracle_eigenvalues: requires E_lo < E_hi");
    cfg.validate();

    eigenvalue_set out;
    out.X = X;
    out.k_lo = std::sqrt(std::max(E_lo, 0.0));
    out.k_hi = std::sqrt(std::max(E_hi, 0.0));
    out.method = eigen_method::fd_oracle;

    const std::size_t meshes = cfg.mesh_sizes.size();
    std::vector<std::vector<double>> diag(meshes);
    std::vector<double> e2(meshes), hsq(meshes), gl(meshes), gu(meshes),
        pivmin(meshes);

    for (std::size_t j = 0; j < meshes; ++j) {
        const double n_real = std::round(X / cfg.mesh_sizes[j]) - 1.0;
        if (n_real > 5e6)
            throw argument_error(
                "fd_oracle_eigenvalues: mesh too fine for this X");
        const std::size_t n = static_cast<std::size_t>(std::max(15.0, n_real));
        const double h = X / double(n + 1);
        hsq[j] = h * h;
        e2[j] = 1.0 / (hsq[j] * hsq[j]);
        diag[j].resize(n);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = double(i + 1) * h;
            const double v = 2.0 / hsq[j] + fd_sample(V, x, h);
            diag[j][i] = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        gl[j] = lo - 2.0 / hsq[j] - 1.0;
        gu[j] = hi + 2.0 / hsq[j] + 1.0;
        pivmin[j] = std::max(e2[j], 1.0) * std::numeric_limits<double>::min() /
                    std::numeric_limits<double>::epsilon();
    }

    // eigenvalue indices are taken from the finest mesh and matched by index
    // on the coarser ones
    const std::size_t fine = meshes - 1;
    const int below_lo =
        sturm_count_below(diag[fine], e2[fine], E_lo, pivmin[fine]);
    const int below_hi =
        sturm_count_below(diag[fine], e2[fine], E_hi, pivmin[fine]);

    for (int idx = below_lo + 1; idx <= below_hi; ++idx) {
        std::vector<double> lambdas(meshes);
        for (std::size_t j = 0; j < meshes; ++j)
            lambdas[j] = sturm_bisect(diag[j], e2[j], pivmin[j], idx, gl[j],
                                      gu[j]);
        double E, drift;
        if (cfg.extrapolate && meshes >= 2) {
            E = extrapolate_to_zero(hsq, lambdas, &drift);
        } else {
            E = lambdas[fine];
            drift = meshes >= 2 ? std::abs(lambdas[fine] - lambdas[fine - 1])
                                : 0.0;
        }
        const double btol = 1e-10 * std::max(1.0, std::abs(E));
        if (std::abs(E - E_lo) < btol || std::abs(E - E_hi) < btol)
            out.warnings.push_back(
                "window boundary within bisection tolerance of eigenvalue near E = " +
                std::to_string(E));
        if (E < E_lo || E > E_hi) continue;
        out.eigen_momenta.push_back(
            E >= 0.0 ? std::sqrt(E) : std::numeric_limits<double>::quiet_NaN());
        out.eigen_energies.push_back(E);
        out.residuals.push_back(drift);
    }
    return out;
}

}  // namespace halfline

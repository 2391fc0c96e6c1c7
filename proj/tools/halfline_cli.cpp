// halfline CLI: eigenvalue tables, spacing-bound verification, norm reports.
// Exit codes: 0 = all checks pass, 1 = a verified inequality was violated,
// 2 = configuration error, 3 = numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "halfline.h"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_violation = 1;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

int exit_for(hl_status status) {
    switch (status) {
        case HL_OK:
            return exit_pass;
        case HL_ERR_INVALID_ARGUMENT:
        case HL_ERR_BAD_SPEC:
        case HL_ERR_DOMAIN:
            return exit_config;
        default:
            return exit_numerical;
    }
}

[[nodiscard]] int fail(hl_status status) {
    std::cerr << "error: " << hl_last_error() << "\n";
    return exit_for(status);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct owned_string {
    char* ptr = nullptr;
    ~owned_string() { hl_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct potential_handle {
    hl_potential* ptr = nullptr;
    ~potential_handle() { hl_potential_destroy(ptr); }
};

struct eigenset_handle {
    hl_eigenset* ptr = nullptr;
    ~eigenset_handle() { hl_eigenset_destroy(ptr); }
};

struct bound_report_handle {
    hl_bound_report* ptr = nullptr;
    ~bound_report_handle() { hl_bound_report_destroy(ptr); }
};

struct norm_report_handle {
    hl_norm_report* ptr = nullptr;
    ~norm_report_handle() { hl_norm_report_destroy(ptr); }
};

// Shared flags: where the potential comes from and where output goes.
struct io_options {
    std::string potential_path;
    std::string potential_json;
    std::string out_path;
    std::string dump_spec_path;
    std::string format = "csv";
    std::optional<long long> seed;
    int threads = 0;
};

void add_io_options(CLI::App* cmd, io_options& io, bool with_format = true) {
    auto* file = cmd->add_option("--potential", io.potential_path,
                                 "Path to a potential spec JSON document");
    auto* inline_json = cmd->add_option("--potential-json", io.potential_json,
                                        "Inline potential spec JSON");
    file->excludes(inline_json);
    cmd->add_option("--out,-o", io.out_path,
                    "Output file (defaults to stdout)");
    cmd->add_option("--dump-spec", io.dump_spec_path,
                    "Write the normalized potential spec JSON to this path");
    if (with_format)
        cmd->add_option("--format", io.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", io.seed,
                    "Override the seed of a random_decaying potential");
    cmd->add_option("--threads", io.threads,
                    "Worker threads (0 = hardware concurrency)");
}

int load_potential(const io_options& io, potential_handle& pot,
                   bool allow_default_zero = false) {
    std::string text = io.potential_json;
    if (!io.potential_path.empty()) {
        std::ifstream in(io.potential_path);
        if (!in) {
            std::cerr << "error: cannot read " << io.potential_path << "\n";
            return exit_config;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    if (text.empty()) {
        if (!allow_default_zero) {
            std::cerr << "error: --potential or --potential-json is required\n";
            return exit_config;
        }
        text = R"({"family":"zero"})";
    }
    if (io.seed) {
        nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            std::cerr << "error: potential spec: invalid document\n";
            return exit_config;
        }
        if (doc.value("family", "") != "random_decaying") {
            std::cerr << "error: --seed only applies to random_decaying\n";
            return exit_config;
        }
        doc["params"]["seed"] = *io.seed;
        text = doc.dump();
    }
    if (hl_status s = hl_potential_create_json(text.c_str(), &pot.ptr);
        s != HL_OK)
        return fail(s);
    if (!io.dump_spec_path.empty()) {
        char* spec = nullptr;
        if (hl_status s = hl_potential_spec_json(pot.ptr, &spec); s != HL_OK)
            return fail(s);
        std::ofstream out(io.dump_spec_path, std::ios::binary);
        const bool ok = bool(out);
        if (ok) out << spec;
        hl_string_free(spec);
        if (!ok) {
            std::cerr << "error: cannot write " << io.dump_spec_path << "\n";
            return exit_config;
        }
    }
    return exit_pass;
}

int write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return exit_pass;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return exit_config;
    }
    out << content;
    return exit_pass;
}

// ---- eigenvalues ---------------------------------------------------------

struct eigenvalues_args {
    io_options io;
    double X = 0.0;
    double k_lo = 0.0, k_hi = 0.0;
    double E_lo = 0.0, E_hi = 0.0;
    bool has_energy_window = false;
    bool with_oracle = false;
    double root_tol = 0.0;
};

int run_eigenvalues(const eigenvalues_args& args) {
    potential_handle pot;
    if (int rc = load_potential(args.io, pot); rc != exit_pass) return rc;

    if (args.has_energy_window) {
        // energy window goes straight to the finite-difference oracle, which
        // is the only route covering E < 0
        eigenset_handle set;
        if (hl_status s = hl_fd_eigenvalues(pot.ptr, args.X, args.E_lo,
                                            args.E_hi, nullptr, 0, 1, &set.ptr);
            s != HL_OK)
            return fail(s);
        owned_string text;
        hl_status s = args.io.format == "json"
                          ? hl_eigenset_json(set.ptr, &text.ptr)
                          : hl_eigenset_csv(set.ptr, &text.ptr);
        if (s != HL_OK) return fail(s);
        return write_output(args.io.out_path, text.str());
    }

    eigenset_handle set;
    if (hl_status s =
            hl_eigenvalues_in_window(pot.ptr, args.X, args.k_lo, args.k_hi,
                                     args.root_tol, args.io.threads, &set.ptr);
        s != HL_OK)
        return fail(s);

    if (!args.with_oracle) {
        owned_string text;
        hl_status s = args.io.format == "json"
                          ? hl_eigenset_json(set.ptr, &text.ptr)
                          : hl_eigenset_csv(set.ptr, &text.ptr);
        if (s != HL_OK) return fail(s);
        return write_output(args.io.out_path, text.str());
    }

    eigenset_handle oracle;
    if (hl_status s = hl_fd_eigenvalues(pot.ptr, args.X,
                                        args.k_lo * args.k_lo,
                                        args.k_hi * args.k_hi, nullptr, 0, 1,
                                        &oracle.ptr);
        s != HL_OK)
        return fail(s);
    if (hl_eigenset_size(set.ptr) != hl_eigenset_size(oracle.ptr)) {
        std::cerr << "check failed: eigenvalue count mismatch (phase "
                  << hl_eigenset_size(set.ptr) << ", oracle "
                  << hl_eigenset_size(oracle.ptr) << ")\n";
        return exit_violation;
    }
    owned_string text;
    if (hl_status s =
            hl_eigenset_comparison_csv(set.ptr, oracle.ptr, &text.ptr);
        s != HL_OK)
        return fail(s);
    return write_output(args.io.out_path, text.str());
}

// ---- verify-bound ----------------------------------------------------------

struct verify_args {
    io_options io;
    double a = 1.0;
    std::vector<double> X_values;
    double k_hi = 10.0;
    double stride_fraction = 0.25;
    double h_scale = 1.0;
};

int run_verify(const verify_args& args) {
    potential_handle pot;
    if (int rc = load_potential(args.io, pot); rc != exit_pass) return rc;

    bound_report_handle report;
    if (hl_status s = hl_verify_bound(
            pot.ptr, args.a, args.X_values.data(), args.X_values.size(),
            args.k_hi, args.stride_fraction, args.h_scale, args.io.threads,
            &report.ptr);
        s != HL_OK)
        return fail(s);

    owned_string text;
    hl_status s = args.io.format == "json"
                      ? hl_bound_report_json(report.ptr, &text.ptr)
                      : hl_bound_report_csv(report.ptr, &text.ptr);
    if (s != HL_OK) return fail(s);
    if (int rc = write_output(args.io.out_path, text.str()); rc != exit_pass)
        return rc;

    const size_t violations = hl_bound_report_violation_count(report.ptr);
    std::cerr << "checked " << hl_bound_report_windows_checked(report.ptr)
              << " windows, " << violations << " violations\n";
    return violations == 0 ? exit_pass : exit_violation;
}

// ---- spacing ---------------------------------------------------------------

struct spacing_args {
    io_options io;
    double X = 0.0;
    double a = 1.0;
    double k_lo = 0.0, k_hi = 0.0;
};

int run_spacing(const spacing_args& args) {
    potential_handle pot;
    if (int rc = load_potential(args.io, pot); rc != exit_pass) return rc;

    double h = 0.0;
    if (hl_status s = hl_spacing_bound(pot.ptr, args.a, args.X, &h);
        s != HL_OK)
        return fail(s);

    eigenset_handle set;
    if (hl_status s =
            hl_eigenvalues_in_window(pot.ptr, args.X, args.k_lo, args.k_hi,
                                     0.0, args.io.threads, &set.ptr);
        s != HL_OK)
        return fail(s);

    owned_string text;
    if (hl_status s = hl_eigenset_spacing_csv(set.ptr, h, &text.ptr);
        s != HL_OK)
        return fail(s);
    if (int rc = write_output(args.io.out_path, text.str()); rc != exit_pass)
        return rc;

    const size_t n = hl_eigenset_size(set.ptr);
    if (n < 2) {
        std::cerr << "warning: fewer than 2 eigenvalues in window; "
                     "no spacings to report\n";
        return exit_pass;
    }
    double max_ratio = 0.0, prev_k = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double k = 0.0;
        hl_eigenset_get(set.ptr, i, &k, nullptr, nullptr);
        if (i > 0) max_ratio = std::max(max_ratio, (k - prev_k) / h);
        prev_k = k;
    }
    std::cerr << "max spacing / h = " << fmt17(max_ratio) << "\n";
    return max_ratio <= 1.0 + 1e-6 ? exit_pass : exit_violation;
}

// ---- norms -----------------------------------------------------------------

struct norms_args {
    io_options io;
    double p = 2.0;
    size_t cells = 10000;
};

int run_norms(const norms_args& args) {
    potential_handle pot;
    if (int rc = load_potential(args.io, pot); rc != exit_pass) return rc;

    norm_report_handle report;
    if (hl_status s =
            hl_norm_report_create(pot.ptr, args.p, args.cells, &report.ptr);
        s != HL_OK)
        return fail(s);

    owned_string text;
    hl_status s = args.io.format == "csv"
                      ? hl_norm_report_trace_csv(report.ptr, &text.ptr)
                      : hl_norm_report_json(report.ptr, &text.ptr);
    if (s != HL_OK) return fail(s);
    return write_output(args.io.out_path, text.str());
}

// ---- sweep -----------------------------------------------------------------

struct sweep_args {
    io_options io;
    double a = 1.0;
    std::vector<double> X_values{10.0, 100.0};
    double k_hi = 10.0;
    double stride_fraction = 0.25;
    double h_scale = 1.0;
};

const std::vector<std::pair<std::string, std::string>>& sweep_corpus() {
    static const std::vector<std::pair<std::string, std::string>> corpus = {
        {"zero", R"({"family":"zero"})"},
        {"exponential",
         R"({"family":"exponential","params":{"c":4.0,"lambda":1.0}})"},
        {"power", R"({"family":"power","params":{"c":1.0,"gamma":0.5}})"},
        {"wigner_von_neumann",
         R"({"family":"wigner_von_neumann","params":{"c":2.0,"omega":2.0,"gamma":1.0}})"},
        {"step_sequence",
         R"({"family":"step_sequence","params":{"c":1.0,"eta":0.5}})"},
    };
    return corpus;
}

int run_sweep(const sweep_args& args) {
    std::string summary = "family,X,h,windows,violations,min_count\n";
    size_t total_violations = 0;
    for (const auto& [name, spec] : sweep_corpus()) {
        hl_potential* raw = nullptr;
        if (hl_status s = hl_potential_create_json(spec.c_str(), &raw);
            s != HL_OK)
            return fail(s);
        potential_handle pot{raw};

        bound_report_handle report;
        if (hl_status s = hl_verify_bound(
                pot.ptr, args.a, args.X_values.data(), args.X_values.size(),
                args.k_hi, args.stride_fraction, args.h_scale,
                args.io.threads, &report.ptr);
            s != HL_OK)
            return fail(s);

        for (size_t i = 0; i < hl_bound_report_run_count(report.ptr); ++i) {
            double X = 0.0, h = 0.0, min_margin = 0.0;
            size_t windows = 0;
            long min_count = 0;
            hl_bound_report_run(report.ptr, i, &X, &h, &windows, &min_count,
                                &min_margin);
            summary += name;
            summary += ',';
            summary += fmt17(X);
            summary += ',';
            summary += fmt17(h);
            summary += ',';
            summary += std::to_string(windows);
            summary += ',';
            // per-run violation counts are not exposed individually; report
            // the report-wide count on the last row of each family instead
            summary += std::to_string(
                i + 1 == hl_bound_report_run_count(report.ptr)
                    ? hl_bound_report_violation_count(report.ptr)
                    : 0);
            summary += ',';
            summary += std::to_string(min_count);
            summary += '\n';
        }
        total_violations += hl_bound_report_violation_count(report.ptr);
    }
    if (int rc = write_output(args.io.out_path, summary); rc != exit_pass)
        return rc;
    std::cerr << "sweep total violations: " << total_violations << "\n";
    return total_violations == 0 ? exit_pass : exit_violation;
}

// ---- sharpness ---------------------------------------------------------------

struct sharpness_args {
    double X = 0.0;
    unsigned m = 1;
    double epsilon = 0.0;
};

int run_sharpness(const sharpness_args& args) {
    int empty = 0;
    if (hl_status s = hl_sharpness_probe(args.X, args.m, args.epsilon, &empty);
        s != HL_OK)
        return fail(s);
    std::cout << "sharpness X=" << fmt17(args.X) << " m=" << args.m
              << " epsilon=" << fmt17(args.epsilon) << ": "
              << (empty ? "PASS (window empty)" : "FAIL (eigenvalue found)")
              << "\n";
    return empty ? exit_pass : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet eigenvalues of half-line Schrodinger operators "
                 "and eigenvalue-spacing bound verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("halfline ") + hl_version());

    eigenvalues_args eig;
    auto* cmd_eig = app.add_subcommand(
        "eigenvalues", "Eigenvalue table for one momentum or energy window");
    add_io_options(cmd_eig, eig.io);
    cmd_eig->add_option("-X,--length", eig.X, "Interval length")->required();
    auto* klo = cmd_eig->add_option("--k-lo", eig.k_lo, "Window start (momentum)");
    auto* khi = cmd_eig->add_option("--k-hi", eig.k_hi, "Window end (momentum)");
    auto* elo = cmd_eig->add_option("--E-lo", eig.E_lo,
                                    "Energy window start (oracle route)");
    auto* ehi = cmd_eig->add_option("--E-hi", eig.E_hi,
                                    "Energy window end (oracle route)");
    elo->needs(ehi);
    ehi->needs(elo);
    elo->excludes(klo)->excludes(khi);
    klo->needs(khi);
    cmd_eig->add_flag("--oracle", eig.with_oracle,
                      "Also run the finite-difference oracle and emit a "
                      "comparison table");
    cmd_eig->add_option("--root-tol", eig.root_tol,
                        "Phase-crossing refinement tolerance (0 = default)");

    verify_args ver;
    auto* cmd_ver = app.add_subcommand(
        "verify-bound", "Sliding-window verification of the spacing bound");
    add_io_options(cmd_ver, ver.io);
    cmd_ver->add_option("-a,--momentum-floor", ver.a, "Momentum floor a")
        ->required();
    cmd_ver->add_option("-X,--length", ver.X_values, "Interval lengths")
        ->required()
        ->expected(-1);
    cmd_ver->add_option("--k-hi", ver.k_hi, "Top of the scanned momentum range");
    cmd_ver->add_option("--stride-fraction", ver.stride_fraction,
                        "Window-start step as a fraction of the width");
    cmd_ver->add_option("--h-scale", ver.h_scale,
                        "Diagnostic: scale the window width (0.5 shows "
                        "violations on the free potential)");

    spacing_args spc;
    auto* cmd_spc = app.add_subcommand(
        "spacing", "Consecutive eigenvalue spacings against h(X)");
    add_io_options(cmd_spc, spc.io, /*with_format=*/false);
    cmd_spc->add_option("-X,--length", spc.X, "Interval length")->required();
    cmd_spc->add_option("-a,--momentum-floor", spc.a, "Momentum floor a");
    cmd_spc->add_option("--k-lo", spc.k_lo, "Window start")->required();
    cmd_spc->add_option("--k-hi", spc.k_hi, "Window end")->required();

    norms_args nrm;
    auto* cmd_nrm = app.add_subcommand(
        "norms", "Amalgamated and weak norms with growth diagnostics");
    add_io_options(cmd_nrm, nrm.io);
    nrm.io.format = "json";  // csv selects the growth-trace table instead
    cmd_nrm->add_option("-p,--exponent", nrm.p, "Norm exponent p > 1")
        ->required();
    cmd_nrm->add_option("--cells", nrm.cells, "Unit cells to sum");

    sweep_args swp;
    auto* cmd_swp = app.add_subcommand(
        "sweep", "verify-bound across the built-in potential corpus");
    add_io_options(cmd_swp, swp.io, /*with_format=*/false);
    cmd_swp->add_option("-a,--momentum-floor", swp.a, "Momentum floor a");
    cmd_swp->add_option("-X,--length", swp.X_values, "Interval lengths")
        ->expected(-1);
    cmd_swp->add_option("--k-hi", swp.k_hi, "Top of the scanned momentum range");
    cmd_swp->add_option("--stride-fraction", swp.stride_fraction,
                        "Window-start step as a fraction of the width");
    cmd_swp->add_option("--h-scale", swp.h_scale,
                        "Diagnostic window-width scale");

    sharpness_args shp;
    auto* cmd_shp = app.add_subcommand(
        "sharpness", "Free-case probe: gap windows contain no eigenvalue");
    cmd_shp->add_option("-X,--length", shp.X, "Interval length")->required();
    cmd_shp->add_option("-m,--index", shp.m, "Gap index (>= 1)")->required();
    cmd_shp->add_option("--epsilon", shp.epsilon,
                        "Window inset, 0 < epsilon < pi/(2X)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

    if (cmd_eig->parsed()) {
        eig.has_energy_window = elo->count() > 0;
        if (!eig.has_energy_window && klo->count() == 0) {
            std::cerr << "error: either --k-lo/--k-hi or --E-lo/--E-hi is "
                         "required\n";
            return exit_config;
        }
        return run_eigenvalues(eig);
    }
    if (cmd_ver->parsed()) return run_verify(ver);
    if (cmd_spc->parsed()) return run_spacing(spc);
    if (cmd_nrm->parsed()) return run_norms(nrm);
    if (cmd_swp->parsed()) return run_sweep(swp);
    if (cmd_shp->parsed()) return run_sharpness(shp);
    return exit_config;
}

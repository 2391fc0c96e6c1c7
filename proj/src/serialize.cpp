#include "serialize.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace halfline {

namespace {

using nlohmann::json;

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

json window_json(const window_check& wc) {
    return json{{"alpha", wc.alpha},
                {"beta", wc.beta},
                {"margin", wc.margin},
                {"eigen_count", wc.eigen_count}};
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string eigenset_csv(const eigenvalue_set& set) {
    std::string out = "k,E,residual,method\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        out += format_double(set.eigen_momenta[i]);
        out += ',';
        out += format_double(set.eigen_energies[i]);
        out += ',';
        out += format_double(set.residuals[i]);
        out += ',';
        out += method_name(set.method);
        out += '\n';
    }
    return out;
}

std::string eigenset_json(const eigenvalue_set& set) {
    json doc{{"X", set.X},
             {"k_window", {set.k_lo, set.k_hi}},
             {"eigen_momenta", json::array()},
             {"eigen_energies", set.eigen_energies},
             {"residuals", set.residuals},
             {"method", method_name(set.method)},
             {"warnings", set.warnings}};
    for (double k : set.eigen_momenta)
        doc["eigen_momenta"].push_back(finite_or_null(k));
    return doc.dump(2) + "\n";
}

std::string oracle_comparison_csv(const eigenvalue_set& primary,
                                  const eigenvalue_set& oracle) {
    std::string out = "k,E,residual,method,oracle_E,rel_diff\n";
    const std::size_t n = std::min(primary.size(), oracle.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double E = primary.eigen_energies[i];
        const double oE = oracle.eigen_energies[i];
        const double denom = std::max(std::abs(oE), 1e-300);
        out += format_double(primary.eigen_momenta[i]);
        out += ',';
        out += format_double(E);
        out += ',';
        out += format_double(primary.residuals[i]);
        out += ',';
        out += method_name(primary.method);
        out += ',';
        out += format_double(oE);
        out += ',';
        out += format_double(std::abs(E - oE) / denom);
        out += '\n';
    }
    return out;
}

std::string bound_report_csv(const bound_report& report) {
    std::string out = "X,alpha,beta,h,eigen_count,margin\n";
    for (const bound_run& run : report.runs) {
        for (const window_check& wc : run.windows) {
            out += format_double(run.X);
            out += ',';
            out += format_double(wc.alpha);
            out += ',';
            out += format_double(wc.beta);
            out += ',';
            out += format_double(run.h);
            out += ',';
            out += std::to_string(wc.eigen_count);
            out += ',';
            out += format_double(wc.margin);
            out += '\n';
        }
    }
    return out;
}

std::string bound_report_json(const bound_report& report) {
    json doc{{"a", report.a},
             {"h_scale", report.h_scale},
             {"energy_shift", report.energy_shift},
             {"X_values", json::array()},
             {"h_values", json::array()},
             {"windows_checked", report.windows_checked()},
             {"violations", json::array()},
             {"slack_stats", json::array()}};
    for (const bound_run& run : report.runs) {
        doc["X_values"].push_back(run.X);
        doc["h_values"].push_back(run.h);
        doc["slack_stats"].push_back(json{{"X", run.X},
                                          {"min_count", run.min_count},
                                          {"min_margin", run.min_margin},
                                          {"windows", run.windows_checked}});
        for (const window_check& wc : run.violations) {
            json v = window_json(wc);
            v["X"] = run.X;
            doc["violations"].push_back(std::move(v));
        }
    }
    return doc.dump(2) + "\n";
}

std::string spacing_csv(const eigenvalue_set& set, double h) {
    std::string out = "k,dk,E,dE,h,dk_over_h\n";
    for (std::size_t i = 1; i < set.size(); ++i) {
        const double dk = set.eigen_momenta[i] - set.eigen_momenta[i - 1];
        const double dE = set.eigen_energies[i] - set.eigen_energies[i - 1];
        out += format_double(set.eigen_momenta[i]);
        out += ',';
        out += format_double(dk);
        out += ',';
        out += format_double(set.eigen_energies[i]);
        out += ',';
        out += format_double(dE);
        out += ',';
        out += format_double(h);
        out += ',';
        out += format_double(dk / h);
        out += '\n';
    }
    return out;
}

std::string trace_csv(const ratio_trace& trace) {
    std::string out = "x,ratio,cap\n";
    for (std::size_t i = 0; i < trace.x.size(); ++i) {
        out += format_double(trace.x[i]);
        out += ',';
        out += format_double(trace.ratio[i]);
        out += ',';
        out += format_double(trace.cap);
        out += '\n';
    }
    return out;
}

std::string norm_report_json(const norm_report& report) {
    json doc{{"p", report.p},
             {"cells", report.cells},
             {"lp_L1",
              {{"value", report.lp_L1.value},
               {"tail_bound", finite_or_null(report.lp_L1.tail_bound)},
               {"upper", finite_or_null(report.lp_L1.upper())}}},
             {"lp_w_L1", report.lp_w_L1},
             {"growth_exponent", finite_or_null(report.growth_exponent)},
             {"trace",
              {{"x", report.trace.x},
               {"ratio", report.trace.ratio},
               {"cap", report.trace.cap}}}};
    return doc.dump(2) + "\n";
}

}  // namespace halfline

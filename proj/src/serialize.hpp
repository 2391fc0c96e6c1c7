#pragma once

#include <string>

#include "bounds.hpp"
#include "eigensolver.hpp"
#include "norms.hpp"

namespace halfline {

// Full-precision decimal text (%.17g): round-trips the double exactly.
std::string format_double(double v);

std::string eigenset_csv(const eigenvalue_set& set);
std::string eigenset_json(const eigenvalue_set& set);

// Side-by-side table pairing each phase-method eigenvalue with the oracle's.
// Requires equal counts; callers check first and report a count mismatch.
std::string oracle_comparison_csv(const eigenvalue_set& primary,
                                  const eigenvalue_set& oracle);

std::string bound_report_csv(const bound_report& report);
std::string bound_report_json(const bound_report& report);

// Consecutive spacings, each row compared against h (columns
// k,dk,E,dE,h,dk_over_h); empty data section when fewer than 2 eigenvalues.
std::string spacing_csv(const eigenvalue_set& set, double h);

std::string trace_csv(const ratio_trace& trace);
std::string norm_report_json(const norm_report& report);

}  // namespace halfline

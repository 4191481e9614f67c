#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isotonic/observables.hpp"

// Command-line front end: human-readable reports, reference-table
// comparisons, and figure data as CSV/JSON. All rendering is deterministic
// (fixed ordering, %.10g floats, LF line endings) so outputs are byte-stable
// across runs.

namespace isotonic::cli {

enum class Format { text, csv, json };

struct RunConfig {
    std::vector<double> gamma_list;
    int m_max = 3;
    Format format = Format::csv;
    std::string out_path;  // empty means stdout
    observables::QuadratureOptions quad;
};

// "7/2" or "3.5"; throws std::invalid_argument on malformed input.
double parse_gamma(const std::string& text);

// Comma-separated list of the above.
std::vector<double> parse_gamma_list(const std::string& text);

// "lo:hi" (also accepts a comma separator).
std::pair<double, double> parse_range(const std::string& text);

// Shortest representation with 10 significant digits.
std::string format_double(double v);

// Cell results for one state, shared by report/sweep rendering.
struct CellResult {
    observables::EntropyReport entropy;
    observables::UncertaintyReport uncertainty;
    double eigenvalue = 0.0;
};

CellResult evaluate_cell(const states::StateLabel& s,
                         const observables::QuadratureOptions& opt);

std::string render_report(const CellResult& cell, Format format);
std::string render_table(int which, const RunConfig& config);
std::string render_density(const observables::DensityCurve& curve, Format format);
std::string render_sweep(const RunConfig& config);

// Full CLI entry point; returns the process exit code
// (0 success, 2 usage error, 3 numerical failure).
int run(int argc, const char* const* argv);

}  // namespace isotonic::cli

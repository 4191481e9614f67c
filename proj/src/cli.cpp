#include "isotonic/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "isotonic/quadrature.hpp"
#include "isotonic/reference_values.hpp"
#include "isotonic/specfun.hpp"

namespace isotonic::cli {

using nlohmann::json;
using states::StateLabel;

namespace {

constexpr const char* kCsvSweepHeader =
    "gamma,m,eigenvalue,s_position,s_momentum,s_sum,bbm_bound,bbm_satisfied,"
    "entropy_squeezed_position,entropy_squeezed_momentum,mean_x,mean_x2,var_x,"
    "var_p,var_p_momentum,product,heisenberg_bound,x_squeezed,p_squeezed";

const char* bool_text(bool b) { return b ? "true" : "false"; }

std::string format_fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// floats go into JSON documents rounded to 10 significant digits
double round_sig10(double v) { return std::stod(format_double(v)); }

json cell_to_json(const CellResult& cell) {
    const auto& e = cell.entropy;
    const auto& u = cell.uncertainty;
    return json{
        {"gamma", round_sig10(e.label.gamma)},
        {"m", e.label.m},
        {"eigenvalue", round_sig10(cell.eigenvalue)},
        {"entropy",
         {{"position", round_sig10(e.s_position)},
          {"momentum", round_sig10(e.s_momentum)},
          {"sum", round_sig10(e.s_sum)},
          {"bbm_bound", round_sig10(e.bbm_bound)},
          {"bbm_satisfied", e.bbm_satisfied},
          {"squeezed_position", e.entropy_squeezed_position},
          {"squeezed_momentum", e.entropy_squeezed_momentum}}},
        {"uncertainty",
         {{"mean_x", round_sig10(u.mean_x)},
          {"mean_x2", round_sig10(u.mean_x2)},
          {"var_x", round_sig10(u.var_x)},
          {"var_p", round_sig10(u.var_p)},
          {"var_p_momentum", round_sig10(u.var_p_momentum)},
          {"product", round_sig10(u.product)},
          {"heisenberg_bound", round_sig10(u.heisenberg_bound)},
          {"x_squeezed", u.x_squeezed},
          {"p_squeezed", u.p_squeezed}}}};
}

void append_cell_csv_row(std::ostringstream& out, const CellResult& cell) {
    const auto& e = cell.entropy;
    const auto& u = cell.uncertainty;
    out << format_double(e.label.gamma) << ',' << e.label.m << ','
        << format_double(cell.eigenvalue) << ',' << format_double(e.s_position)
        << ',' << format_double(e.s_momentum) << ',' << format_double(e.s_sum)
        << ',' << format_double(e.bbm_bound) << ',' << bool_text(e.bbm_satisfied)
        << ',' << bool_text(e.entropy_squeezed_position) << ','
        << bool_text(e.entropy_squeezed_momentum) << ','
        << format_double(u.mean_x) << ',' << format_double(u.mean_x2) << ','
        << format_double(u.var_x) << ',' << format_double(u.var_p) << ','
        << format_double(u.var_p_momentum) << ',' << format_double(u.product)
        << ',' << format_double(u.heisenberg_bound) << ','
        << bool_text(u.x_squeezed) << ',' << bool_text(u.p_squeezed) << '\n';
}

std::vector<std::pair<double, int>> grid_cells(const RunConfig& config) {
    std::vector<double> gammas = config.gamma_list;
    std::sort(gammas.begin(), gammas.end());
    gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
    std::vector<std::pair<double, int>> cells;
    for (double g : gammas) {
        for (int m = 0; m <= config.m_max; ++m) cells.emplace_back(g, m);
    }
    return cells;
}

// Cells are independent pure computations; evaluate them concurrently and
// assemble in the fixed (gamma, m) order.
std::vector<CellResult> evaluate_grid(const RunConfig& config) {
    const auto cells = grid_cells(config);
    std::vector<std::future<CellResult>> futures;
    futures.reserve(cells.size());
    for (const auto& [gamma, m] : cells) {
        futures.push_back(std::async(std::launch::async, [gamma, m, &config] {
            return evaluate_cell(StateLabel(m, gamma), config.quad);
        }));
    }
    std::vector<CellResult> results;
    results.reserve(cells.size());
    for (auto& f : futures) results.push_back(f.get());
    return results;
}

std::string space_name(observables::Space space) {
    return space == observables::Space::position ? "position" : "momentum";
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open output file: " + out_path);
    }
    out << text;
}

}  // namespace

double parse_gamma(const std::string& text) {
    const auto bad = [&text]() {
        return std::invalid_argument("cannot parse gamma value '" + text +
                                     "' (expected a decimal or a fraction like 7/2)");
    };
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw bad();
            return v;
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        const double n = std::stod(num, &used);
        if (used != num.size()) throw bad();
        const double d = std::stod(den, &used);
        if (used != den.size() || d == 0.0) throw bad();
        return n / d;
    } catch (const std::logic_error&) {
        throw bad();
    }
}

std::vector<double> parse_gamma_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(parse_gamma(item));
    }
    if (values.empty()) {
        throw std::invalid_argument("gamma list '" + text + "' is empty");
    }
    return values;
}

std::pair<double, double> parse_range(const std::string& text) {
    auto sep = text.find(':');
    if (sep == std::string::npos) sep = text.find(',');
    if (sep == std::string::npos || sep == 0 || sep + 1 >= text.size()) {
        throw std::invalid_argument("cannot parse range '" + text +
                                    "' (expected lo:hi)");
    }
    try {
        const double lo = std::stod(text.substr(0, sep));
        const double hi = std::stod(text.substr(sep + 1));
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("cannot parse range '" + text + "'");
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

CellResult evaluate_cell(const StateLabel& s,
                         const observables::QuadratureOptions& opt) {
    CellResult cell{observables::bbm_report(s, opt),
                    observables::heisenberg_report(s, opt),
                    states::eigenvalue(s)};
    return cell;
}

std::string render_report(const CellResult& cell, Format format) {
    if (format == Format::json) {
        return cell_to_json(cell).dump(2) + "\n";
    }
    if (format == Format::csv) {
        std::ostringstream out;
        out << kCsvSweepHeader << '\n';
        append_cell_csv_row(out, cell);
        return out.str();
    }
    const auto& e = cell.entropy;
    const auto& u = cell.uncertainty;
    std::ostringstream out;
    out << "state: gamma=" << format_double(e.label.gamma) << ", m=" << e.label.m
        << "\n"
        << "eigenvalue=" << format_double(cell.eigenvalue) << "\n"
        << "S_rho=" << format_fixed4(e.s_position) << "\n"
        << "S_xi=" << format_fixed4(e.s_momentum) << "\n"
        << "S_sum=" << format_fixed4(e.s_sum) << "\n"
        << "BBM bound=" << format_fixed4(e.bbm_bound) << "\n"
        << "BBM: " << (e.bbm_satisfied ? "satisfied" : "violated") << "\n"
        << "entropy_squeezed_position=" << bool_text(e.entropy_squeezed_position)
        << "\n"
        << "entropy_squeezed_momentum=" << bool_text(e.entropy_squeezed_momentum)
        << "\n"
        << "mean_x=" << format_double(u.mean_x) << "\n"
        << "mean_x2=" << format_double(u.mean_x2) << "\n"
        << "var_x=" << format_fixed4(u.var_x) << "\n"
        << "var_p=" << format_fixed4(u.var_p) << " (derivative route)\n"
        << "var_p_momentum=" << format_fixed4(u.var_p_momentum)
        << " (tail-extrapolated)\n"
        << "product=" << format_fixed4(u.product) << "\n"
        << "heisenberg_bound=" << format_double(u.heisenberg_bound) << "\n"
        << "x_squeezed=" << bool_text(u.x_squeezed) << "\n"
        << "p_squeezed=" << bool_text(u.p_squeezed) << "\n";
    return out.str();
}

std::string render_table(int which, const RunConfig& config) {
    if (which != 1 && which != 2) {
        throw std::invalid_argument("table: --which must be 1 or 2");
    }
    const auto cells = grid_cells(config);

    if (config.format == Format::json) {
        json rows = json::array();
        for (const auto& [gamma, m] : cells) {
            const StateLabel s(m, gamma);
            json row{{"gamma", round_sig10(gamma)}, {"m", m}};
            if (which == 1) {
                const auto rep = observables::bbm_report(s, config.quad);
                row["s_position"] = round_sig10(rep.s_position);
                row["s_momentum"] = round_sig10(rep.s_momentum);
                row["s_sum"] = round_sig10(rep.s_sum);
                row["bbm_bound"] = round_sig10(rep.bbm_bound);
                if (const auto* ref = reference::find_entropy(gamma, m)) {
                    row["paper_s_position"] = ref->s_position;
                    row["paper_s_momentum"] = ref->s_momentum;
                    row["paper_s_sum"] = ref->s_sum;
                    row["delta_s_position"] =
                        round_sig10(rep.s_position - ref->s_position);
                    row["delta_s_momentum"] =
                        round_sig10(rep.s_momentum - ref->s_momentum);
                    row["delta_s_sum"] = round_sig10(rep.s_sum - ref->s_sum);
                }
            } else {
                const auto rep = observables::heisenberg_report(s, config.quad);
                row["var_x"] = round_sig10(rep.var_x);
                row["var_p"] = round_sig10(rep.var_p);
                row["var_p_momentum"] = round_sig10(rep.var_p_momentum);
                row["product"] = round_sig10(rep.product);
                row["min_product"] = round_sig10(rep.heisenberg_bound);
                if (const auto* ref = reference::find_variance(gamma, m)) {
                    row["paper_var_x"] = ref->var_x;
                    row["paper_var_p"] = ref->var_p;
                    row["paper_product"] = ref->product;
                    row["delta_var_x"] = round_sig10(rep.var_x - ref->var_x);
                    row["delta_var_p"] = round_sig10(rep.var_p - ref->var_p);
                    row["delta_product"] = round_sig10(rep.product - ref->product);
                }
            }
            rows.push_back(std::move(row));
        }
        return json{{"which", which}, {"rows", std::move(rows)}}.dump(2) + "\n";
    }

    std::ostringstream out;
    if (which == 1) {
        out << "gamma,m,s_position,s_momentum,s_sum,bbm_bound,paper_s_position,"
               "paper_s_momentum,paper_s_sum,delta_s_position,delta_s_momentum,"
               "delta_s_sum\n";
        for (const auto& [gamma, m] : cells) {
            const auto rep = observables::bbm_report(StateLabel(m, gamma), config.quad);
            out << format_double(gamma) << ',' << m << ','
                << format_double(rep.s_position) << ','
                << format_double(rep.s_momentum) << ',' << format_double(rep.s_sum)
                << ',' << format_double(rep.bbm_bound) << ',';
            if (const auto* ref = reference::find_entropy(gamma, m)) {
                out << format_double(ref->s_position) << ','
                    << format_double(ref->s_momentum) << ','
                    << format_double(ref->s_sum) << ','
                    << format_double(rep.s_position - ref->s_position) << ','
                    << format_double(rep.s_momentum - ref->s_momentum) << ','
                    << format_double(rep.s_sum - ref->s_sum) << '\n';
            } else {
                out << ",,,,,\n";
            }
        }
    } else {
        out << "gamma,m,var_x,var_p,var_p_momentum,product,min_product,"
               "paper_var_x,paper_var_p,paper_product,delta_var_x,delta_var_p,"
               "delta_product\n";
        for (const auto& [gamma, m] : cells) {
            const auto rep =
                observables::heisenberg_report(StateLabel(m, gamma), config.quad);
            out << format_double(gamma) << ',' << m << ','
                << format_double(rep.var_x) << ',' << format_double(rep.var_p)
                << ',' << format_double(rep.var_p_momentum) << ','
                << format_double(rep.product) << ','
                << format_double(rep.heisenberg_bound) << ',';
            if (const auto* ref = reference::find_variance(gamma, m)) {
                out << format_double(ref->var_x) << ','
                    << format_double(ref->var_p) << ','
                    << format_double(ref->product) << ','
                    << format_double(rep.var_x - ref->var_x) << ','
                    << format_double(rep.var_p - ref->var_p) << ','
                    << format_double(rep.product - ref->product) << '\n';
            } else {
                out << ",,,,,\n";
            }
        }
    }
    return out.str();
}

std::string render_density(const observables::DensityCurve& curve, Format format) {
    if (format == Format::json) {
        json samples = json::array();
        for (const auto& [coord, value] : curve.samples) {
            samples.push_back(json::array({round_sig10(coord), round_sig10(value)}));
        }
        return json{{"space", space_name(curve.space)},
                    {"gamma", round_sig10(curve.label.gamma)},
                    {"m", curve.label.m},
                    {"samples", std::move(samples)}}
                   .dump(2) +
               "\n";
    }
    std::ostringstream out;
    out << "coordinate,entropy_density\n";
    for (const auto& [coord, value] : curve.samples) {
        out << format_double(coord) << ',' << format_double(value) << '\n';
    }
    return out.str();
}

std::string render_sweep(const RunConfig& config) {
    const auto results = evaluate_grid(config);
    if (config.format == Format::json) {
        json cells = json::array();
        for (const auto& cell : results) cells.push_back(cell_to_json(cell));
        return json{{"cells", std::move(cells)}}.dump(2) + "\n";
    }
    std::ostringstream out;
    out << kCsvSweepHeader << '\n';
    for (const auto& cell : results) append_cell_csv_row(out, cell);
    return out.str();
}

int run(int argc, const char* const* argv) {
    CLI::App app{
        "Shannon information entropies, BBM entropic bound, and quadrature "
        "squeezing diagnostics for the eigenstates of the isotonic oscillator"};
    app.require_subcommand(1);

    std::string gamma_text = "3/2";
    std::string gammas_text;
    std::string range_text;
    std::string format_text = "text";
    std::string out_path;
    int m = 0;
    int m_max = 3;
    int which = 1;
    int samples = 400;
    std::string space_text = "position";
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_text, "output format")
            ->check(CLI::IsMember({"text", "csv", "json"}));
        cmd->add_option("--out", out_path, "write output to PATH instead of stdout");
        cmd->add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
        cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
    };

    auto* report = app.add_subcommand(
        "report", "full entropy/uncertainty report for one state");
    report->add_option("--gamma", gamma_text, "gamma as decimal or fraction (e.g. 7/2)");
    report->add_option("--m", m, "quantum number m")->check(CLI::NonNegativeNumber);
    add_common(report);

    auto* table = app.add_subcommand(
        "table", "reproduce a reference table with paper-value and delta columns");
    table->add_option("--which", which, "1 = entropies, 2 = variances")
        ->check(CLI::Range(1, 2));
    table->add_option("--gammas", gammas_text, "comma-separated gamma list");
    table->add_option("--m-max", m_max, "largest m")->check(CLI::NonNegativeNumber);
    add_common(table);

    auto* density = app.add_subcommand(
        "density", "sample an entropy density curve for plotting");
    density->add_option("--space", space_text, "position or momentum")
        ->check(CLI::IsMember({"position", "momentum"}));
    density->add_option("--gamma", gamma_text, "gamma as decimal or fraction");
    density->add_option("--m", m, "quantum number m")->check(CLI::NonNegativeNumber);
    density->add_option("--range", range_text, "sample range lo:hi")->required();
    density->add_option("--samples", samples, "number of samples")
        ->check(CLI::Range(2, 10000000));
    add_common(density);

    auto* sweep = app.add_subcommand(
        "sweep", "full reports over a (gamma, m) grid, cells evaluated concurrently");
    sweep->add_option("--gammas", gammas_text, "comma-separated gamma list")
        ->required();
    sweep->add_option("--m-max", m_max, "largest m")->check(CLI::NonNegativeNumber);
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config;
        config.quad.abs_tol = abs_tol;
        config.quad.rel_tol = rel_tol;
        config.m_max = m_max;
        config.format = format_text == "csv"    ? Format::csv
                        : format_text == "json" ? Format::json
                                                : Format::text;
        config.out_path = out_path;

        std::string output;
        if (app.got_subcommand(report)) {
            const StateLabel s(m, parse_gamma(gamma_text));
            output = render_report(evaluate_cell(s, config.quad), config.format);
        } else if (app.got_subcommand(table)) {
            config.gamma_list = gammas_text.empty()
                                    ? std::vector<double>{1.5, 2.5, 3.5}
                                    : parse_gamma_list(gammas_text);
            output = render_table(which, config);
        } else if (app.got_subcommand(density)) {
            const StateLabel s(m, parse_gamma(gamma_text));
            const auto [lo, hi] = parse_range(range_text);
            const auto space = space_text == "momentum"
                                   ? observables::Space::momentum
                                   : observables::Space::position;
            output = render_density(
                observables::density_samples(s, space, lo, hi, samples),
                config.format);
        } else {
            config.gamma_list = parse_gamma_list(gammas_text);
            output = render_sweep(config);
        }
        write_output(output, config.out_path);
        return 0;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace isotonic::cli

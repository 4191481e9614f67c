// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "isotonic/observables.hpp"
#include "isotonic/oracle.hpp"
#include "isotonic/quadrature.hpp"
#include "isotonic/reference_values.hpp"
#include "isotonic/states.hpp"

using namespace isotonic;
using states::StateLabel;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::ostringstream notes;

    explicit Criterion(std::string name_) : name(std::move(name_)) {}

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes << "\n    FAILED: " << what;
        }
    }

    void note(const std::string& what) { notes << "\n    " << what; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// -- criterion 1: entropy table reproduction ------------------------------

Criterion table1_reproduction() {
    Criterion c("Table 1 reproduction (12 cells, entropies and BBM margin)");
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& row : reference::kEntropyTable) {
        const StateLabel s(row.m, row.gamma);
        const auto rep = observables::bbm_report(s);
        const std::string cell =
            "(gamma=" + fmt(row.gamma) + ", m=" + std::to_string(row.m) + ")";

        c.require(std::abs(rep.s_position - row.s_position) <= 2e-3,
                  cell + " S_rho=" + fmt(rep.s_position) + " vs printed " +
                      fmt(row.s_position));

        const bool suspect = row.gamma == reference::kSuspectEntropyGamma &&
                             row.m == reference::kSuspectEntropyM;
        const double tol_sxi = suspect ? 0.05 : 3e-3;
        if (suspect) {
            c.note("suspected-misprint cell " + cell + ": computed S_xi=" +
                   fmt(rep.s_momentum) + ", printed " + fmt(row.s_momentum) +
                   ", |delta|=" + fmt(std::abs(rep.s_momentum - row.s_momentum)) +
                   " (relaxed tolerance 0.05)");
        }
        c.require(std::abs(rep.s_momentum - row.s_momentum) <= tol_sxi,
                  cell + " S_xi=" + fmt(rep.s_momentum) + " vs printed " +
                      fmt(row.s_momentum) + " (tol " + fmt(tol_sxi) + ")");

        c.require(rep.s_sum > observables::kBbmBound,
                  cell + " BBM margin not positive: sum=" + fmt(rep.s_sum));
    }
    const double dt = seconds_since(t0);
    c.note("runtime " + fmt(dt) + " s (budget 60 s)");
    c.require(dt < 60.0, "table ran over the 60 s budget");
    return c;
}

// -- criterion 2: variance table reproduction -----------------------------

Criterion table2_reproduction() {
    Criterion c("Table 2 reproduction (variances, with the gamma=3/2 deficit flagged)");
    for (const auto& row : reference::kVarianceTable) {
        const StateLabel s(row.m, row.gamma);
        const auto rep = observables::heisenberg_report(s);
        const std::string cell =
            "(gamma=" + fmt(row.gamma) + ", m=" + std::to_string(row.m) + ")";

        c.require(std::abs(rep.var_x - row.var_x) <= 2e-3,
                  cell + " var_x=" + fmt(rep.var_x) + " vs printed " + fmt(row.var_x));

        if (row.gamma == 1.5) {
            // exact values are 2m + 3/2; the printed ones undershoot by the
            // truncated slow momentum tail
            const double exact = 2.0 * row.m + 1.5;
            c.require(std::abs(rep.var_p - exact) <= 1e-6,
                      cell + " derivative-route var_p=" + fmt(rep.var_p) +
                          " vs exact " + fmt(exact));
            const double deficit = rep.var_p - row.var_p;
            c.require(deficit >= 0.03 && deficit <= 0.09,
                      cell + " printed-value deficit " + fmt(deficit) +
                          " outside the documented 0.04-0.08 band");
            c.note(cell + " printed var_p=" + fmt(row.var_p) + " undershoots exact " +
                   fmt(exact) + " by " + fmt(deficit));
        } else {
            c.require(std::abs(rep.var_p - row.var_p) <= 2e-3,
                      cell + " var_p=" + fmt(rep.var_p) + " vs printed " +
                          fmt(row.var_p));
        }
    }
    return c;
}

// -- criterion 3: ground-state sweep text values --------------------------

Criterion ground_sweep() {
    Criterion c("Ground-state sweep at gamma = 9/2, 11/2, 13/2");
    for (const auto& row : reference::kGroundSweep) {
        const auto rep = observables::heisenberg_report(StateLabel(0, row.gamma));
        c.require(std::abs(rep.var_x - row.var_x) <= 2e-3,
                  "gamma=" + fmt(row.gamma) + " var_x=" + fmt(rep.var_x) +
                      " vs " + fmt(row.var_x));
        c.require(std::abs(rep.var_p - row.var_p) <= 2e-3,
                  "gamma=" + fmt(row.gamma) + " var_p=" + fmt(rep.var_p) +
                      " vs " + fmt(row.var_p));
    }
    return c;
}

// -- criterion 4: baselines ------------------------------------------------

Criterion baselines() {
    Criterion c("Baselines (vacuum entropy, BBM bound, Gaussian saturation)");
    c.require(std::abs(observables::harmonic_ground_entropy() - 1.07236) <= 1e-5,
              "harmonic ground entropy deviates from 1.07236");
    c.require(std::abs(observables::kBbmBound - 2.144729) <= 1e-6,
              "BBM bound deviates from 2.144729");

    // Gaussian vacuum densities through the same quadrature engine; the two
    // conjugate densities are identical, so the sum must saturate the bound.
    quadrature::IntegrationSpec spec;
    spec.domain = quadrature::Domain::full_line;
    const auto h = quadrature::entropy_integrand(
        [](double x) { return std::exp(-x * x) / std::sqrt(M_PI); });
    const double one_side = quadrature::integrate(h, spec).value;
    c.require(std::abs(2.0 * one_side - observables::kBbmBound) <= 1e-6,
              "Gaussian entropies sum to " + fmt(2.0 * one_side) +
                  ", bound is " + fmt(observables::kBbmBound));
    return c;
}

// -- criterion 5: property suite -------------------------------------------

Criterion property_suite() {
    Criterion c("Property suite (normalization, oracles, BBM and squeezing laws)");
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> gammas{1.5, 2.5, 3.5, 4.5, 5.5, 6.5};

    // Gram identity to 1e-8 for m, n <= 5 at every gamma
    for (double gamma : gammas) {
        const auto g = oracle::gram_matrix(gamma, 5);
        for (int m = 0; m <= 5; ++m) {
            for (int n = 0; n <= 5; ++n) {
                const double want = (m == n) ? 1.0 : 0.0;
                c.require(std::abs(g[m][n] - want) < 1e-8,
                          "gram(gamma=" + fmt(gamma) + ")[" + std::to_string(m) +
                              "][" + std::to_string(n) + "] = " + fmt(g[m][n]));
            }
        }
    }

    // |phi|^2 evenness to 1e-9
    for (double gamma : {1.5, 3.5, 6.5}) {
        for (int m : {0, 2, 5}) {
            const StateLabel s(m, gamma);
            for (double p : {0.4, 1.7, 4.2, 9.5}) {
                const double diff = std::abs(states::eval_phi(s, p).norm_sq() -
                                             states::eval_phi(s, -p).norm_sq());
                c.require(diff < 1e-9, "evenness at gamma=" + fmt(gamma) +
                                           " m=" + std::to_string(m));
            }
        }
    }

    // analytic-vs-oracle Fourier agreement to 1e-7 componentwise
    for (double gamma : gammas) {
        for (int m = 0; m <= 3; ++m) {
            const StateLabel s(m, gamma);
            for (double p : {0.0, 1.0, 2.5, 5.0, 10.0}) {
                const auto direct = oracle::fourier_oracle(s, p);
                const auto analytic = states::eval_phi(s, p);
                const bool ok = std::abs(direct.re - analytic.re) < 1e-7 &&
                                std::abs(direct.im - analytic.im) < 1e-7;
                c.require(ok, "fourier mismatch at gamma=" + fmt(gamma) +
                                  " m=" + std::to_string(m) + " p=" + fmt(p));
            }
        }
    }

    // gamma = 3/2 Hermite reduction to 1e-10
    for (int m = 0; m <= 5; ++m) {
        const StateLabel s(m, 1.5);
        for (double x = 0.15; x < 7.0; x += 0.155) {
            const double want = std::sqrt(2.0) * oracle::hermite_oracle(2 * m + 1, x);
            c.require(std::abs(states::eval_psi(s, x) - want) < 1e-10,
                      "hermite reduction at m=" + std::to_string(m) +
                          " x=" + fmt(x));
        }
    }

    // BBM for all m <= 10, plus Heisenberg and the squeezing implication
    for (double gamma : gammas) {
        for (int m = 0; m <= 10; ++m) {
            const StateLabel s(m, gamma);
            const auto erep = observables::bbm_report(s);
            c.require(erep.s_sum >= observables::kBbmBound - 1e-9,
                      "BBM violated at gamma=" + fmt(gamma) + " m=" +
                          std::to_string(m) + ": sum=" + fmt(erep.s_sum));

            const auto urep = observables::heisenberg_report(s);
            c.require(urep.product >= 0.25 - 1e-6,
                      "Heisenberg product " + fmt(urep.product) + " at gamma=" +
                          fmt(gamma) + " m=" + std::to_string(m));
            if (urep.x_squeezed) {
                c.require(erep.entropy_squeezed_position,
                          "x squeezed without position entropy squeezing at gamma=" +
                              fmt(gamma) + " m=" + std::to_string(m));
            }
        }
    }

    const double dt = seconds_since(t0);
    c.note("runtime " + fmt(dt) + " s (budget 300 s)");
    c.require(dt < 300.0, "property suite ran over the 5 minute budget");
    return c;
}

// -- criterion 6: figure data sanity ---------------------------------------

Criterion figure_data() {
    Criterion c("Figure data sanity (entropy density curves)");
    for (const auto& row : reference::kEntropyTable) {
        const StateLabel s(row.m, row.gamma);
        const double turning = std::sqrt(states::eigenvalue(s));
        const double hi = turning + 6.0;
        const auto curve = observables::density_samples(
            s, observables::Space::position, 0.0, hi, 1500);
        const std::string cell =
            "(gamma=" + fmt(row.gamma) + ", m=" + std::to_string(row.m) + ")";

        c.require(curve.samples.front().second == 0.0,
                  cell + " curve does not start at exactly 0");

        double top = 0.0;
        for (const auto& [x, v] : curve.samples) {
            top = std::max(top, v);
            if (x >= turning + 4.0) {
                c.require(v < 1e-6, cell + " tail value " + fmt(v) + " at x=" + fmt(x));
            }
        }
        c.require(top >= 0.33 && top <= 0.37,
                  cell + " curve maximum " + fmt(top) + " outside [0.33, 0.37]");
    }

    for (double gamma : {1.5, 2.5, 3.5}) {
        const auto curve = observables::density_samples(
            StateLabel(0, gamma), observables::Space::momentum, -8.0, 8.0, 801);
        const double center = curve.samples[400].second;
        double asym = 0.0, top = center, top_at = 0.0;
        for (int i = 0; i <= 800; ++i) {
            asym = std::max(asym, std::abs(curve.samples[i].second -
                                           curve.samples[800 - i].second));
            if (curve.samples[i].second > top) {
                top = curve.samples[i].second;
                top_at = curve.samples[i].first;
            }
        }
        c.require(asym < 1e-9, "momentum curve asymmetry " + fmt(asym) +
                                   " at gamma=" + fmt(gamma));
        c.require(top <= center + 1e-12,
                  "momentum curve maximum " + fmt(top) + " at p=" + fmt(top_at) +
                      " exceeds the p=0 value " + fmt(center) + " by " +
                      fmt(top - center) + " (gamma=" + fmt(gamma) +
                      "): the density passes through 1/e at small |p|, so the "
                      "entropy density is structurally double-humped there");
    }
    return c;
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Criterion> criteria;
    criteria.push_back(table1_reproduction());
    criteria.push_back(table2_reproduction());
    criteria.push_back(ground_sweep());
    criteria.push_back(baselines());
    criteria.push_back(property_suite());
    criteria.push_back(figure_data());

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        if (!c.pass) ++failures;
        std::printf("[%s] criterion %zu: %s%s\n", c.pass ? "PASS" : "FAIL", i + 1,
                    c.name.c_str(), c.notes.str().c_str());
    }
    std::printf("%d of %zu criteria passed in %.1f s\n",
                static_cast<int>(criteria.size()) - failures, criteria.size(),
                seconds_since(t0));
    return failures == 0 ? 0 : 1;
}

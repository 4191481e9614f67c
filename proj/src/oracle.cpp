#include "isotonic/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "isotonic/quadrature.hpp"

namespace isotonic::oracle {

using states::ComplexAmplitude;
using states::StateLabel;

namespace {

// Adaptive integration of an oscillatory integrand on [0, X], seeded with a
// uniform partition fine enough that each starting panel resolves the
// oscillation, then refined panel by panel.
double integrate_oscillatory(const quadrature::Integrand& f, double cutoff,
                             double samples_per_unit, double tol) {
    const int panels =
        std::max(1, static_cast<int>(std::ceil(cutoff * samples_per_unit / 15.0)));
    const double width = cutoff / panels;
    double sum = 0.0, carry = 0.0;
    for (int i = 0; i < panels; ++i) {
        const auto part = quadrature::integrate_finite(
            f, i * width, (i + 1) * width, tol / panels, 1e-14, 400);
        const double y = part.value - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace

double default_cutoff(const StateLabel& s) {
    double x = std::sqrt(states::eigenvalue(s));
    while (std::abs(states::eval_psi(s, x)) >= 1e-16) {
        x += 0.5;
        if (x > 1e4) {
            throw std::runtime_error("default_cutoff: no decay found below 1e4");
        }
    }
    return x;
}

ComplexAmplitude fourier_oracle(const StateLabel& s, double p,
                                const OracleConfig& cfg) {
    if (cfg.samples_per_unit < 16) {
        throw std::domain_error("fourier_oracle: samples_per_unit must be >= 16");
    }
    const double cutoff = cfg.x_cutoff > 0.0 ? cfg.x_cutoff : default_cutoff(s);
    const double density =
        std::max(static_cast<double>(cfg.samples_per_unit), 4.0 * std::abs(p));
    const double norm = 1.0 / std::sqrt(2.0 * M_PI);

    const double re = integrate_oscillatory(
        [&](double x) { return states::eval_psi(s, x) * std::cos(p * x); }, cutoff,
        density, cfg.tolerance);
    const double im = integrate_oscillatory(
        [&](double x) { return -states::eval_psi(s, x) * std::sin(p * x); }, cutoff,
        density, cfg.tolerance);
    return {norm * re, norm * im};
}

double hermite_oracle(int n, double x) {
    if (n < 0 || n > 25) {
        throw std::domain_error("hermite_oracle: n must lie in [0, 25], got " +
                                std::to_string(n));
    }
    // recurrence on the normalized functions:
    // h_n = x sqrt(2/n) h_{n-1} - sqrt((n-1)/n) h_{n-2}
    const double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return h0;
    double prev = h0;
    double cur = std::sqrt(2.0) * x * h0;
    for (int k = 2; k <= n; ++k) {
        const double next =
            x * std::sqrt(2.0 / k) * cur - std::sqrt((k - 1.0) / k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<std::vector<double>> gram_matrix(double gamma, int n_max) {
    if (n_max < 0 || n_max > 10) {
        throw std::domain_error("gram_matrix: n_max must lie in [0, 10]");
    }
    std::vector<std::vector<double>> g(n_max + 1, std::vector<double>(n_max + 1));
    quadrature::IntegrationSpec spec;
    spec.domain = quadrature::Domain::half_line;
    spec.abs_tol = 1e-11;
    spec.rel_tol = 1e-11;
    for (int m = 0; m <= n_max; ++m) {
        const StateLabel sm(m, gamma);
        for (int n = m; n <= n_max; ++n) {
            const StateLabel sn(n, gamma);
            const auto r = quadrature::integrate(
                [&](double x) {
                    return states::eval_psi(sm, x) * states::eval_psi(sn, x);
                },
                spec);
            g[m][n] = r.value;
            g[n][m] = r.value;
        }
    }
    return g;
}

}  // namespace isotonic::oracle

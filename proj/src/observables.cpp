#include "isotonic/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isotonic/quadrature.hpp"

namespace isotonic::observables {

using states::StateLabel;

namespace {

quadrature::Integrand position_density(const StateLabel& s) {
    return [s](double x) {
        const double v = states::eval_psi(s, x);
        return v * v;
    };
}

quadrature::Integrand momentum_density(const StateLabel& s) {
    return [s](double p) { return states::eval_phi(s, p).norm_sq(); };
}

double half_line_integral(const quadrature::Integrand& f,
                          const QuadratureOptions& opt) {
    quadrature::IntegrationSpec spec;
    spec.domain = quadrature::Domain::half_line;
    spec.abs_tol = opt.abs_tol;
    spec.rel_tol = opt.rel_tol;
    return quadrature::integrate(f, spec).value;
}

}  // namespace

double position_entropy(const StateLabel& s, const QuadratureOptions& opt) {
    return half_line_integral(quadrature::entropy_integrand(position_density(s)),
                              opt);
}

double momentum_entropy(const StateLabel& s, const QuadratureOptions& opt) {
    quadrature::IntegrationSpec spec;
    spec.domain = quadrature::Domain::half_line;
    spec.abs_tol = opt.abs_tol;
    spec.rel_tol = opt.rel_tol;
    spec.tail_exponent_hint = 2.0 * s.gamma + 1.0;
    try {
        const auto r = quadrature::integrate(
            quadrature::entropy_integrand(momentum_density(s)), spec);
        return 2.0 * r.value;
    } catch (const quadrature::ToleranceNotMet& e) {
        // high-m densities carry ~1e-11 evaluation noise that an aggressive
        // tolerance cannot beat; the entropy itself is only promised to 1e-5
        if (e.best().error_estimate <= 1e-6) return 2.0 * e.best().value;
        throw;
    }
}

EntropyReport bbm_report(const StateLabel& s, const QuadratureOptions& opt) {
    EntropyReport rep{s};
    rep.s_position = position_entropy(s, opt);
    rep.s_momentum = momentum_entropy(s, opt);
    rep.s_sum = rep.s_position + rep.s_momentum;
    rep.bbm_satisfied = rep.s_sum >= kBbmBound - kFlagGuard;
    rep.entropy_squeezed_position =
        rep.s_position < kEntropySqueezeThreshold - kFlagGuard;
    rep.entropy_squeezed_momentum =
        rep.s_momentum < kEntropySqueezeThreshold - kFlagGuard;
    return rep;
}

PositionMoments variance_x(const StateLabel& s, const QuadratureOptions& opt) {
    const auto rho = position_density(s);
    PositionMoments m;
    m.mean_x = half_line_integral([&rho](double x) { return x * rho(x); }, opt);
    m.mean_x2 =
        half_line_integral([&rho](double x) { return x * x * rho(x); }, opt);
    m.var_x = m.mean_x2 - m.mean_x * m.mean_x;
    return m;
}

MomentumVariance variance_p(const StateLabel& s, const QuadratureOptions& opt) {
    MomentumVariance v;

    // Exact route: <p^2> = int_0^inf psi'(x)^2 dx. The momentum density of
    // a zero-extended half-line state can decay as slowly as p^{-4}, so a
    // finite momentum integration systematically underestimates <p^2>; the
    // derivative form has no tail problem at all.
    v.primary = half_line_integral(
        [&s](double x) {
            const double d = states::eval_psi_derivative(s, x);
            return d * d;
        },
        opt);

    // Momentum route: integrate p^2 |phi|^2 to a cutoff, then fit
    // C p^{-(2 gamma - 1)} to the integrand over the last decade and add the
    // analytic remainder of that power law.
    const auto xi = momentum_density(s);
    const auto integrand = [&xi](double p) { return p * p * xi(p); };
    const double cutoff = std::max(6.0 * std::sqrt(states::eigenvalue(s)), 48.0);
    const double exponent = 2.0 * s.gamma - 1.0;

    double core = 0.0;
    try {
        core = quadrature::integrate_finite(integrand, 0.0, cutoff, opt.abs_tol,
                                            opt.rel_tol, 4000)
                   .value;
    } catch (const quadrature::ToleranceNotMet& e) {
        // cross-route agreement is gated at 1e-4 relative, so noise-limited
        // convergence at the 1e-6 level is still far inside budget
        if (e.best().error_estimate > 1e-6) throw;
        core = e.best().value;
    }

    // median of g(p) p^k over log-spaced samples; robust against a stray
    // sample near a density minimum. The window starts past twice the
    // classical turning point, where the power law has actually set in.
    std::vector<double> fitted;
    const int fit_samples = 9;
    const double fit_lo =
        std::max(cutoff / 10.0, 2.0 * std::sqrt(states::eigenvalue(s)));
    for (int i = 0; i < fit_samples; ++i) {
        const double p =
            fit_lo * std::pow(cutoff / fit_lo,
                              static_cast<double>(i) / (fit_samples - 1));
        fitted.push_back(integrand(p) * std::pow(p, exponent));
    }
    std::sort(fitted.begin(), fitted.end());
    const double c = fitted[fit_samples / 2];
    const double remainder =
        c * std::pow(cutoff, 1.0 - exponent) / (exponent - 1.0);

    v.momentum_space = 2.0 * (core + remainder);
    return v;
}

UncertaintyReport heisenberg_report(const StateLabel& s,
                                    const QuadratureOptions& opt) {
    UncertaintyReport rep{s};
    const PositionMoments pm = variance_x(s, opt);
    const MomentumVariance mv = variance_p(s, opt);
    rep.mean_x = pm.mean_x;
    rep.mean_x2 = pm.mean_x2;
    rep.var_x = pm.var_x;
    rep.var_p = mv.primary;
    rep.var_p_momentum = mv.momentum_space;
    rep.product = rep.var_x * rep.var_p;
    rep.x_squeezed = rep.var_x < kVacuumVariance - kFlagGuard;
    rep.p_squeezed = rep.var_p < kVacuumVariance - kFlagGuard;
    return rep;
}

DensityCurve density_samples(const StateLabel& s, Space space, double lo,
                             double hi, int n) {
    if (n < 2) {
        throw std::domain_error("density_samples: need at least two samples");
    }
    if (!(lo < hi)) {
        throw std::domain_error("density_samples: range must satisfy lo < hi");
    }
    if (space == Space::position && lo < 0.0) {
        throw std::domain_error("density_samples: position range starts below 0");
    }
    const auto density =
        space == Space::position ? position_density(s) : momentum_density(s);
    const auto h = quadrature::entropy_integrand(density);

    DensityCurve curve{space, s, {}};
    curve.samples.reserve(n);
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double coord = (i == n - 1) ? hi : lo + i * step;
        curve.samples.emplace_back(coord, h(coord));
    }
    return curve;
}

double harmonic_ground_entropy() { return kEntropySqueezeThreshold; }

}  // namespace isotonic::observables

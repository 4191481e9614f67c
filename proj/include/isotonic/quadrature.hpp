#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

// Deterministic adaptive integration over [0, inf) and (-inf, inf) with
// explicit tail-error control. Node placement is fixed (bisection plus an
// embedded Gauss-Kronrod 7/15 rule), so identical inputs give bit-identical
// results regardless of thread context.

namespace isotonic::quadrature {

enum class Domain { half_line, full_line };

// How an infinite tail was handled.
enum class TailStrategy { none, transform, truncated };

struct IntegrationSpec {
    Domain domain = Domain::half_line;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    // Known algebraic decay rate of the integrand, |f(x)| ~ x^{-k}. When
    // set, the tails are truncated at a point where the power-law remainder
    // is below abs_tol/10; otherwise the domain is mapped to a finite one.
    std::optional<double> tail_exponent_hint;
    int max_subdivisions = 2000;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    TailStrategy strategy = TailStrategy::none;
};

class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(const std::string& what, IntegralResult best);
    const IntegralResult& best() const noexcept { return best_; }

private:
    IntegralResult best_;
};

class NonFiniteIntegrand : public std::runtime_error {
public:
    explicit NonFiniteIntegrand(double abscissa);
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

class NegativeDensity : public std::runtime_error {
public:
    NegativeDensity(double abscissa, double value);
    double abscissa() const noexcept { return abscissa_; }
    double value() const noexcept { return value_; }

private:
    double abscissa_;
    double value_;
};

using Integrand = std::function<double(double)>;

IntegralResult integrate(const Integrand& f, const IntegrationSpec& spec);

// Finite-interval workhorse behind integrate(); also used directly for
// cutoff integrals such as the Fourier oracle.
IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                double abs_tol = 1e-10, double rel_tol = 1e-10,
                                int max_subdivisions = 2000);

// Wraps a density as x -> -rho(x) ln rho(x) with the 0 ln 0 := 0 convention
// (cut at 1e-300, below any attainable density but above underflow).
// A negative density throws NegativeDensity, which signals an upstream
// amplitude bug rather than a quadrature problem.
Integrand entropy_integrand(Integrand density);

}  // namespace isotonic::quadrature

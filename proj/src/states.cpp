#include "isotonic/states.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isotonic/quadrature.hpp"
#include "isotonic/specfun.hpp"

namespace isotonic::states {

namespace {

constexpr double kMinGamma = 1.5;
constexpr double kLnUnderflow = -700.0;  // below exp() range with margin

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double term) {
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// ln of the amplitude prefactor sqrt(2 (gamma)_m / (m! Gamma(gamma))).
double ln_psi_prefactor(const StateLabel& s) {
    using specfun::ln_gamma;
    using specfun::ln_pochhammer;
    return 0.5 * (std::log(2.0) + ln_pochhammer(s.gamma, s.m) -
                  ln_gamma(s.m + 1.0) - ln_gamma(s.gamma));
}

double sign_of_m(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// Series coefficients (-m)_k / ((gamma)_k k!) for k = 0..m.
std::vector<double> series_coefficients(const StateLabel& s) {
    std::vector<double> c(s.m + 1);
    c[0] = 1.0;
    for (int k = 0; k < s.m; ++k) {
        c[k + 1] = c[k] * (static_cast<double>(k) - s.m) / ((s.gamma + k) * (k + 1.0));
    }
    return c;
}

// Unnormalized momentum amplitude exactly as printed, with the 1/sqrt(pi)
// prefactor; the odd part carries the e^{-ipx} transform sign.
ComplexAmplitude eval_phi_raw(const StateLabel& s, double p) {
    using specfun::HypergeometricArgs;
    using specfun::kummer_general;
    using specfun::ln_gamma;

    const double z = -0.5 * p * p;
    KahanSum re, im;
    for (int k = 0; k <= s.m; ++k) {
        const double ck = coefficient_ck(s, k);
        const double a_even = 0.25 + k + 0.5 * s.gamma;
        const double a_odd = 0.75 + k + 0.5 * s.gamma;
        re.add(ck * std::exp(ln_gamma(a_even)) *
               kummer_general(HypergeometricArgs{a_even, 0.5, z}));
        im.add(ck * std::exp(ln_gamma(a_odd)) *
               kummer_general(HypergeometricArgs{a_odd, 1.5, z}));
    }
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    return {inv_sqrt_pi * re.sum, -inv_sqrt_pi * std::sqrt(2.0) * p * im.sum};
}

std::map<std::pair<int, double>, double>& norm_cache() {
    static std::map<std::pair<int, double>, double> cache;
    return cache;
}

std::mutex& norm_cache_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

StateLabel::StateLabel(int m_, double gamma_) : m(m_), gamma(gamma_) {
    if (m < 0) {
        throw std::domain_error("StateLabel: quantum number m must be nonnegative");
    }
    if (!(gamma >= kMinGamma)) {
        throw std::domain_error("StateLabel: gamma must be >= 3/2, got " +
                                std::to_string(gamma_));
    }
}

double gamma_from_a(double a) {
    if (!(a >= 0.0)) {
        throw std::domain_error("gamma_from_a: potential strength must be >= 0, got " +
                                std::to_string(a));
    }
    return 1.0 + 0.5 * std::sqrt(1.0 + 4.0 * a);
}

double eigenvalue(const StateLabel& s) { return 2.0 * (2.0 * s.m + s.gamma); }

double eval_psi(const StateLabel& s, double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("eval_psi: x must be >= 0");
    }
    if (x == 0.0) return 0.0;  // Dirichlet condition, enforced by x^{gamma-1/2}

    const double ln_mag = ln_psi_prefactor(s) + (s.gamma - 0.5) * std::log(x) -
                          0.5 * x * x;
    // the terminating polynomial can only add ~ m log(1+x^2) to the exponent
    if (ln_mag + s.m * std::log1p(x * x) + 40.0 < kLnUnderflow) return 0.0;

    const double series = specfun::kummer_terminating(s.m, s.gamma, x * x);
    return sign_of_m(s.m) * std::exp(ln_mag) * series;
}

double eval_psi_derivative(const StateLabel& s, double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("eval_psi_derivative: x must be > 0");
    }
    const double ln_mag = ln_psi_prefactor(s) + (s.gamma - 1.5) * std::log(x) -
                          0.5 * x * x;
    if (ln_mag + (s.m + 1.0) * std::log1p(x * x) + 40.0 < kLnUnderflow) return 0.0;

    // psi = N sum_k c_k x^{2k+gamma-1/2} e^{-x^2/2}
    // psi' = N e^{-x^2/2} x^{gamma-3/2} sum_k c_k ((2k+gamma-1/2) - x^2) x^{2k}
    const std::vector<double> c = series_coefficients(s);
    const double x2 = x * x;
    KahanSum acc;
    double power = 1.0;
    for (int k = 0; k <= s.m; ++k) {
        acc.add(c[k] * (2.0 * k + s.gamma - 0.5 - x2) * power);
        power *= x2;
    }
    return sign_of_m(s.m) * std::exp(ln_mag) * acc.sum;
}

double coefficient_ck(const StateLabel& s, int k) {
    using specfun::ln_gamma;
    using specfun::ln_pochhammer;
    if (k < 0 || k > s.m) {
        throw std::out_of_range("coefficient_ck: k must lie in [0, m], got k = " +
                                std::to_string(k) + " with m = " + std::to_string(s.m));
    }
    // |(-m)_k| = m! / (m-k)!; the sign alternates as (-1)^k
    const double ln_mag = (-0.75 + k + 0.5 * s.gamma) * std::log(2.0) +
                          ln_gamma(s.m + 1.0) - ln_gamma(s.m - k + 1.0) -
                          ln_gamma(k + 1.0) - ln_pochhammer(s.gamma, k) +
                          0.5 * (ln_pochhammer(s.gamma, s.m) - std::log(M_PI) -
                                 ln_gamma(s.m + 1.0) - ln_gamma(s.gamma));
    const double sign = ((s.m + k) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(ln_mag);
}

double momentum_norm_constant(const StateLabel& s) {
    const auto key = std::make_pair(s.m, s.gamma);
    {
        std::lock_guard<std::mutex> lock(norm_cache_mutex());
        auto it = norm_cache().find(key);
        if (it != norm_cache().end()) return it->second;
    }

    // |phi_raw|^2 is even in p, so integrate the half line and double.
    // 1e-9 keeps the normalization two orders inside its 1e-8 budget while
    // staying above the amplitude evaluation noise of large-m states.
    quadrature::IntegrationSpec spec;
    spec.domain = quadrature::Domain::half_line;
    spec.abs_tol = 1e-9;
    spec.rel_tol = 1e-9;
    spec.tail_exponent_hint = 2.0 * s.gamma + 1.0;
    const auto result = quadrature::integrate(
        [&s](double p) { return eval_phi_raw(s, p).norm_sq(); }, spec);
    const double norm = 2.0 * result.value;

    std::lock_guard<std::mutex> lock(norm_cache_mutex());
    return norm_cache().emplace(key, norm).first->second;
}

ComplexAmplitude eval_phi(const StateLabel& s, double p) {
    const double scale = 1.0 / std::sqrt(momentum_norm_constant(s));
    const ComplexAmplitude raw = eval_phi_raw(s, p);
    return {scale * raw.re, scale * raw.im};
}

}  // namespace isotonic::states

#include "isotonic/specfun.hpp"

#include <cmath>
#include <limits>

namespace isotonic::specfun {

namespace {

constexpr long kMaxSeriesTerms = 1000000;

// Two-term Kahan accumulator; the terminating sums alternate in sign and
// the running compensation keeps the cancellation error at the final
// magnitude instead of the largest intermediate one.
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

bool is_nonpositive_integer(double x) {
    return x <= 0.5 && std::abs(x - std::round(x)) < 1e-12 * (1.0 + std::abs(x));
}

void check_b(const HypergeometricArgs& args) {
    if (is_nonpositive_integer(args.b)) {
        throw std::domain_error("kummer: denominator parameter b = " +
                                std::to_string(args.b) +
                                " is zero or a negative integer");
    }
}

// Asymptotic expansion of 1F1(a;b;z) for z -> -inf:
//   Gamma(b)/Gamma(b-a) * (-z)^{-a} * sum_j (a)_j (a-b+1)_j / (j! (-z)^j).
// Returns NaN when the optimally truncated tail is not small enough.
double kummer_asymptotic_neg(double a, double b, double z) {
    const double w = -z;
    // Gamma(b-a) may be negative here; carry the sign explicitly.
    const double c = b - a;
    double sign = 1.0;
    double ln_gamma_c;
    if (c > 0.0) {
        ln_gamma_c = std::lgamma(c);
    } else {
        if (is_nonpositive_integer(c)) {
            return 0.0;  // reflection pole: the algebraic branch vanishes
        }
        // reflection: Gamma(c) = pi / (sin(pi c) Gamma(1-c))
        const double s = std::sin(M_PI * c);
        sign = (s < 0.0) ? -1.0 : 1.0;
        ln_gamma_c = std::log(M_PI / std::abs(s)) - std::lgamma(1.0 - c);
    }
    const double prefactor =
        sign * std::exp(std::lgamma(b) - ln_gamma_c - a * std::log(w));

    // Terms may grow for a few steps when a^2 > w before the shrinking
    // window opens, so tolerate early growth; once past it, the first
    // increase marks the optimal truncation point.
    KahanSum acc;
    double term = 1.0;
    acc.add(term);
    double smallest = std::abs(term);
    for (int j = 0; j < 400; ++j) {
        term *= (a + j) * (a - b + 1.0 + j) / ((j + 1.0) * w);
        const double mag = std::abs(term);
        if (mag > smallest && j >= 8) break;
        acc.add(term);
        smallest = std::min(smallest, mag);
        if (mag < 1e-17 * std::abs(acc.sum)) {
            return prefactor * acc.sum;
        }
    }
    if (smallest < 1e-13 * std::max(std::abs(acc.sum), 1.0)) {
        return prefactor * acc.sum;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Predicted log of the largest series term relative to scale 1; the direct
// series at negative z cancels down from this magnitude, so it bounds the
// digits lost to rounding.
double direct_cancellation_exponent(double a, double b, double z) {
    if (z >= 0.0) return 0.0;
    const double w = -z;
    return w + std::max(a - b, 0.0) * std::log(std::max(w, 1.0));
}

}  // namespace

KummerNonConvergence::KummerNonConvergence(const HypergeometricArgs& args, long terms)
    : std::runtime_error("1F1(" + std::to_string(args.a) + ";" + std::to_string(args.b) +
                         ";" + std::to_string(args.z) + ") did not converge after " +
                         std::to_string(terms) + " terms"),
      args_(args),
      terms_(terms) {}

double ln_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("ln_gamma: argument must be positive, got " +
                                std::to_string(x));
    }
    return std::lgamma(x);
}

double ln_pochhammer(double gamma, int m) {
    if (!(gamma > 0.0)) {
        throw std::domain_error("pochhammer: base must be positive, got " +
                                std::to_string(gamma));
    }
    if (m < 0) {
        throw std::domain_error("pochhammer: order must be nonnegative");
    }
    return std::lgamma(gamma + m) - std::lgamma(gamma);
}

double pochhammer(double gamma, int m) {
    if (!(gamma > 0.0)) {
        throw std::domain_error("pochhammer: base must be positive, got " +
                                std::to_string(gamma));
    }
    if (m < 0) {
        throw std::domain_error("pochhammer: order must be nonnegative");
    }
    if (m <= 20) {
        double p = 1.0;
        for (int k = 0; k < m; ++k) p *= gamma + k;
        return p;
    }
    return std::exp(ln_pochhammer(gamma, m));
}

double kummer_terminating(int m, double gamma, double z) {
    if (m < 0) {
        throw std::domain_error("kummer_terminating: m must be nonnegative");
    }
    if (!(gamma > 0.0)) {
        throw std::domain_error("kummer_terminating: gamma must be positive");
    }
    KahanSum acc;
    double term = 1.0;
    acc.add(term);
    for (int k = 0; k < m; ++k) {
        term *= (static_cast<double>(k) - m) / ((gamma + k) * (k + 1.0)) * z;
        acc.add(term);
    }
    return acc.sum;
}

double kummer_series(const HypergeometricArgs& args) {
    check_b(args);
    KahanSum acc;
    double term = 1.0;
    acc.add(term);
    if (args.z == 0.0) return acc.sum;
    long settled = 0;
    for (long k = 0; k < kMaxSeriesTerms; ++k) {
        term *= (args.a + k) / ((args.b + k) * (k + 1.0)) * args.z;
        acc.add(term);
        if (term == 0.0 ||
            std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(acc.sum)) {
            // two consecutive negligible terms, so an alternating series
            // cannot be pausing at a sign-cancellation dip
            if (++settled >= 2) return acc.sum;
        } else {
            settled = 0;
        }
    }
    throw KummerNonConvergence(args, kMaxSeriesTerms);
}

double kummer_transformed(const HypergeometricArgs& args) {
    check_b(args);
    const HypergeometricArgs mirrored{args.b - args.a, args.b, -args.z};
    if (is_nonpositive_integer(mirrored.a)) {
        // terminating polynomial branch; sum it exactly
        const int n = static_cast<int>(std::lround(-mirrored.a));
        const double poly = kummer_terminating(n, args.b, mirrored.z);
        // e^z underflows before poly can overflow on this branch
        return std::exp(args.z) * poly;
    }
    return std::exp(args.z) * kummer_series(mirrored);
}

double kummer_general(const HypergeometricArgs& args) {
    check_b(args);
    if (is_nonpositive_integer(args.a)) {
        const int m = static_cast<int>(std::lround(-args.a));
        return kummer_terminating(m, args.b, args.z);
    }
    if (args.z >= 0.0) {
        return kummer_series(args);
    }

    // Negative argument. The direct series cancels down from a peak term of
    // magnitude ~ exp(|z| + (a-b) ln |z|), so its absolute error floor is
    // that peak times machine epsilon. Keep it only while the floor stays
    // near 1e-12; the transformed series has (eventually) single-signed
    // terms and no such floor.
    const double w = -args.z;
    if (direct_cancellation_exponent(args.a, args.b, args.z) <= 8.0) {
        return kummer_series(args);
    }
    if (is_nonpositive_integer(args.b - args.a)) {
        return kummer_transformed(args);  // polynomial branch, any w
    }
    if (w <= 600.0) {
        // e^w stays in range, transformed series is safe and exact enough
        return kummer_transformed(args);
    }
    const double asym = kummer_asymptotic_neg(args.a, args.b, args.z);
    if (std::isfinite(asym)) return asym;
    // w > 600 would overflow the transformed series and the asymptotic tail
    // is not small enough either; only a far outside its documented range
    // can get here.
    throw KummerNonConvergence(args, 400);
}

}  // namespace isotonic::specfun

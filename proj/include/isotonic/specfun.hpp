#pragma once

#include <stdexcept>
#include <string>

// Stable evaluation of the special functions behind the oscillator
// eigenfunctions: log-Gamma, Pochhammer symbols, and Kummer's confluent
// hypergeometric function 1F1(a;b;z).

namespace isotonic::specfun {

struct HypergeometricArgs {
    double a = 0.0;  // numerator parameter
    double b = 1.0;  // denominator parameter, must not be zero or a negative integer
    double z = 0.0;  // real argument
};

// Thrown when a 1F1 series fails to converge within the term budget,
// which signals invalid parameters rather than a tolerance problem.
class KummerNonConvergence : public std::runtime_error {
public:
    KummerNonConvergence(const HypergeometricArgs& args, long terms);
    const HypergeometricArgs& args() const noexcept { return args_; }
    long terms() const noexcept { return terms_; }

private:
    HypergeometricArgs args_;
    long terms_;
};

// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double ln_gamma(double x);

// Rising factorial (gamma)_m = gamma (gamma+1) ... (gamma+m-1), gamma > 0.
// Direct ascending product for small m, log space beyond m = 20.
double pochhammer(double gamma, int m);

// ln (gamma)_m, the log-space form used when combining amplitude prefactors.
double ln_pochhammer(double gamma, int m);

// Terminating series 1F1(-m; gamma; z): exact sum of m+1 terms with
// compensated accumulation (the terms alternate in sign).
double kummer_terminating(int m, double gamma, double z);

// General-purpose 1F1. Chooses between the direct Taylor series, the
// transformed series e^z 1F1(b-a;b;-z), and the large-|z| asymptotic
// expansion depending on where the requested point is well conditioned.
double kummer_general(const HypergeometricArgs& args);

// The two evaluation routes, exposed so their mutual consistency can be
// checked directly. kummer_series sums the defining Taylor series at z;
// kummer_transformed evaluates e^z * series(b-a, b, -z).
double kummer_series(const HypergeometricArgs& args);
double kummer_transformed(const HypergeometricArgs& args);

}  // namespace isotonic::specfun

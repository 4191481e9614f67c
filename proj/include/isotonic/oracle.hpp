#pragma once

#include <vector>

#include "isotonic/states.hpp"

// Brute-force verification paths that deliberately avoid the analytic
// momentum-space machinery: a direct-quadrature Fourier transform, the
// harmonic-oscillator reduction at gamma = 3/2, and Gram-matrix
// orthonormality. These may call eval_psi (whose terminating series is
// unit-tested against the Hermite route) but never eval_phi or the general
// Kummer evaluator, so the momentum path stays independently checkable.

namespace isotonic::oracle {

struct OracleConfig {
    double x_cutoff = 0.0;       // 0 => search outward from the turning point
    int samples_per_unit = 200;  // initial f-samples per unit length
    double tolerance = 1e-9;
};

// Smallest X >= sqrt(e_m) with |psi(X)| < 1e-16; psi is monotone decaying
// past the classical turning point, so an outward step search suffices.
double default_cutoff(const states::StateLabel& s);

// (2 pi)^{-1/2} int_0^cutoff psi(x) (cos px - i sin px) dx, each component
// integrated adaptively to the configured tolerance.
states::ComplexAmplitude fourier_oracle(const states::StateLabel& s, double p,
                                        const OracleConfig& cfg = {});

// Normalized full-line harmonic-oscillator eigenfunction
// pi^{-1/4} (2^n n!)^{-1/2} H_n(x) e^{-x^2/2} via the three-term recurrence.
double hermite_oracle(int n, double x);

// G[m][n] = int_0^inf psi_m psi_n dx for m, n = 0..n_max at fixed gamma.
std::vector<std::vector<double>> gram_matrix(double gamma, int n_max);

}  // namespace isotonic::oracle

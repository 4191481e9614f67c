#pragma once

#include <complex>

// Eigenstates of H = -d^2/dx^2 + x^2 + A/x^2 on L2(0, inf) with a Dirichlet
// condition at the origin. States are labeled by (m, gamma) with
// gamma = 1 + sqrt(1 + 4A)/2, so A >= 0 corresponds to gamma >= 3/2.

namespace isotonic::states {

struct StateLabel {
    int m;
    double gamma;

    StateLabel(int m_, double gamma_);

    friend bool operator<(const StateLabel& a, const StateLabel& b) {
        if (a.m != b.m) return a.m < b.m;
        return a.gamma < b.gamma;
    }
};

// Momentum amplitude value; the position wavefunction is the real-valued
// special case. Natural units hbar = 1 throughout.
struct ComplexAmplitude {
    double re = 0.0;
    double im = 0.0;

    double norm_sq() const { return re * re + im * im; }
};

// gamma = 1 + sqrt(1 + 4a)/2 for the potential strength a >= 0.
double gamma_from_a(double a);

// e_m = 2(2m + gamma); the spectrum stays equidistant for every gamma.
double eigenvalue(const StateLabel& s);

// psi_m^gamma(x) for x >= 0, including the (-1)^m sign convention.
// Prefactors are combined in log space and exponentiated once.
double eval_psi(const StateLabel& s, double x);

// d/dx of eval_psi via term-by-term differentiation of the finite series.
double eval_psi_derivative(const StateLabel& s, double x);

// Expansion coefficient C_k of the momentum amplitude, 0 <= k <= m.
double coefficient_ck(const StateLabel& s, int k);

// Analytic momentum wavefunction under the unitary convention
// phi(p) = (2 pi)^{-1/2} int_0^inf psi(x) e^{-ipx} dx, rescaled by a
// numerically determined constant so that int |phi|^2 dp = 1.
ComplexAmplitude eval_phi(const StateLabel& s, double p);

// The numerically determined squared norm of the raw (printed-form)
// amplitude; eval_phi divides by its square root. Cached per state.
double momentum_norm_constant(const StateLabel& s);

}  // namespace isotonic::states

#pragma once

#include <vector>

#include "isotonic/states.hpp"

// Per-state physics reports: Shannon entropies of the position and momentum
// densities, the BBM entropic bound, quadrature variances with the
// Heisenberg product, and entropy-density curves for plotting.

namespace isotonic::observables {

// Entropies are reported in nats throughout.
inline constexpr double kBbmBound = 2.1447298858494001741;          // 1 + ln pi
inline constexpr double kEntropySqueezeThreshold = 1.0723649429247000871;  // (1 + ln pi)/2
inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kHeisenbergBound = 0.25;

// Squeezing flags use a strict inequality with a 1e-9 guard band.
inline constexpr double kFlagGuard = 1e-9;

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

struct EntropyReport {
    states::StateLabel label;
    double s_position = 0.0;
    double s_momentum = 0.0;
    double s_sum = 0.0;
    double bbm_bound = kBbmBound;
    bool bbm_satisfied = false;
    bool entropy_squeezed_position = false;
    bool entropy_squeezed_momentum = false;
};

struct UncertaintyReport {
    states::StateLabel label;
    double mean_x = 0.0;
    double mean_x2 = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;            // derivative route (exact)
    double var_p_momentum = 0.0;   // momentum-space route with tail extrapolation
    double product = 0.0;          // var_x * var_p
    double heisenberg_bound = kHeisenbergBound;
    bool x_squeezed = false;
    bool p_squeezed = false;
};

enum class Space { position, momentum };

struct DensityCurve {
    Space space = Space::position;
    states::StateLabel label;
    std::vector<std::pair<double, double>> samples;  // (coordinate, -rho ln rho)
};

struct PositionMoments {
    double mean_x = 0.0;
    double mean_x2 = 0.0;
    double var_x = 0.0;
};

struct MomentumVariance {
    double primary = 0.0;         // int |psi'(x)|^2 dx
    double momentum_space = 0.0;  // int p^2 |phi(p)|^2 dp, tail-extrapolated
};

// S(rho) = -int_0^inf |psi|^2 ln |psi|^2 dx.
double position_entropy(const states::StateLabel& s,
                        const QuadratureOptions& opt = {});

// S(xi) = -int_{-inf}^{inf} |phi|^2 ln |phi|^2 dp. The density is even, so
// the half line is integrated and doubled; the algebraic p^{-(2 gamma + 1)}
// tail is truncated under that decay hint.
double momentum_entropy(const states::StateLabel& s,
                        const QuadratureOptions& opt = {});

EntropyReport bbm_report(const states::StateLabel& s,
                         const QuadratureOptions& opt = {});

PositionMoments variance_x(const states::StateLabel& s,
                           const QuadratureOptions& opt = {});

// <p> = 0 identically (even momentum density). The derivative route is
// exact; the momentum route integrates p^2 |phi|^2 to a cutoff and adds a
// fitted power-law remainder, and exists to cross-check the first.
MomentumVariance variance_p(const states::StateLabel& s,
                            const QuadratureOptions& opt = {});

UncertaintyReport heisenberg_report(const states::StateLabel& s,
                                    const QuadratureOptions& opt = {});

// n uniformly spaced samples of the entropy density over [lo, hi].
DensityCurve density_samples(const states::StateLabel& s, Space space, double lo,
                             double hi, int n);

// (1 + ln pi)/2, the harmonic-oscillator ground-state entropy that sets the
// entropy-squeezing threshold.
double harmonic_ground_entropy();

}  // namespace isotonic::observables

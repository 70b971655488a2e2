#pragma once

#include <complex>

#include "swpclock/errors.hpp"

namespace swpclock {

using Complex = std::complex<double>;

/// Physical constants defining the unit system. Defaults are atomic units.
struct ScatteringContext {
    double hbar = 1.0;
    double mu = 1.0;

    ScatteringContext() = default;
    ScatteringContext(double hbar_, double mu_);
};

/// Asymmetric rectangular barrier: V(z) = V0 on (0,a), V1 on (a,inf), 0 on (-inf,0).
/// Requires V0 > 0, |V1| < V0, a > 0 (V1 may carry either sign).
struct BarrierConfig {
    double v0;
    double v1;
    double a;

    BarrierConfig(double v0_, double v1_, double a_);
};

enum class Regime {
    Propagating,     ///< E > V0, all wave numbers real
    Evanescent,      ///< V1 < E <= V0, k2 = i q2
    BelowRightLevel, ///< V1 > 0 and E <= V1, k2 and k3 both imaginary
};

const char* to_string(Regime regime);

/// Wave numbers of the three regions for incidence from the left with k1 > 0.
/// k2 and k3 sit on the physical branch: positive real part when propagating,
/// +i q (q > 0) when evanescent. The signed squares k2sq = 2mu(E-V0)/hbar^2 and
/// k3sq = 2mu(E-V1)/hbar^2 hold as exact identities.
struct WaveNumbers {
    double k1;
    Complex k2;
    Complex k3;
    double k2sq;
    double k3sq;
    double energy;
    Regime regime;
};

WaveNumbers wave_numbers(const ScatteringContext& ctx, const BarrierConfig& barrier,
                         double k1);

/// Amplitudes of psi_I = e^{ik1 z} + B e^{-ik1 z}, psi_III = C e^{ik3 z},
/// with the auxiliary factor G defined by B = C G e^{ik3 a}.
/// Phase conventions: C = |C| e^{i(phi_t - k3 a)} for real k3, phi_0 = arg G,
/// phi_r = phi_t + phi_0; all phases reported in (-pi, pi].
struct ScatteringResult {
    Complex c;
    Complex b;
    Complex g;
    double phi_t;
    double phi_0;
    double phi_r;
    double t_coeff;
    double r_coeff;
    Regime regime;
};

/// Solves the stationary matching problem at z = 0 and z = a with a single
/// complex-valued code path valid in all regimes.
ScatteringResult scatter(const ScatteringContext& ctx, const BarrierConfig& barrier,
                         double k1);

/// Transmission phase arctan[((k2^2+k1 k3)/(k2(k1+k3))) tan(k2 a)], unwrapped so
/// the phase is continuous in a with phase -> 0 as a -> 0+. Propagating only.
double phase_t_analytic(const ScatteringContext& ctx, const BarrierConfig& barrier,
                        double k1);

/// Same expression with k3 -> -k3; the phase of G. Propagating only.
double phase_0_analytic(const ScatteringContext& ctx, const BarrierConfig& barrier,
                        double k1);

struct Amplitudes {
    Complex b;
    Complex c;
};

/// Low-level matching solve on raw wave numbers. k_in is the incident wave
/// number (real, > 0), k2sq the signed squared barrier wave number, k_out the
/// (possibly imaginary) outgoing wave number. Used directly for mirrored-profile
/// (right-incidence) solves and for potentials shifted outside the BarrierConfig
/// domain of validity.
Amplitudes scatter_amplitudes(double k_in, double k2sq, Complex k_out, double a);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double phi);

} // namespace swpclock

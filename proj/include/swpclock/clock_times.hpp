#pragma once

#include <vector>

#include "swpclock/scattering.hpp"

namespace swpclock {

enum class Channel { Transmission, Reflection };

/// Stationary clock and dwell times for one incident wave number.
/// t_cr = t_ct + t_0 by construction; tau_d = t_ct + R t_0 = T t_ct + R t_cr.
struct StationaryTimes {
    double t_ct;  ///< transmission clock time, -hbar d(phi_T)/dV0
    double t_0;   ///< asymmetry time, -hbar d(phi_0)/dV0; zero for V1 = 0
    double t_cr;  ///< reflection clock time
    double tau_d; ///< dwell time
};

/// Evaluates the stationary times from the closed-form V0-derivatives of the
/// transmission and reflection phases, with band-edge-safe forms near E = V0
/// and the hyperbolic continuation below it.
/// Throws TransmissionUndefined when V1 > 0 and E(k1) <= V1.
StationaryTimes stationary_times(const ScatteringContext& ctx,
                                 const BarrierConfig& barrier, double k1);

/// Reflection clock time valid in every regime. For E > V1 this is
/// stationary_times().t_cr; for BelowRightLevel it is the V0-derivative of the
/// phase of the (unimodular) reflection amplitude continued to k3 = i q3, and
/// `extrapolated` is set.
struct ReflectionTime {
    double t_cr;
    bool extrapolated;
};

ReflectionTime reflection_time(const ScatteringContext& ctx,
                               const BarrierConfig& barrier, double k1);

/// Central finite difference -hbar [phi(V0+eps) - phi(V0-eps)] / (2 eps) of the
/// channel phase taken from scatter(), with the perturbed phases unwrapped to
/// the branch nearest the unperturbed one. Independent of the closed-form path
/// above; serves as its verification oracle.
/// Throws StepTooLarge if eps > V0/10.
double clock_time_fd_oracle(const ScatteringContext& ctx, const BarrierConfig& barrier,
                            double k1, Channel channel, double eps);

/// Default oracle step, 1e-6 * max(V0, 1).
double default_fd_step(const BarrierConfig& barrier);

/// Barrier widths a_n = n pi / k2 for n = 1..n_max, ascending. At these widths
/// the transmission coefficient of the asymmetric barrier is maximal (the
/// barrier reduces to the bare 0 -> V1 step). Propagating regime only.
std::vector<double> resonance_widths(const ScatteringContext& ctx,
                                     const BarrierConfig& barrier, double k1,
                                     int n_max);

/// Closed-form reflection clock time at a resonance width,
/// -(2 mu k1 a / hbar k2^2) (V0 - V1) / V1. Sign is opposite to sign(V1).
/// Throws SymmetricBarrier for V1 = 0 (expression singular).
double resonance_reflection_time(const ScatteringContext& ctx,
                                 const BarrierConfig& barrier, double k1);

/// Average electronic density of energy per unit length, assembled from
/// 2 pi hbar a nu(E) = 2 T t_c^T + R- t_c-^R + R+ t_c+^R with the right-incidence
/// quantities obtained by scattering on the mirrored profile (incident wave
/// number k3). Requires E > V0 so both incidence directions are propagating.
struct DensityOfStatesResult {
    double nu;
    double r_minus;
    double r_plus;
    double t_cr_minus;
    double t_cr_plus;
};

DensityOfStatesResult density_of_states(const ScatteringContext& ctx,
                                        const BarrierConfig& barrier, double k1);

namespace detail {

/// -hbar d(phi_T)/dV0 continued in k_out; real for real k_out. The asymmetry
/// time is the same kernel with k_out -> -k_out.
Complex transmission_time_kernel(const ScatteringContext& ctx, double k_in,
                                 double k2sq, Complex k_out, double a);

/// -hbar d(arg B)/dV0 for the totally reflecting regime (k2 = i q2, k3 = i q3).
double below_level_reflection_kernel(const ScatteringContext& ctx, double k_in,
                                     double q2, double q3, double a);

} // namespace detail

} // namespace swpclock

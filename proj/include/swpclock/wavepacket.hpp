#pragma once

#include <complex>
#include <vector>

#include "swpclock/clock_times.hpp"
#include "swpclock/quadrature.hpp"
#include "swpclock/scattering.hpp"

namespace swpclock {

/// Momentum-space Gaussian packet
///   A(k1) = (2 sigma^2/pi)^{1/4} exp{-i z0 (k1-k0) - sigma^2 (k1-k0)^2},
/// normalized so that the integral of |A|^2 dk1 is 1. sigma is the spatial
/// width; the momentum standard deviation of |A|^2 is 1/(2 sigma).
struct GaussianPacket {
    double k0;
    double sigma;
    double z0;

    GaussianPacket(double k0_, double sigma_, double z0_);

    Complex amplitude(double k1) const;
    double density(double k1) const; ///< |A(k1)|^2
    double momentum_sigma() const { return 0.5 / sigma; }
    /// |A|^2 weight carried by k1 < 0, in closed form.
    double negative_k_weight() const;
};

/// Sub-ensemble averages over the transmitted/reflected channels (one packet,
/// one barrier). p_t + p_r = 1 under the window normalization.
struct EnsembleAverages {
    double avg_tct;    ///< <t_c^T> over the transmitted sub-ensemble
    double avg_tcr;    ///< <t_c^R> over the reflected sub-ensemble
    double avg_taud_t; ///< <tau_D>_T
    double avg_taud_r; ///< <tau_D>_R
    double p_t;
    double p_r;
    double negk_weight;
    bool negk_dominant; ///< warning flag: negk_weight > 1e-6
};

/// Total channel probability int |A|^2 W dk / int |A|^2 dk over the truncated
/// window, W = T or R, so that p_t + p_r = 1.
double total_probability(const GaussianPacket& packet, const ScatteringContext& ctx,
                         const BarrierConfig& barrier, Channel channel,
                         const QuadratureSpec& quad);

/// All four channel averages plus the channel probabilities in one adaptive
/// pass; the integrand is evaluated with the stationary-time kernels per node
/// and the interval is pre-split at the band-edge wave numbers and at the
/// resonance k-values inside the window. Modes with E <= V1 (V1 > 0) contribute
/// T = 0 to transmitted quantities and the continued reflection time to
/// reflected ones.
EnsembleAverages ensemble_averages(const GaussianPacket& packet,
                                   const ScatteringContext& ctx,
                                   const BarrierConfig& barrier,
                                   const QuadratureSpec& quad);

/// Post-selected channel density rho(k) = |A|^2 W(k) / int |A|^2 W dk.
/// The denominator is computed once at construction with the same quadrature
/// engine and cached in the object.
class ChannelDensity {
public:
    ChannelDensity(const GaussianPacket& packet, const ScatteringContext& ctx,
                   const BarrierConfig& barrier, Channel channel,
                   const QuadratureSpec& quad);

    double operator()(double k1) const;
    double denominator() const { return denom_; }

private:
    GaussianPacket packet_;
    ScatteringContext ctx_;
    BarrierConfig barrier_;
    Channel channel_;
    double denom_;
};

namespace detail {

/// Channel weights and times at a single wave number, uniform across regimes.
struct NodeChannels {
    double t_coeff;
    double r_coeff;
    double t_ct;  ///< zero contribution when t_coeff = 0
    double t_cr;
    double tau_d;
};

NodeChannels node_channels(const ScatteringContext& ctx, const BarrierConfig& barrier,
                           double k1);

/// Integration window [max(k_floor, k0 - w s), k0 + w s] and interior kink
/// points (band edges, resonance wave numbers).
struct KWindow {
    double lo;
    double hi;
    std::vector<double> cuts;
};

KWindow make_k_window(const GaussianPacket& packet, const ScatteringContext& ctx,
                      const BarrierConfig& barrier, const QuadratureSpec& quad);

} // namespace detail

} // namespace swpclock

#include "swpclock/wavepacket.hpp"

#include <cmath>
#include <numbers>

namespace swpclock {

namespace {

constexpr double kFloorK = 1e-6;     // positive-wave-number clip
constexpr double kVanishing = 1e-300;

} // namespace

GaussianPacket::GaussianPacket(double k0_, double sigma_, double z0_)
    : k0(k0_), sigma(sigma_), z0(z0_) {
    if (!(k0 > 0.0) || !std::isfinite(k0))
        throw InvalidConfig("GaussianPacket: k0 must be positive");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw InvalidConfig("GaussianPacket: sigma must be positive");
    if (!(z0 < 0.0))
        throw InvalidConfig("GaussianPacket: z0 must be negative (packet starts left of the barrier)");
}

Complex GaussianPacket::amplitude(double k1) const {
    const double dk = k1 - k0;
    const double norm = std::pow(2.0 * sigma * sigma / std::numbers::pi, 0.25);
    return norm * std::exp(Complex(-sigma * sigma * dk * dk, -z0 * dk));
}

double GaussianPacket::density(double k1) const {
    const double dk = k1 - k0;
    return std::sqrt(2.0 / std::numbers::pi) * sigma *
           std::exp(-2.0 * sigma * sigma * dk * dk);
}

double GaussianPacket::negative_k_weight() const {
    return 0.5 * std::erfc(std::numbers::sqrt2 * sigma * k0);
}

namespace detail {

NodeChannels node_channels(const ScatteringContext& ctx, const BarrierConfig& barrier,
                           double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (wn.regime == Regime::BelowRightLevel) {
        const double q2 = std::sqrt(-wn.k2sq);
        const double q3 = std::sqrt(-wn.k3sq);
        const double t_cr = below_level_reflection_kernel(ctx, k1, q2, q3, barrier.a);
        return {0.0, 1.0, 0.0, t_cr, t_cr};
    }
    const double k3 = wn.k3.real();
    const Amplitudes amp = scatter_amplitudes(k1, wn.k2sq, wn.k3, barrier.a);
    NodeChannels nc;
    nc.t_coeff = (k3 / k1) * std::norm(amp.c);
    nc.r_coeff = std::norm(amp.b);
    nc.t_ct = transmission_time_kernel(ctx, k1, wn.k2sq, k3, barrier.a).real();
    const double t_0 =
        std::abs(barrier.v1) < kVanishing
            ? 0.0
            : transmission_time_kernel(ctx, k1, wn.k2sq, -k3, barrier.a).real();
    nc.t_cr = nc.t_ct + t_0;
    nc.tau_d = nc.t_ct + nc.r_coeff * t_0;
    return nc;
}

KWindow make_k_window(const GaussianPacket& packet, const ScatteringContext& ctx,
                      const BarrierConfig& barrier, const QuadratureSpec& quad) {
    const double s = packet.momentum_sigma();
    KWindow win;
    win.lo = std::max(kFloorK, packet.k0 - quad.k_window * s);
    win.hi = packet.k0 + quad.k_window * s;
    if (!(win.hi > win.lo))
        throw InvalidConfig("make_k_window: window collapses below the positive-k floor");

    const double pref = 2.0 * ctx.mu / (ctx.hbar * ctx.hbar);
    win.cuts.push_back(std::sqrt(pref * barrier.v0)); // band edge E = V0
    if (barrier.v1 > 0.0)
        win.cuts.push_back(std::sqrt(pref * barrier.v1)); // branch point E = V1
    // Resonance wave numbers k2 a = n pi inside the window.
    const double kv0sq = pref * barrier.v0;
    for (int n = 1; n <= 10000; ++n) {
        const double k2n = n * std::numbers::pi / barrier.a;
        const double kn = std::sqrt(kv0sq + k2n * k2n);
        if (kn >= win.hi)
            break;
        if (kn > win.lo)
            win.cuts.push_back(kn);
    }
    return win;
}

} // namespace detail

double total_probability(const GaussianPacket& packet, const ScatteringContext& ctx,
                         const BarrierConfig& barrier, Channel channel,
                         const QuadratureSpec& quad) {
    const detail::KWindow win = detail::make_k_window(packet, ctx, barrier, quad);
    const auto f = [&](double k, std::span<double> out) {
        const double a2 = packet.density(k);
        const detail::NodeChannels nc = detail::node_channels(ctx, barrier, k);
        out[0] = a2 * (channel == Channel::Transmission ? nc.t_coeff : nc.r_coeff);
        out[1] = a2;
    };
    const std::vector<double> I = integrate_adaptive(f, 2, win.lo, win.hi, win.cuts, quad);
    return I[0] / I[1];
}

EnsembleAverages ensemble_averages(const GaussianPacket& packet,
                                   const ScatteringContext& ctx,
                                   const BarrierConfig& barrier,
                                   const QuadratureSpec& quad) {
    const detail::KWindow win = detail::make_k_window(packet, ctx, barrier, quad);

    // One pass: {|A|^2, |A|^2 T, |A|^2 R, |A|^2 T t_ct, |A|^2 R t_cr,
    //            |A|^2 T tau_d, |A|^2 R tau_d}
    const auto f = [&](double k, std::span<double> out) {
        const double a2 = packet.density(k);
        const detail::NodeChannels nc = detail::node_channels(ctx, barrier, k);
        out[0] = a2;
        out[1] = a2 * nc.t_coeff;
        out[2] = a2 * nc.r_coeff;
        out[3] = a2 * nc.t_coeff * nc.t_ct;
        out[4] = a2 * nc.r_coeff * nc.t_cr;
        out[5] = a2 * nc.t_coeff * nc.tau_d;
        out[6] = a2 * nc.r_coeff * nc.tau_d;
    };
    const std::vector<double> I = integrate_adaptive(f, 7, win.lo, win.hi, win.cuts, quad);

    if (I[1] < kVanishing)
        throw VanishingChannel("ensemble_averages: transmitted channel weight vanishes");
    if (I[2] < kVanishing)
        throw VanishingChannel("ensemble_averages: reflected channel weight vanishes");

    EnsembleAverages avg;
    avg.p_t = I[1] / I[0];
    avg.p_r = I[2] / I[0];
    avg.avg_tct = I[3] / I[1];
    avg.avg_tcr = I[4] / I[2];
    avg.avg_taud_t = I[5] / I[1];
    avg.avg_taud_r = I[6] / I[2];
    avg.negk_weight = packet.negative_k_weight();
    avg.negk_dominant = avg.negk_weight > 1e-6;
    return avg;
}

ChannelDensity::ChannelDensity(const GaussianPacket& packet, const ScatteringContext& ctx,
                               const BarrierConfig& barrier, Channel channel,
                               const QuadratureSpec& quad)
    : packet_(packet), ctx_(ctx), barrier_(barrier), channel_(channel), denom_(0.0) {
    const detail::KWindow win = detail::make_k_window(packet, ctx, barrier, quad);
    const auto f = [&](double k, std::span<double> out) {
        const detail::NodeChannels nc = detail::node_channels(ctx, barrier, k);
        out[0] = packet.density(k) *
                 (channel == Channel::Transmission ? nc.t_coeff : nc.r_coeff);
    };
    denom_ = integrate_adaptive(f, 1, win.lo, win.hi, win.cuts, quad)[0];
    if (denom_ < kVanishing)
        throw VanishingChannel("ChannelDensity: channel weight below 1e-300");
}

double ChannelDensity::operator()(double k1) const {
    const detail::NodeChannels nc = detail::node_channels(ctx_, barrier_, k1);
    const double w = channel_ == Channel::Transmission ? nc.t_coeff : nc.r_coeff;
    return packet_.density(k1) * w / denom_;
}

} // namespace swpclock

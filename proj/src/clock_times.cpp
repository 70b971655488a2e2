#include "swpclock/clock_times.hpp"

#include <cmath>
#include <numbers>

namespace swpclock {

namespace {

constexpr double kSymmetricEps = 1e-300; // exact-zero detection for V1

// g(u2) = (1 - sinc(u)) / u^2 with u2 = u^2 signed; series 1/3! - u2/5! + ...
// Negative u2 gives (sinhc - 1)/q^2 automatically. Accurate for |u2| <= 0.25.
double one_minus_sinc_over_u2(double u2) {
    double term = 1.0 / 6.0, sum = term;
    for (int n = 2; n <= 8; ++n) {
        term *= -u2 / ((2.0 * n) * (2.0 * n + 1.0));
        sum += term;
    }
    return sum;
}

double cos_from_x2(double x2) {
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= 9; ++n) {
        term *= -x2 / ((2.0 * n - 1.0) * (2.0 * n));
        sum += term;
    }
    return sum;
}

double sinc_from_x2(double x2) {
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= 9; ++n) {
        term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
        sum += term;
    }
    return sum;
}

template <typename T> T sq(T x) { return x * x; }

} // namespace

namespace detail {

Complex transmission_time_kernel(const ScatteringContext& ctx, double k_in,
                                 double k2sq, Complex k_out, double a) {
    const Complex kk = k_in * k_out;
    const Complex sum = k_in + k_out;
    const double u2 = 4.0 * k2sq * a * a; // (2 k2 a)^2, signed

    if (std::abs(u2) < 0.25) {
        // Band-edge-safe form: every 0/0 at k2 -> 0 folded into entire series.
        const double g = one_minus_sinc_over_u2(u2);
        const double sinc_u = 1.0 - u2 * g; // sinc(2 k2 a)
        const double x2 = k2sq * a * a;
        const double cx = cos_from_x2(x2);
        const double sx = sinc_from_x2(x2);
        const Complex num = 4.0 * a * a * kk * g + (1.0 + sinc_u);
        const Complex den = sq(sum * cx) + sq((k2sq + kk) * a * sx);
        return (ctx.mu * sum * a / ctx.hbar) * num / den;
    }
    if (k2sq > 0.0) {
        const double k2 = std::sqrt(k2sq);
        const double s = std::sin(k2 * a), c = std::cos(k2 * a);
        const Complex num = k2 * a * (k2sq + kk) + (k2sq - kk) * s * c;
        const Complex den = k2sq * sq(sum) * c * c + sq(k2sq + kk) * s * s;
        return (ctx.mu * sum / (ctx.hbar * k2)) * num / den;
    }
    const double q2 = std::sqrt(-k2sq);
    const double x = q2 * a;
    const double th = std::tanh(x);
    const double ch = std::cosh(x); // overflows only past x ~ 710
    const double sech2 = std::isinf(ch) ? 0.0 : 1.0 / (ch * ch);
    const Complex num = (q2 * q2 + kk) * th - q2 * a * (kk - q2 * q2) * sech2;
    const Complex den = q2 * q2 * sq(sum) + sq(kk - q2 * q2) * th * th;
    return (ctx.mu * sum / (ctx.hbar * q2)) * num / den;
}

double below_level_reflection_kernel(const ScatteringContext& ctx, double k_in,
                                     double q2, double q3, double a) {
    // B = (X - iY)/(X + iY) with X = k1(ch + q3 sh/q2), Y = q3 ch + q2 sh;
    // t_cr = -hbar d(-2 arctan(Y/X))/dV0, dq2/dV0 = mu/(hbar^2 q2).
    // All quantities scaled by 1/cosh(q2 a) so opaque widths stay finite.
    const double th = std::tanh(q2 * a);
    const double xs = k_in * (1.0 + q3 * th / q2);
    const double ys = q3 + q2 * th;
    const double xps = k_in * (a * th + q3 * (a * q2 - th) / (q2 * q2));
    const double yps = q3 * a * th + th + q2 * a;
    return (2.0 * ctx.mu / (ctx.hbar * q2)) * (yps * xs - xps * ys) / (xs * xs + ys * ys);
}

} // namespace detail

StationaryTimes stationary_times(const ScatteringContext& ctx,
                                 const BarrierConfig& barrier, double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (wn.regime == Regime::BelowRightLevel)
        throw TransmissionUndefined("stationary_times: no transmitted wave for E <= V1");

    const double k3 = wn.k3.real();
    StationaryTimes st;
    st.t_ct = detail::transmission_time_kernel(ctx, k1, wn.k2sq, k3, barrier.a).real();
    st.t_0 = std::abs(barrier.v1) < kSymmetricEps
                 ? 0.0
                 : detail::transmission_time_kernel(ctx, k1, wn.k2sq, -k3, barrier.a).real();
    st.t_cr = st.t_ct + st.t_0;

    const Amplitudes amp = scatter_amplitudes(k1, wn.k2sq, wn.k3, barrier.a);
    const double r_coeff = std::norm(amp.b);
    st.tau_d = st.t_ct + r_coeff * st.t_0;
    return st;
}

ReflectionTime reflection_time(const ScatteringContext& ctx,
                               const BarrierConfig& barrier, double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (wn.regime != Regime::BelowRightLevel)
        return {stationary_times(ctx, barrier, k1).t_cr, false};
    const double q2 = std::sqrt(-wn.k2sq);
    const double q3 = std::sqrt(-wn.k3sq);
    return {detail::below_level_reflection_kernel(ctx, k1, q2, q3, barrier.a), true};
}

double default_fd_step(const BarrierConfig& barrier) {
    return 1e-6 * std::max(barrier.v0, 1.0);
}

double clock_time_fd_oracle(const ScatteringContext& ctx, const BarrierConfig& barrier,
                            double k1, Channel channel, double eps) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw InvalidConfig("clock_time_fd_oracle: eps must be positive");
    if (eps > barrier.v0 / 10.0)
        throw StepTooLarge("clock_time_fd_oracle: eps exceeds V0/10");
    if (channel == Channel::Transmission && wn.regime == Regime::BelowRightLevel)
        throw TransmissionUndefined("clock_time_fd_oracle: no transmitted wave for E <= V1");

    // Perturbing V0 only shifts k2sq; k1 and k3 are untouched.
    const double dk2sq = 2.0 * ctx.mu / (ctx.hbar * ctx.hbar);
    const auto phase = [&](double v0x) {
        const Amplitudes amp =
            scatter_amplitudes(k1, wn.k2sq - dk2sq * (v0x - barrier.v0), wn.k3, barrier.a);
        return channel == Channel::Transmission
                   ? std::arg(amp.c) + wn.k3.real() * barrier.a
                   : std::arg(amp.b);
    };

    const double p0 = phase(barrier.v0);
    const auto unwrap = [&](double p) {
        return p - 2.0 * std::numbers::pi *
                       std::round((p - p0) / (2.0 * std::numbers::pi));
    };
    const double pp = unwrap(phase(barrier.v0 + eps));
    const double pm = unwrap(phase(barrier.v0 - eps));
    return -ctx.hbar * (pp - pm) / (2.0 * eps);
}

std::vector<double> resonance_widths(const ScatteringContext& ctx,
                                     const BarrierConfig& barrier, double k1,
                                     int n_max) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (wn.regime != Regime::Propagating)
        throw RegimeMismatch("resonance_widths: requires E > V0");
    if (n_max < 1)
        throw InvalidConfig("resonance_widths: n_max must be >= 1");
    const double k2 = wn.k2.real();
    std::vector<double> widths;
    widths.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n)
        widths.push_back(n * std::numbers::pi / k2);
    return widths;
}

double resonance_reflection_time(const ScatteringContext& ctx,
                                 const BarrierConfig& barrier, double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (wn.regime != Regime::Propagating)
        throw RegimeMismatch("resonance_reflection_time: requires E > V0");
    if (std::abs(barrier.v1) < kSymmetricEps)
        throw SymmetricBarrier("resonance_reflection_time: singular for V1 = 0");
    return -(2.0 * ctx.mu * k1 * barrier.a / (ctx.hbar * wn.k2sq)) *
           (barrier.v0 - barrier.v1) / barrier.v1;
}

DensityOfStatesResult density_of_states(const ScatteringContext& ctx,
                                        const BarrierConfig& barrier, double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (wn.regime != Regime::Propagating)
        throw RegimeMismatch("density_of_states: requires E > V0 for both incidence directions");
    const double k3 = wn.k3.real();
    const double a = barrier.a;
    const bool symmetric = std::abs(barrier.v1) < kSymmetricEps;

    // Left incidence.
    const Amplitudes amp_l = scatter_amplitudes(k1, wn.k2sq, k3, a);
    const double t_coeff = (k3 / k1) * std::norm(amp_l.c);
    const double t_ct = detail::transmission_time_kernel(ctx, k1, wn.k2sq, k3, a).real();
    const double t0_minus =
        symmetric ? 0.0
                  : detail::transmission_time_kernel(ctx, k1, wn.k2sq, -k3, a).real();

    // Right incidence: mirrored profile, incident wave number k3, same k2.
    const Amplitudes amp_r = scatter_amplitudes(k3, wn.k2sq, k1, a);
    const double t0_plus =
        symmetric ? 0.0
                  : detail::transmission_time_kernel(ctx, k3, wn.k2sq, -k1, a).real();

    DensityOfStatesResult dos;
    dos.r_minus = std::norm(amp_l.b);
    dos.r_plus = std::norm(amp_r.b);
    dos.t_cr_minus = t_ct + t0_minus;
    dos.t_cr_plus = t_ct + t0_plus;
    dos.nu = (2.0 * t_coeff * t_ct + dos.r_minus * dos.t_cr_minus +
              dos.r_plus * dos.t_cr_plus) /
             (2.0 * std::numbers::pi * ctx.hbar * a);
    return dos;
}

} // namespace swpclock

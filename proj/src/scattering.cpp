#include "swpclock/scattering.hpp"

#include <cmath>
#include <numbers>

namespace swpclock {

namespace {

constexpr Complex kI{0.0, 1.0};

// Series in the signed square x2 = (k2 a)^2; negative x2 selects the
// hyperbolic branch automatically. Valid (to double precision) for |x2| <= 1.
double cos_from_x2(double x2) {
    // cos(x) = sum (-1)^n x^{2n} / (2n)!
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= 9; ++n) {
        term *= -x2 / ((2.0 * n - 1.0) * (2.0 * n));
        sum += term;
    }
    return sum;
}

double sinc_from_x2(double x2) {
    // sin(x)/x = sum (-1)^n x^{2n} / (2n+1)!
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= 9; ++n) {
        term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
        sum += term;
    }
    return sum;
}

} // namespace

ScatteringContext::ScatteringContext(double hbar_, double mu_) : hbar(hbar_), mu(mu_) {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw InvalidConfig("ScatteringContext: hbar must be positive");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw InvalidConfig("ScatteringContext: mu must be positive");
}

BarrierConfig::BarrierConfig(double v0_, double v1_, double a_) : v0(v0_), v1(v1_), a(a_) {
    if (!(v0 > 0.0) || !std::isfinite(v0))
        throw InvalidConfig("BarrierConfig: v0 must be positive");
    if (!(std::abs(v1) < v0))
        throw InvalidConfig("BarrierConfig: |v1| must be smaller than v0");
    if (!(a > 0.0) || !std::isfinite(a))
        throw InvalidConfig("BarrierConfig: a must be positive");
}

const char* to_string(Regime regime) {
    switch (regime) {
    case Regime::Propagating: return "Propagating";
    case Regime::Evanescent: return "Evanescent";
    case Regime::BelowRightLevel: return "BelowRightLevel";
    }
    return "?";
}

double wrap_angle(double phi) {
    double w = std::remainder(phi, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi)
        w += 2.0 * std::numbers::pi;
    return w;
}

WaveNumbers wave_numbers(const ScatteringContext& ctx, const BarrierConfig& barrier,
                         double k1) {
    if (!(k1 > 0.0) || !std::isfinite(k1))
        throw NonPositiveWaveNumber("wave_numbers: k1 must be positive");

    WaveNumbers wn;
    wn.k1 = k1;
    wn.energy = ctx.hbar * ctx.hbar * k1 * k1 / (2.0 * ctx.mu);
    const double pref = 2.0 * ctx.mu / (ctx.hbar * ctx.hbar);
    wn.k2sq = pref * (wn.energy - barrier.v0);
    wn.k3sq = pref * (wn.energy - barrier.v1);
    wn.k2 = wn.k2sq >= 0.0 ? Complex(std::sqrt(wn.k2sq), 0.0)
                           : Complex(0.0, std::sqrt(-wn.k2sq));
    wn.k3 = wn.k3sq >= 0.0 ? Complex(std::sqrt(wn.k3sq), 0.0)
                           : Complex(0.0, std::sqrt(-wn.k3sq));
    if (wn.energy > barrier.v0)
        wn.regime = Regime::Propagating;
    else if (barrier.v1 > 0.0 && wn.energy <= barrier.v1)
        wn.regime = Regime::BelowRightLevel;
    else
        wn.regime = Regime::Evanescent;
    return wn;
}

Amplitudes scatter_amplitudes(double k_in, double k2sq, Complex k_out, double a) {
    if (!(k_in > 0.0) || !std::isfinite(k_in))
        throw NonPositiveWaveNumber("scatter_amplitudes: incident wave number must be positive");

    const Complex sum = k_in + k_out;
    const Complex dif = k_in - k_out;
    const Complex fp = k2sq + k_in * k_out; // k2^2 + k1 k3
    const Complex fm = k2sq - k_in * k_out;

    Complex den, num_b, c_scale; // C = 2 k_in * c_scale / den
    const double x2 = k2sq * a * a; // (k2 a)^2, signed

    if (std::abs(x2) < 0.0625) {
        const double cw = cos_from_x2(x2);
        const double snc = sinc_from_x2(x2); // sinc(k2 a), entire in x2
        den = sum * cw - kI * fp * a * snc;
        num_b = dif * cw + kI * fm * a * snc;
        c_scale = std::exp(-kI * k_out * a);
    } else {
        const Complex k2 = k2sq >= 0.0 ? Complex(std::sqrt(k2sq), 0.0)
                                       : Complex(0.0, std::sqrt(-k2sq));
        const Complex w = k2 * a;
        // Factor e^{|Im w|} out of cos and sin so opaque barriers cannot
        // overflow; the common factor cancels in B and folds into C's
        // decaying exponential.
        const double s = std::abs(w.imag());
        const Complex eip = std::exp(kI * w - s);
        const Complex eim = std::exp(-kI * w - s);
        const Complex cw = 0.5 * (eip + eim);
        const Complex snc = (eip - eim) / (2.0 * kI * w); // sinc(w) e^{-s}
        den = sum * cw - kI * fp * a * snc;
        num_b = dif * cw + kI * fm * a * snc;
        c_scale = std::exp(-kI * k_out * a - s);
    }

    if (!(std::abs(den) > 0.0))
        throw DegenerateMatch("scatter_amplitudes: singular matching system");

    Amplitudes amp;
    amp.c = 2.0 * k_in * c_scale / den;
    amp.b = num_b / den;
    return amp;
}

ScatteringResult scatter(const ScatteringContext& ctx, const BarrierConfig& barrier,
                         double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    const Amplitudes amp = scatter_amplitudes(k1, wn.k2sq, wn.k3, barrier.a);

    ScatteringResult res;
    res.regime = wn.regime;
    res.c = amp.c;
    res.b = amp.b;
    res.g = amp.b * std::exp(-kI * wn.k3 * barrier.a) / amp.c;
    res.phi_t = wrap_angle(std::arg(amp.c) + wn.k3.real() * barrier.a);
    res.phi_0 = wrap_angle(std::arg(amp.b) - std::arg(amp.c) - wn.k3.real() * barrier.a);
    res.phi_r = wrap_angle(res.phi_t + res.phi_0);
    res.r_coeff = std::norm(amp.b);
    res.t_coeff = wn.regime == Regime::BelowRightLevel
                      ? 0.0
                      : (wn.k3.real() / k1) * std::norm(amp.c);
    return res;
}

namespace {

// arctan(f tan(theta)) + sign(f) pi round(theta/pi): continuous in theta with
// value 0 at theta = 0.
double unwrapped_arctan_phase(double f, double theta) {
    double x = f * std::tan(theta);
    if (std::isnan(x))
        x = 0.0; // 0 * inf at a tan pole with vanishing prefactor
    const double branch = std::round(theta / std::numbers::pi);
    return std::atan(x) + (f >= 0.0 ? 1.0 : -1.0) * std::numbers::pi * branch;
}

} // namespace

double phase_t_analytic(const ScatteringContext& ctx, const BarrierConfig& barrier,
                        double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (wn.regime != Regime::Propagating)
        throw RegimeMismatch("phase_t_analytic: requires E > V0");
    const double k2 = wn.k2.real(), k3 = wn.k3.real();
    const double f = (k2 * k2 + k1 * k3) / (k2 * (k1 + k3));
    return unwrapped_arctan_phase(f, k2 * barrier.a);
}

double phase_0_analytic(const ScatteringContext& ctx, const BarrierConfig& barrier,
                        double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    if (wn.regime != Regime::Propagating)
        throw RegimeMismatch("phase_0_analytic: requires E > V0");
    const double k2 = wn.k2.real(), k3 = wn.k3.real();
    const double num = k2 * k2 - k1 * k3;
    const double dif = k1 - k3;
    if (dif == 0.0) {
        // symmetric barrier: G is purely imaginary, phase locked at +-pi/2
        const double s = num * std::sin(k2 * barrier.a) >= 0.0 ? 1.0 : -1.0;
        return s * 0.5 * std::numbers::pi;
    }
    const double f = num / (k2 * dif);
    return unwrapped_arctan_phase(f, k2 * barrier.a);
}

} // namespace swpclock

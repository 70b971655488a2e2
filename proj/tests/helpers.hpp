#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "swpclock/scattering.hpp"

namespace testutil {

using swpclock::Complex;

struct BruteResult {
    Complex b, f, g2, c;
};

// Dense 4x4 solve of the matching equations (psi, psi' continuous at z = 0 and
// z = a) with unknowns {B, F, G, C}. Region II is parametrized as
// F e^{i k2 z} + G e^{-i k2 (z - a)} so every matrix entry stays bounded in
// the opaque regime. Independent of the production closed forms; this is the
// amplitude oracle.
inline BruteResult brute_force_solve(const swpclock::ScatteringContext& ctx, double v0,
                                     double v1, double a, double k1) {
    const double energy = ctx.hbar * ctx.hbar * k1 * k1 / (2.0 * ctx.mu);
    const double pref = 2.0 * ctx.mu / (ctx.hbar * ctx.hbar);
    const auto branch = [](double ksq) {
        return ksq >= 0.0 ? Complex(std::sqrt(ksq), 0.0) : Complex(0.0, std::sqrt(-ksq));
    };
    const Complex k2 = branch(pref * (energy - v0));
    const Complex k3 = branch(pref * (energy - v1));
    const Complex i(0.0, 1.0);
    const Complex e2 = std::exp(i * k2 * a); // |e2| <= 1 on the physical branch
    const Complex e3 = std::exp(i * k3 * a);

    Eigen::Matrix4cd m;
    Eigen::Vector4cd rhs;
    m << 1.0, -1.0, -e2, 0.0,
         i * k1, i * k2, -i * k2 * e2, 0.0,
         0.0, e2, 1.0, -e3,
         0.0, i * k2 * e2, -i * k2, -i * k3 * e3;
    rhs << -1.0, i * k1, 0.0, 0.0;
    const Eigen::Vector4cd x = m.colPivHouseholderQr().solve(rhs);
    return {x(0), x(1), x(2), x(3)};
}

struct RandomConfig {
    double v0, v1, a, energy, k1;
};

// Scattering configurations for the property suites: V0 in (0.05, 1),
// |V1| < 0.95 V0 with both signs, a in (0.01, 50), E spanning the propagating
// and evanescent regimes with E > V1 whenever V1 > 0.
class ConfigSampler {
public:
    explicit ConfigSampler(unsigned seed) : rng_(seed) {}

    RandomConfig draw() {
        RandomConfig c;
        c.v0 = uniform(0.05, 1.0);
        c.v1 = uniform(-0.95, 0.95) * c.v0;
        c.a = uniform(0.01, 50.0);
        const double lo = std::max(c.v1, 0.0);
        if (rng_() % 2 == 0)
            c.energy = uniform(c.v0 * 1.0001, 3.0 * c.v0); // propagating
        else
            c.energy = lo + uniform(1e-4, 1.0) * (c.v0 - lo); // evanescent
        c.k1 = std::sqrt(2.0 * c.energy);
        return c;
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

private:
    std::mt19937_64 rng_;
};

} // namespace testutil

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "swpclock/errors.hpp"

namespace swpclock {

/// Controls for the adaptive quadrature engine and the ensemble k-window.
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double k_window = 10.0; ///< half-width in units of the momentum std. dev. 1/(2 sigma)

    void validate() const;
};

/// Vector-valued integrand: fills out[i] for each component at abscissa x.
using VectorIntegrand = std::function<void(double x, std::span<double> out)>;

/// Adaptive Gauss-Kronrod 7-15 with interval bisection. The interval is
/// pre-split at the provided breakpoints (those strictly inside (lo, hi)), so
/// the nested rule never straddles a known kink. All components are integrated
/// in one pass over shared nodes; refinement targets the segment whose scaled
/// error is worst, ties broken toward the leftmost segment, and the final sum
/// runs left to right, so results are bit-reproducible for fixed inputs.
/// Throws QuadratureFailure if tolerance is not met within max_subdivisions.
std::vector<double> integrate_adaptive(const VectorIntegrand& f, std::size_t n_components,
                                       double lo, double hi,
                                       std::span<const double> breakpoints,
                                       const QuadratureSpec& spec);

} // namespace swpclock

#include "swpclock/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace swpclock {

namespace {

// Gauss-Kronrod 7-15 abscissae/weights (positive half; QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// 7-point Gauss weights; kXgk[1], kXgk[3], kXgk[5], kXgk[7] are the Gauss nodes.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> integral;
    std::vector<double> error;
};

Segment evaluate_segment(const VectorIntegrand& f, std::size_t n, double lo, double hi,
                         std::vector<double>& buf) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    Segment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.integral.assign(n, 0.0);
    seg.error.assign(n, 0.0);
    std::vector<double> resk(n, 0.0), resg(n, 0.0);

    buf.resize(n);
    f(center, buf);
    for (std::size_t i = 0; i < n; ++i) {
        resk[i] = kWgk[7] * buf[i];
        resg[i] = kWg[3] * buf[i];
    }
    std::vector<double> fsum(n);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        f(center - dx, buf);
        fsum = buf;
        f(center + dx, buf);
        for (std::size_t i = 0; i < n; ++i)
            fsum[i] += buf[i];
        for (std::size_t i = 0; i < n; ++i)
            resk[i] += kWgk[static_cast<std::size_t>(j)] * fsum[i];
        if (j % 2 == 1) {
            const std::size_t gi = static_cast<std::size_t>(j / 2);
            for (std::size_t i = 0; i < n; ++i)
                resg[i] += kWg[gi] * fsum[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        seg.integral[i] = resk[i] * half;
        seg.error[i] = std::abs((resk[i] - resg[i]) * half);
    }
    return seg;
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw InvalidConfig("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 1)
        throw InvalidConfig("QuadratureSpec: max_subdivisions must be >= 1");
    if (!(k_window >= 6.0))
        throw InvalidConfig("QuadratureSpec: k_window must be >= 6");
}

std::vector<double> integrate_adaptive(const VectorIntegrand& f, std::size_t n,
                                       double lo, double hi,
                                       std::span<const double> breakpoints,
                                       const QuadratureSpec& spec) {
    spec.validate();
    if (!(hi > lo))
        throw InvalidConfig("integrate_adaptive: empty interval");

    std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> edges;
    edges.push_back(lo);
    for (double c : cuts)
        if (c > lo && c < hi)
            edges.push_back(c);
    edges.push_back(hi);

    std::vector<double> buf;
    std::vector<Segment> segs;
    segs.reserve(edges.size());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        segs.push_back(evaluate_segment(f, n, edges[i], edges[i + 1], buf));

    std::vector<double> totals(n), errs(n), tol(n);
    while (true) {
        std::fill(totals.begin(), totals.end(), 0.0);
        std::fill(errs.begin(), errs.end(), 0.0);
        for (const Segment& s : segs)
            for (std::size_t i = 0; i < n; ++i) {
                totals[i] += s.integral[i];
                errs[i] += s.error[i];
            }
        bool converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            tol[i] = std::max(spec.abs_tol, spec.rel_tol * std::abs(totals[i]));
            if (errs[i] > tol[i])
                converged = false;
        }
        if (converged)
            break;
        if (segs.size() >= static_cast<std::size_t>(spec.max_subdivisions))
            throw QuadratureFailure("integrate_adaptive: tolerance not met within max_subdivisions");

        // Worst segment by scaled error; ties go to the leftmost segment.
        std::size_t worst = 0;
        double worst_score = -1.0;
        for (std::size_t s = 0; s < segs.size(); ++s) {
            double score = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                score = std::max(score, segs[s].error[i] / tol[i]);
            if (score > worst_score ||
                (score == worst_score && segs[s].lo < segs[worst].lo)) {
                worst_score = score;
                worst = s;
            }
        }
        const double wlo = segs[worst].lo, whi = segs[worst].hi;
        const double mid = 0.5 * (wlo + whi);
        if (!(mid > wlo && mid < whi))
            throw QuadratureFailure("integrate_adaptive: interval too small to bisect");
        segs[worst] = evaluate_segment(f, n, wlo, mid, buf);
        segs.push_back(evaluate_segment(f, n, mid, whi, buf));
    }

    // Canonical left-to-right summation for bit-reproducible results.
    std::sort(segs.begin(), segs.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    std::vector<double> result(n, 0.0);
    for (const Segment& s : segs)
        for (std::size_t i = 0; i < n; ++i)
            result[i] += s.integral[i];
    return result;
}

} // namespace swpclock

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swpclock/quadrature.hpp"

namespace swpclock::sweep {

enum class Mode { Stationary, Ensemble };

/// Parsed and validated sweep request. `energy` and `k0` are mutually
/// exclusive; packet fields are present iff mode == Ensemble.
struct SweepSpec {
    Mode mode = Mode::Stationary;
    double v0 = 0.0;
    double v1 = 0.0;
    double mu = 1.0;
    std::optional<double> energy;
    std::optional<double> k0;
    std::optional<double> sigma;
    std::optional<double> z0;
    double a_min = 0.0;
    double a_max = 0.0;
    int a_steps = 0;
    QuadratureSpec quad;
    int threads = 0; ///< 0 = available parallelism
    std::string out_path;

    /// Incident (or packet-central) wave number implied by energy/k0.
    double wave_number() const;
};

/// Parses `stationary|ensemble --v0 ... --out PATH`. Throws UsageError with a
/// one-line message on any malformed input; throws HelpRequested when --help
/// is asked for.
SweepSpec parse_cli(const std::vector<std::string>& args);

struct HelpRequested {
    std::string text;
};

/// Runs the sweep and writes the CSV (rows ascending in a, floats %.12e,
/// preceded by a `# swp-clock v...; args: ...` comment and the column header).
/// Grid points are computed in parallel and collected in order. Returns the
/// process exit status: 0 success, 2 invalid spec, 3 quadrature failure,
/// 4 transmission undefined at a stationary grid point. No file is left behind
/// on failure.
int run_sweep(const SweepSpec& spec, std::ostream& diag);

/// Canonicalized argv echoed into the CSV comment line.
std::string canonical_args(const SweepSpec& spec);

} // namespace swpclock::sweep

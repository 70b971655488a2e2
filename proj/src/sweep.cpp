#include "swpclock/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "swpclock/clock_times.hpp"
#include "swpclock/version.hpp"
#include "swpclock/wavepacket.hpp"

namespace swpclock::sweep {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

std::string fmt_arg(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct RowError {
    std::exception_ptr err;
    double a = 0.0;
};

} // namespace

double SweepSpec::wave_number() const {
    if (k0)
        return *k0;
    return std::sqrt(2.0 * mu * *energy); // hbar = 1 (atomic units)
}

SweepSpec parse_cli(const std::vector<std::string>& args) {
    SweepSpec spec;
    CLI::App app{"SWP clock-time sweeps over barrier width"};
    app.name("swp-clock");
    app.require_subcommand(1);

    double energy = 0.0, k0 = 0.0, sigma = 0.0, z0 = 0.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--v0", spec.v0, "barrier height (a.u.)")->required();
        sub->add_option("--v1", spec.v1, "right asymptotic level (a.u.)")->required();
        sub->add_option("--mu", spec.mu, "particle mass (a.u.)")->default_val(1.0);
        auto* oe = sub->add_option("--energy", energy, "incident energy E (a.u.)");
        auto* ok = sub->add_option("--k0", k0, "incident wave number (a.u.)");
        oe->excludes(ok);
        ok->excludes(oe);
        sub->add_option("--a-min", spec.a_min, "smallest barrier width")->required();
        sub->add_option("--a-max", spec.a_max, "largest barrier width")->required();
        sub->add_option("--a-steps", spec.a_steps, "grid points (endpoints inclusive)")
            ->required();
        sub->add_option("--out", spec.out_path, "output CSV path")->required();
        sub->add_option("--rel-tol", spec.quad.rel_tol, "quadrature relative tolerance")
            ->default_val(1e-9);
        sub->add_option("--k-window", spec.quad.k_window,
                        "half-width of the k window in momentum std. devs.")
            ->default_val(10.0);
        sub->add_option("--threads", spec.threads, "worker threads (0 = all cores)")
            ->default_val(0);
        return std::pair{oe, ok};
    };

    auto* st = app.add_subcommand("stationary", "stationary times vs barrier width");
    auto [st_e, st_k] = add_common(st);

    auto* en = app.add_subcommand("ensemble", "wave-packet sub-ensemble averages");
    auto [en_e, en_k] = add_common(en);
    auto* os = en->add_option("--sigma", sigma, "packet spatial width");
    auto* oz = en->add_option("--z0", z0, "initial packet center (< 0)");
    os->required();
    oz->required();

    std::vector<const char*> argv;
    argv.push_back("swp-clock");
    for (const std::string& s : args)
        argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        for (char& c : msg)
            if (c == '\n')
                c = ' ';
        throw UsageError(msg);
    }

    const bool stationary = st->parsed();
    spec.mode = stationary ? Mode::Stationary : Mode::Ensemble;
    const auto [oe, ok] = stationary ? std::pair{st_e, st_k} : std::pair{en_e, en_k};
    if ((oe->count() == 0) == (ok->count() == 0))
        throw UsageError("exactly one of --energy or --k0 is required");
    if (oe->count())
        spec.energy = energy;
    else
        spec.k0 = k0;
    if (!stationary) {
        spec.sigma = sigma;
        spec.z0 = z0;
    }

    if (!(spec.mu > 0.0))
        throw UsageError("--mu must be positive");
    if (spec.energy && !(*spec.energy > 0.0))
        throw UsageError("--energy must be positive");
    if (spec.k0 && !(*spec.k0 > 0.0))
        throw UsageError("--k0 must be positive");
    if (!(spec.a_min > 0.0))
        throw UsageError("--a-min must be positive");
    if (!(spec.a_max > spec.a_min))
        throw UsageError("--a-max must exceed --a-min");
    if (spec.a_steps < 2)
        throw UsageError("--a-steps must be at least 2");
    if (spec.threads < 0)
        throw UsageError("--threads must be non-negative");
    try {
        BarrierConfig(spec.v0, spec.v1, spec.a_min);
        if (spec.sigma)
            GaussianPacket(spec.wave_number(), *spec.sigma, *spec.z0);
        spec.quad.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return spec;
}

std::string canonical_args(const SweepSpec& spec) {
    std::ostringstream os;
    os << (spec.mode == Mode::Stationary ? "stationary" : "ensemble");
    os << " --v0 " << fmt_arg(spec.v0) << " --v1 " << fmt_arg(spec.v1) << " --mu "
       << fmt_arg(spec.mu);
    if (spec.energy)
        os << " --energy " << fmt_arg(*spec.energy);
    else
        os << " --k0 " << fmt_arg(*spec.k0);
    if (spec.mode == Mode::Ensemble)
        os << " --sigma " << fmt_arg(*spec.sigma) << " --z0 " << fmt_arg(*spec.z0);
    os << " --a-min " << fmt_arg(spec.a_min) << " --a-max " << fmt_arg(spec.a_max)
       << " --a-steps " << spec.a_steps << " --rel-tol " << fmt_arg(spec.quad.rel_tol)
       << " --k-window " << fmt_arg(spec.quad.k_window) << " --threads " << spec.threads
       << " --out " << spec.out_path;
    return os.str();
}

namespace {

std::string stationary_row(const ScatteringContext& ctx, const BarrierConfig& barrier,
                           double k1) {
    const WaveNumbers wn = wave_numbers(ctx, barrier, k1);
    const ScatteringResult sc = scatter(ctx, barrier, k1);
    const StationaryTimes st = stationary_times(ctx, barrier, k1);
    std::ostringstream os;
    os << fmt(barrier.a) << ',' << fmt(k1) << ',' << to_string(wn.regime) << ','
       << fmt(sc.t_coeff) << ',' << fmt(sc.r_coeff) << ',' << fmt(st.t_ct) << ','
       << fmt(st.t_0) << ',' << fmt(st.t_cr) << ',' << fmt(st.tau_d) << '\n';
    return os.str();
}

std::string ensemble_row(const GaussianPacket& packet, const ScatteringContext& ctx,
                         const BarrierConfig& barrier, const QuadratureSpec& quad) {
    const EnsembleAverages avg = ensemble_averages(packet, ctx, barrier, quad);
    double stat_tct = std::numeric_limits<double>::quiet_NaN();
    double stat_tcr, stat_taud;
    const WaveNumbers wn = wave_numbers(ctx, barrier, packet.k0);
    if (wn.regime == Regime::BelowRightLevel) {
        // Transmission time undefined at the central mode; the reflection
        // reference is the continued value and tau_d coincides with it (T = 0).
        stat_tcr = reflection_time(ctx, barrier, packet.k0).t_cr;
        stat_taud = stat_tcr;
    } else {
        const StationaryTimes st = stationary_times(ctx, barrier, packet.k0);
        stat_tct = st.t_ct;
        stat_tcr = st.t_cr;
        stat_taud = st.tau_d;
    }
    std::ostringstream os;
    os << fmt(barrier.a) << ',' << fmt(avg.p_t) << ',' << fmt(avg.p_r) << ','
       << fmt(avg.avg_tct) << ',' << fmt(avg.avg_tcr) << ',' << fmt(avg.avg_taud_t) << ','
       << fmt(avg.avg_taud_r) << ',' << fmt(stat_tct) << ',' << fmt(stat_tcr) << ','
       << fmt(stat_taud) << ',' << fmt(avg.negk_weight) << '\n';
    return os.str();
}

bool validate_stationary_file(const std::string& path, std::ostream& diag) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line); // version comment
    std::getline(in, line); // column header
    int lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (fields.size() != 9) {
            diag << "swp-clock: malformed row at line " << lineno << "\n";
            return false;
        }
        const double t = std::stod(fields[3]);
        const double r = std::stod(fields[4]);
        const double t_ct = std::stod(fields[5]);
        const double t_cr = std::stod(fields[7]);
        const double tau_d = std::stod(fields[8]);
        if (std::abs(t + r - 1.0) > 1e-10 ||
            std::abs(tau_d - (t * t_ct + r * t_cr)) > 1e-10 * (1.0 + std::abs(tau_d))) {
            diag << "swp-clock: row validation failed at line " << lineno << " (a="
                 << fields[0] << ")\n";
            return false;
        }
    }
    return true;
}

} // namespace

int run_sweep(const SweepSpec& spec, std::ostream& diag) {
    ScatteringContext ctx(1.0, spec.mu);
    double k;
    std::optional<GaussianPacket> packet;
    try {
        BarrierConfig(spec.v0, spec.v1, spec.a_min); // revalidate for programmatic callers
        k = spec.wave_number();
        if (spec.mode == Mode::Ensemble)
            packet.emplace(k, *spec.sigma, *spec.z0);
    } catch (const Error& e) {
        diag << "swp-clock: " << e.what() << "\n";
        return 2;
    }

    const int n = spec.a_steps;
    std::vector<std::string> rows(static_cast<std::size_t>(n));
    std::vector<RowError> errors(static_cast<std::size_t>(n));
    const double da = (spec.a_max - spec.a_min) / (n - 1);

    unsigned hw = std::thread::hardware_concurrency();
    int nthreads = spec.threads > 0 ? spec.threads : static_cast<int>(hw ? hw : 1);
    nthreads = std::min(nthreads, n);

    std::atomic<int> next{0};
    const auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            const double a = spec.a_min + da * i;
            const std::size_t ui = static_cast<std::size_t>(i);
            try {
                const BarrierConfig barrier(spec.v0, spec.v1, a);
                rows[ui] = spec.mode == Mode::Stationary
                               ? stationary_row(ctx, barrier, k)
                               : ensemble_row(*packet, ctx, barrier, spec.quad);
            } catch (...) {
                errors[ui] = {std::current_exception(), a};
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t)
        pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
        t.join();

    for (const RowError& re : errors) {
        if (!re.err)
            continue;
        try {
            std::rethrow_exception(re.err);
        } catch (const TransmissionUndefined& e) {
            diag << "swp-clock: " << e.what() << " (a=" << fmt_arg(re.a)
                 << ", E=" << fmt_arg(k * k / (2.0 * spec.mu)) << ")\n";
            return 4;
        } catch (const QuadratureFailure& e) {
            diag << "swp-clock: " << e.what() << " (a=" << fmt_arg(re.a) << ")\n";
            return 3;
        } catch (const std::exception& e) {
            diag << "swp-clock: " << e.what() << " (a=" << fmt_arg(re.a) << ")\n";
            return 1;
        }
    }

    std::string body;
    body += "# swp-clock v";
    body += kVersion;
    body += "; args: ";
    body += canonical_args(spec);
    body += '\n';
    body += spec.mode == Mode::Stationary
                ? "a,k1,regime,T,R,t_ct,t_0,t_cr,tau_d\n"
                : "a,p_t,p_r,avg_tct,avg_tcr,avg_taud_t,avg_taud_r,"
                  "stat_tct_k0,stat_tcr_k0,stat_taud_k0,negk_weight\n";
    for (const std::string& r : rows)
        body += r;

    const std::filesystem::path out(spec.out_path);
    const std::filesystem::path tmp(spec.out_path + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            diag << "swp-clock: cannot open " << tmp.string() << " for writing\n";
            return 1;
        }
        f << body;
        if (!f.good()) {
            diag << "swp-clock: write failed for " << tmp.string() << "\n";
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            return 1;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, out, ec);
    if (ec) {
        diag << "swp-clock: cannot move output into place: " << ec.message() << "\n";
        std::filesystem::remove(tmp, ec);
        return 1;
    }

    if (spec.mode == Mode::Stationary && !validate_stationary_file(spec.out_path, diag)) {
        std::filesystem::remove(out, ec);
        return 1;
    }
    return 0;
}

} // namespace swpclock::sweep

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swpclock/clock_times.hpp"
#include "swpclock/errors.hpp"
#include "swpclock/scattering.hpp"
#include "swpclock/version.hpp"
#include "swpclock/wavepacket.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace swpclock;

PYBIND11_MODULE(_swpclock, m) {
    m.doc() = "Salecker-Wigner-Peres clock times for 1D scattering through "
              "asymmetric rectangular barriers";
    m.attr("__version__") = kVersion;

    const auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidConfig>(m, "InvalidConfig", base);
    py::register_exception<NonPositiveWaveNumber>(m, "NonPositiveWaveNumber", base);
    py::register_exception<DegenerateMatch>(m, "DegenerateMatch", base);
    py::register_exception<RegimeMismatch>(m, "RegimeMismatch", base);
    py::register_exception<TransmissionUndefined>(m, "TransmissionUndefined", base);
    py::register_exception<StepTooLarge>(m, "StepTooLarge", base);
    py::register_exception<SymmetricBarrier>(m, "SymmetricBarrier", base);
    py::register_exception<VanishingChannel>(m, "VanishingChannel", base);
    py::register_exception<QuadratureFailure>(m, "QuadratureFailure", base);

    py::enum_<Regime>(m, "Regime")
        .value("Propagating", Regime::Propagating)
        .value("Evanescent", Regime::Evanescent)
        .value("BelowRightLevel", Regime::BelowRightLevel);

    py::enum_<Channel>(m, "Channel")
        .value("Transmission", Channel::Transmission)
        .value("Reflection", Channel::Reflection);

    py::class_<ScatteringContext>(m, "ScatteringContext")
        .def(py::init<>())
        .def(py::init<double, double>(), "hbar"_a, "mu"_a)
        .def_readonly("hbar", &ScatteringContext::hbar)
        .def_readonly("mu", &ScatteringContext::mu);

    py::class_<BarrierConfig>(m, "BarrierConfig",
                              "Rectangular barrier V0 on (0,a) with right level V1")
        .def(py::init<double, double, double>(), "v0"_a, "v1"_a, "a"_a)
        .def_readonly("v0", &BarrierConfig::v0)
        .def_readonly("v1", &BarrierConfig::v1)
        .def_readonly("a", &BarrierConfig::a);

    py::class_<WaveNumbers>(m, "WaveNumbers")
        .def_readonly("k1", &WaveNumbers::k1)
        .def_readonly("k2", &WaveNumbers::k2)
        .def_readonly("k3", &WaveNumbers::k3)
        .def_readonly("k2sq", &WaveNumbers::k2sq)
        .def_readonly("k3sq", &WaveNumbers::k3sq)
        .def_readonly("energy", &WaveNumbers::energy)
        .def_readonly("regime", &WaveNumbers::regime);

    py::class_<ScatteringResult>(m, "ScatteringResult")
        .def_readonly("c", &ScatteringResult::c)
        .def_readonly("b", &ScatteringResult::b)
        .def_readonly("g", &ScatteringResult::g)
        .def_readonly("phi_t", &ScatteringResult::phi_t)
        .def_readonly("phi_0", &ScatteringResult::phi_0)
        .def_readonly("phi_r", &ScatteringResult::phi_r)
        .def_readonly("t_coeff", &ScatteringResult::t_coeff)
        .def_readonly("r_coeff", &ScatteringResult::r_coeff)
        .def_readonly("regime", &ScatteringResult::regime);

    py::class_<StationaryTimes>(m, "StationaryTimes")
        .def_readonly("t_ct", &StationaryTimes::t_ct)
        .def_readonly("t_0", &StationaryTimes::t_0)
        .def_readonly("t_cr", &StationaryTimes::t_cr)
        .def_readonly("tau_d", &StationaryTimes::tau_d);

    py::class_<ReflectionTime>(m, "ReflectionTime")
        .def_readonly("t_cr", &ReflectionTime::t_cr)
        .def_readonly("extrapolated", &ReflectionTime::extrapolated);

    py::class_<DensityOfStatesResult>(m, "DensityOfStatesResult")
        .def_readonly("nu", &DensityOfStatesResult::nu)
        .def_readonly("r_minus", &DensityOfStatesResult::r_minus)
        .def_readonly("r_plus", &DensityOfStatesResult::r_plus)
        .def_readonly("t_cr_minus", &DensityOfStatesResult::t_cr_minus)
        .def_readonly("t_cr_plus", &DensityOfStatesResult::t_cr_plus);

    py::class_<GaussianPacket>(m, "GaussianPacket",
                               "Momentum-space Gaussian, unit L2 norm in k")
        .def(py::init<double, double, double>(), "k0"_a, "sigma"_a, "z0"_a)
        .def_readonly("k0", &GaussianPacket::k0)
        .def_readonly("sigma", &GaussianPacket::sigma)
        .def_readonly("z0", &GaussianPacket::z0)
        .def("amplitude", &GaussianPacket::amplitude, "k1"_a)
        .def("density", &GaussianPacket::density, "k1"_a)
        .def("momentum_sigma", &GaussianPacket::momentum_sigma)
        .def("negative_k_weight", &GaussianPacket::negative_k_weight);

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
        .def_readwrite("max_subdivisions", &QuadratureSpec::max_subdivisions)
        .def_readwrite("k_window", &QuadratureSpec::k_window);

    py::class_<EnsembleAverages>(m, "EnsembleAverages")
        .def_readonly("avg_tct", &EnsembleAverages::avg_tct)
        .def_readonly("avg_tcr", &EnsembleAverages::avg_tcr)
        .def_readonly("avg_taud_t", &EnsembleAverages::avg_taud_t)
        .def_readonly("avg_taud_r", &EnsembleAverages::avg_taud_r)
        .def_readonly("p_t", &EnsembleAverages::p_t)
        .def_readonly("p_r", &EnsembleAverages::p_r)
        .def_readonly("negk_weight", &EnsembleAverages::negk_weight)
        .def_readonly("negk_dominant", &EnsembleAverages::negk_dominant);

    py::class_<ChannelDensity>(m, "ChannelDensity",
                               "Post-selected channel density rho(k); the "
                               "normalization integral is cached at construction")
        .def(py::init<const GaussianPacket&, const ScatteringContext&,
                      const BarrierConfig&, Channel, const QuadratureSpec&>(),
             "packet"_a, "ctx"_a, "barrier"_a, "channel"_a,
             "quad"_a = QuadratureSpec{})
        .def("__call__", &ChannelDensity::operator(), "k1"_a)
        .def("denominator", &ChannelDensity::denominator);

    m.def("wave_numbers", &wave_numbers, "ctx"_a, "barrier"_a, "k1"_a);
    m.def("scatter", &scatter, "ctx"_a, "barrier"_a, "k1"_a);
    m.def("phase_t_analytic", &phase_t_analytic, "ctx"_a, "barrier"_a, "k1"_a);
    m.def("phase_0_analytic", &phase_0_analytic, "ctx"_a, "barrier"_a, "k1"_a);
    m.def("stationary_times", &stationary_times, "ctx"_a, "barrier"_a, "k1"_a);
    m.def("reflection_time", &reflection_time, "ctx"_a, "barrier"_a, "k1"_a);
    m.def(
        "clock_time_fd_oracle",
        [](const ScatteringContext& ctx, const BarrierConfig& barrier, double k1,
           Channel channel, std::optional<double> eps) {
            return clock_time_fd_oracle(ctx, barrier, k1, channel,
                                        eps ? *eps : default_fd_step(barrier));
        },
        "ctx"_a, "barrier"_a, "k1"_a, "channel"_a, "eps"_a = py::none(),
        "Central finite difference of the channel phase with respect to V0");
    m.def("default_fd_step", &default_fd_step, "barrier"_a);
    m.def("resonance_widths", &resonance_widths, "ctx"_a, "barrier"_a, "k1"_a,
          "n_max"_a);
    m.def("resonance_reflection_time", &resonance_reflection_time, "ctx"_a,
          "barrier"_a, "k1"_a);
    m.def("density_of_states", &density_of_states, "ctx"_a, "barrier"_a, "k1"_a);
    m.def("total_probability", &total_probability, "packet"_a, "ctx"_a, "barrier"_a,
          "channel"_a, "quad"_a = QuadratureSpec{});
    m.def("ensemble_averages", &ensemble_averages, "packet"_a, "ctx"_a, "barrier"_a,
          "quad"_a = QuadratureSpec{});
}

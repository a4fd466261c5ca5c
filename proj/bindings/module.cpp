#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "barrierclock/clock.hpp"
#include "barrierclock/oracle.hpp"
#include "barrierclock/verify.hpp"
#include "barrierclock/weaktimes.hpp"

namespace py = pybind11;
using namespace barrierclock;

namespace {

py::object opt_time(const std::optional<ComplexTime>& t) {
  if (!t) return py::none();
  return py::cast(t->value);
}

py::object opt_cplx(const std::optional<cplx>& v) {
  if (!v) return py::none();
  return py::cast(*v);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Weak-measurement traversal and dwell times for 1D piecewise-constant "
      "barriers: stationary scattering, conditional times, Larmor and "
      "Gaussian-pointer clock simulations, and brute-force oracles.";

  py::class_<Units>(m, "Units")
      .def(py::init<>())
      .def(py::init([](double hbar, double mass) {
             Units u;
             u.hbar = hbar;
             u.mass = mass;
             u.validate();
             return u;
           }),
           py::arg("hbar") = 1.0, py::arg("mass") = 1.0)
      .def_readwrite("hbar", &Units::hbar)
      .def_readwrite("mass", &Units::mass);

  py::class_<Segment>(m, "Segment")
      .def(py::init([](double x_left, double x_right, double V) {
             return Segment{x_left, x_right, V};
           }),
           py::arg("x_left"), py::arg("x_right"), py::arg("V"))
      .def_readwrite("x_left", &Segment::x_left)
      .def_readwrite("x_right", &Segment::x_right)
      .def_readwrite("V", &Segment::V);

  py::class_<Region>(m, "Region")
      .def(py::init<double, double>(), py::arg("x1"), py::arg("x2"))
      .def_readonly("x1", &Region::x1)
      .def_readonly("x2", &Region::x2)
      .def("length", &Region::length);

  py::class_<PotentialProfile>(m, "PotentialProfile")
      .def(py::init<>())
      .def(py::init<std::vector<Segment>>(), py::arg("segments"))
      .def_static("rectangular", &PotentialProfile::rectangular, py::arg("V0"),
                  py::arg("d"))
      .def_static("from_json", &PotentialProfile::from_json, py::arg("text"))
      .def("to_json", &PotentialProfile::to_json)
      .def("segments", &PotentialProfile::segments)
      .def("support_left", &PotentialProfile::support_left)
      .def("support_right", &PotentialProfile::support_right)
      .def("support_width", &PotentialProfile::support_width)
      .def("potential_at", &PotentialProfile::potential_at, py::arg("x"))
      .def("is_symmetric", &PotentialProfile::is_symmetric, py::arg("tol") = 1e-12)
      .def("mirrored", &PotentialProfile::mirrored)
      .def("with_region_offset", &PotentialProfile::with_region_offset,
           py::arg("region"), py::arg("delta_v"));

  py::enum_<Wave>(m, "Wave")
      .value("incident", Wave::incident)
      .value("transmitted_final", Wave::transmitted_final)
      .value("reflected_final", Wave::reflected_final);

  py::enum_<TimeChannel>(m, "TimeChannel")
      .value("T", TimeChannel::transmitted)
      .value("R", TimeChannel::reflected)
      .value("dwell", TimeChannel::dwell);

  py::enum_<Side>(m, "Side").value("left", Side::left).value("right", Side::right);

  py::class_<ScatteringSolution>(m, "ScatteringSolution")
      .def_property_readonly("energy", &ScatteringSolution::energy)
      .def_property_readonly("wavenumber", &ScatteringSolution::wavenumber)
      .def_property_readonly("t", &ScatteringSolution::t)
      .def_property_readonly("r", &ScatteringSolution::r)
      .def_property_readonly("t_rev", &ScatteringSolution::t_rev)
      .def_property_readonly("r_rev", &ScatteringSolution::r_rev)
      .def_property_readonly("support_left", &ScatteringSolution::support_left)
      .def_property_readonly("support_right", &ScatteringSolution::support_right)
      .def_property_readonly("inverse_flux", &ScatteringSolution::inverse_flux)
      .def("psi", &ScatteringSolution::psi, py::arg("wave"), py::arg("x"))
      .def("psi_and_deriv", &ScatteringSolution::psi_and_deriv, py::arg("wave"),
           py::arg("x"))
      .def("segment_count", &ScatteringSolution::segment_count)
      .def("coef_plus", &ScatteringSolution::coef_plus, py::arg("i"))
      .def("coef_minus", &ScatteringSolution::coef_minus, py::arg("i"));

  m.def("solve_stationary", &solve_stationary, py::arg("profile"), py::arg("E"),
        py::arg("units") = Units{});

  py::class_<RectangularCoefficients>(m, "RectangularCoefficients")
      .def_readonly("B", &RectangularCoefficients::B)
      .def_readonly("C", &RectangularCoefficients::C)
      .def_readonly("t", &RectangularCoefficients::t)
      .def_readonly("r", &RectangularCoefficients::r)
      .def_readonly("kappa", &RectangularCoefficients::kappa)
      .def_readonly("threshold_window", &RectangularCoefficients::threshold_window);

  m.def("rectangular_coefficients", &rectangular_coefficients, py::arg("V0"),
        py::arg("d"), py::arg("E"), py::arg("units") = Units{});

  py::class_<PhaseRelation>(m, "PhaseRelation")
      .def_readonly("phase_difference", &PhaseRelation::phase_difference)
      .def_readonly("symmetric", &PhaseRelation::symmetric);
  m.def("phase_relation_check", &phase_relation_check, py::arg("solution"));
  m.def("wavefunction_at", &wavefunction_at, py::arg("solution"), py::arg("channel"),
        py::arg("x"));

  py::class_<ChannelTimes>(m, "ChannelTimes")
      .def_property_readonly("tau_T",
                             [](const ChannelTimes& c) { return opt_time(c.tau_T); })
      .def_property_readonly("tau_R",
                             [](const ChannelTimes& c) { return opt_time(c.tau_R); })
      .def_readonly("tau_d", &ChannelTimes::tau_d)
      .def_readonly("w_T", &ChannelTimes::w_T)
      .def_readonly("w_R", &ChannelTimes::w_R)
      .def_readonly("identity_residual", &ChannelTimes::identity_residual);

  m.def("conditional_times_rectangular", &conditional_times_rectangular, py::arg("V0"),
        py::arg("d"), py::arg("E"), py::arg("units") = Units{});
  m.def("channel_times", &channel_times, py::arg("solution"), py::arg("region"));
  m.def(
      "weak_value_time",
      [](const ScatteringSolution& sol, const Region& region, TimeChannel channel) {
        return weak_value_time(sol, region, channel).value;
      },
      py::arg("solution"), py::arg("region"), py::arg("channel"));

  py::class_<DwellDensitySample>(m, "DwellDensitySample")
      .def_readonly("x", &DwellDensitySample::x)
      .def_property_readonly(
          "density_T", [](const DwellDensitySample& s) { return opt_cplx(s.density_T); })
      .def_property_readonly(
          "density_R", [](const DwellDensitySample& s) { return opt_cplx(s.density_R); })
      .def_readonly("density_d", &DwellDensitySample::density_d);

  m.def("dwell_density", &dwell_density, py::arg("solution"), py::arg("channel"),
        py::arg("x"));
  m.def("oscillation_budget", &oscillation_budget, py::arg("solution"),
        py::arg("channel"), py::arg("side"), py::arg("n_periods"));
  m.def(
      "complex_time_via_derivative",
      [](const PotentialProfile& p, const Region& r, double E, const Units& u) {
        return complex_time_via_derivative(p, r, E, u).value;
      },
      py::arg("profile"), py::arg("region"), py::arg("E"), py::arg("units") = Units{});
  m.def("group_delay", &group_delay, py::arg("profile"), py::arg("E"),
        py::arg("units") = Units{});

  py::class_<OpaqueAsymptotics>(m, "OpaqueAsymptotics")
      .def_readonly("re_limit", &OpaqueAsymptotics::re_limit)
      .def_readonly("im_limit", &OpaqueAsymptotics::im_limit);
  m.def("opaque_asymptotics", &opaque_asymptotics, py::arg("V0"), py::arg("d"),
        py::arg("E"), py::arg("units") = Units{});

  py::class_<SpinState>(m, "SpinState")
      .def_readonly("S", &SpinState::S)
      .def_readonly("amplitudes", &SpinState::amplitudes)
      .def("delta_sz", &SpinState::delta_sz);
  m.def("coherent_spin_state", &coherent_spin_state, py::arg("S"));
  m.def("squeezed_spin_state", &squeezed_spin_state, py::arg("S"), py::arg("width"));

  py::class_<SpinClockResult>(m, "SpinClockResult")
      .def_readonly("omega_L", &SpinClockResult::omega_L)
      .def_readonly("in_plane_angle", &SpinClockResult::in_plane_angle)
      .def_readonly("out_of_plane", &SpinClockResult::out_of_plane)
      .def_readonly("tau_y", &SpinClockResult::tau_y)
      .def_readonly("tau_z", &SpinClockResult::tau_z)
      .def_readonly("norm", &SpinClockResult::norm)
      .def_readonly("channel", &SpinClockResult::channel);

  m.def("larmor_spin_half", &larmor_spin_half, py::arg("profile"), py::arg("region"),
        py::arg("E"), py::arg("omega_L"), py::arg("channel"),
        py::arg("units") = Units{});
  m.def("larmor_spin_S", &larmor_spin_S, py::arg("profile"), py::arg("region"),
        py::arg("E"), py::arg("omega_L"), py::arg("state"), py::arg("channel"),
        py::arg("units") = Units{});

  py::class_<PointerOutcome>(m, "PointerOutcome")
      .def_readonly("sigma", &PointerOutcome::sigma)
      .def_readonly("g0", &PointerOutcome::g0)
      .def_readonly("dQ", &PointerOutcome::dQ)
      .def_readonly("dP", &PointerOutcome::dP)
      .def_readonly("norm", &PointerOutcome::norm)
      .def_readonly("channel", &PointerOutcome::channel);

  m.def("pointer_measurement", &pointer_measurement, py::arg("profile"),
        py::arg("region"), py::arg("E"), py::arg("g0"), py::arg("sigma"),
        py::arg("channel"), py::arg("units") = Units{});
  m.def("far_side_field_effect", &far_side_field_effect, py::arg("profile"),
        py::arg("barrier_region"), py::arg("probe_region_beyond"), py::arg("E"),
        py::arg("omega_L"), py::arg("units") = Units{});

  // brute-force oracles
  auto oracle_mod = m.def_submodule("oracle", "independent brute-force validators");
  oracle_mod.def("integrate_schrodinger", &oracle::integrate_schrodinger,
                 py::arg("profile"), py::arg("E"), py::arg("units") = Units{},
                 py::arg("grid_step") = 0.0);
  oracle_mod.def(
      "quadrature_weak_value",
      [](const ScatteringSolution& sol, const Region& region, TimeChannel channel,
         double tolerance) {
        return oracle::quadrature_weak_value(sol, region, channel, tolerance).value;
      },
      py::arg("solution"), py::arg("region"), py::arg("channel"), py::arg("tolerance"));
  oracle_mod.def(
      "richardson_derivative",
      [](const std::function<double(double)>& f, double x0, double base_step,
         double max_error) {
        const auto est = oracle::richardson_derivative(f, x0, base_step, max_error);
        return py::make_tuple(est.value, est.error);
      },
      py::arg("f"), py::arg("x0"), py::arg("base_step"), py::arg("max_error") = 0.0);

  m.def(
      "run_verify",
      [](std::uint64_t seed, int cases, double tolerance_scale) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.cases = cases;
        opt.tolerance_scale = tolerance_scale;
        const auto summary = run_verify(opt);
        py::list reports;
        for (const auto& r : summary.reports) {
          py::dict d;
          d["quantity"] = r.quantity;
          d["primary"] = r.primary_value;
          d["oracle"] = r.oracle_value;
          d["abs_error"] = r.abs_error;
          d["rel_error"] = r.rel_error;
          d["tolerance"] = r.tolerance;
          d["pass"] = r.pass;
          reports.append(d);
        }
        return py::make_tuple(summary.total, summary.failed, reports);
      },
      py::arg("seed") = 1, py::arg("cases") = 200, py::arg("tolerance_scale") = 1.0,
      "Run the randomized invariant suite; returns (total, failed, reports).");

  m.attr("__version__") = "0.1.0";
}

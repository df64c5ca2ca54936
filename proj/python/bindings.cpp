#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "jcwave/analytic.hpp"
#include "jcwave/errors.hpp"
#include "jcwave/observables.hpp"
#include "jcwave/propagator.hpp"
#include "jcwave/scenario.hpp"

namespace py = pybind11;
using namespace jcwave;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict series_dict(const TimeSeries& ts) {
  py::dict d;
  d["t"] = to_array(ts.times());
  d["norm"] = to_array(ts.column(&Record::norm));
  d["energy"] = to_array(ts.column(&Record::energy));
  d["inversion"] = to_array(ts.column(&Record::inversion));
  d["var_q"] = to_array(ts.column(&Record::var_q));
  d["var_p"] = to_array(ts.column(&Record::var_p));
  d["mean_q"] = to_array(ts.column(&Record::mean_q));
  d["mean_p"] = to_array(ts.column(&Record::mean_p));
  d["entropy"] = to_array(ts.column(&Record::entropy));
  d["autocorrelation"] = to_array(ts.autocorrelation());
  d["excitation"] = to_array(ts.column(&Record::excitation));
  if (ts.has_fidelity()) {
    std::vector<double> f;
    for (const auto& r : ts) f.push_back(*r.fidelity);
    d["fidelity"] = to_array(f);
  }
  return d;
}

FieldStateSpec field_spec(std::optional<unsigned> n, std::optional<std::complex<double>> nu) {
  if (n && nu) throw ConfigError("give either a Fock index n or a coherent amplitude nu");
  if (nu) return FieldStateSpec::coherent(*nu);
  return FieldStateSpec::fock(n.value_or(0));
}

}  // namespace

PYBIND11_MODULE(_jcwave, m) {
  m.doc() = "Wave-packet simulations of the Rabi and Jaynes-Cummings models";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<ResolutionError>(m, "ResolutionError", error.ptr());
  py::register_exception<NumericalBlowup>(m, "NumericalBlowup", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("name", &Scenario::name)
      .def_property_readonly("omega", [](const Scenario& s) { return s.params.omega_atom; })
      .def_property_readonly("g0", [](const Scenario& s) { return s.params.g0; })
      .def_readwrite("n_points", &Scenario::n_points)
      .def_readwrite("q_max", &Scenario::q_max)
      .def_property_readonly("dt", [](const Scenario& s) { return s.propagator.dt; })
      .def_property_readonly("t_final", [](const Scenario& s) { return s.propagator.t_final; })
      .def_property_readonly("runs",
                             [](const Scenario& s) {
                               std::vector<std::string> out;
                               for (RunKind k : s.runs) out.emplace_back(to_string(k));
                               return out;
                             })
      .def("has_sweep", &Scenario::has_sweep)
      .def("__repr__", [](const Scenario& s) { return "<Scenario '" + s.name + "'>"; });

  m.def("parse_scenario", &parse_scenario, py::arg("text"),
        "Parse an INI scenario; raises ParseError or ConfigError.");
  m.def("quick_variant", &quick_variant, py::arg("scenario"));

  m.def(
      "simulate",
      [](const Scenario& sc, const std::string& kind) {
        SimulationResult r;
        {
          py::gil_scoped_release release;
          r = simulate(sc, parse_run_kind(kind));
        }
        py::dict d = series_dict(r.series);
        d["failure"] = r.failure ? py::cast(*r.failure) : py::none();
        return d;
      },
      py::arg("scenario"), py::arg("kind") = "jc",
      "Run one propagation and return its recorded observables as numpy arrays.");

  m.def(
      "run_sweep",
      [](const Scenario& sc, unsigned workers) {
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(sc, workers);
        }
        std::vector<double> g0, omega, t, f;
        for (const auto& r : rows) {
          g0.push_back(r.g0);
          omega.push_back(r.omega);
          t.push_back(r.t);
          f.push_back(r.fidelity);
        }
        py::dict d;
        d["g0"] = to_array(g0);
        d["omega"] = to_array(omega);
        d["t"] = to_array(t);
        d["fidelity"] = to_array(f);
        return d;
      },
      py::arg("scenario"), py::arg("workers") = 1);

  m.def(
      "run_to_directory",
      [](const Scenario& sc, const std::string& text, const std::filesystem::path& dir, unsigned workers,
         bool dt_check) {
        RunReport r;
        {
          py::gil_scoped_release release;
          r = run_to_directory(sc, text, dir, RunOptions{workers, dt_check, sc.has_sweep()});
        }
        py::dict d;
        d["files"] = r.files;
        d["hash"] = r.hash;
        d["failure"] = r.failure ? py::cast(*r.failure) : py::none();
        return d;
      },
      py::arg("scenario"), py::arg("config_text"), py::arg("directory"), py::arg("workers") = 1,
      py::arg("dt_check") = false);

  m.def("preset_names", &preset_names);
  m.def(
      "preset",
      [](const std::string& name) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& p : preset(name)) out.emplace_back(p.subdir, p.config);
        return out;
      },
      py::arg("name"), "List of (subdir, config text) panels of a built-in preset.");

  m.def(
      "jc_exact",
      [](double omega, double g0, const std::vector<double>& times, std::optional<unsigned> n,
         std::optional<std::complex<double>> nu) {
        const ModelParams params{Model::jc, omega, g0};
        params.validate();
        return series_dict(jc_exact_evolution(field_spec(n, nu), AtomStateSpec::excited(), params, times));
      },
      py::arg("omega"), py::arg("g0"), py::arg("times"), py::arg("n") = py::none(), py::arg("nu") = py::none(),
      "Number-basis JC solution for an excited atom.");

  m.def(
      "revival_estimates",
      [](double omega, double g0, std::optional<unsigned> n, std::optional<std::complex<double>> nu,
         double fit_half_width) {
        const RevivalEstimate e = revival_estimates({Model::rabi, omega, g0}, field_spec(n, nu), fit_half_width);
        py::dict d;
        d["adiabatic"] = e.t_r_adiabatic;
        d["standard"] = e.t_r_standard;
        d["curvature"] = e.t_r_numeric_curvature;
        d["double_well"] = e.double_well;
        d["adiabatic_valid"] = e.adiabatic_valid;
        return d;
      },
      py::arg("omega"), py::arg("g0"), py::arg("n") = py::none(), py::arg("nu") = py::none(),
      py::arg("fit_half_width") = 10.0);

  m.def(
      "revival_from_autocorrelation",
      [](const std::vector<double>& t, const std::vector<double>& abs_a, double threshold) {
        return revival_from_autocorrelation(t, abs_a, threshold);
      },
      py::arg("t"), py::arg("abs_a"), py::arg("threshold") = 0.02);

  m.def(
      "lz_probability", [](double v, double omega, double g0) { return lz_probability(v, {Model::lz, omega, g0}); },
      py::arg("v"), py::arg("omega"), py::arg("g0"));

  m.def(
      "lz_scattering",
      [](double omega, double g0, double v) {
        LzScatteringConfig c;
        c.omega = omega;
        c.g0 = g0;
        c.v = v;
        LzScatteringResult r;
        {
          py::gil_scoped_release release;
          r = lz_scattering(c);
        }
        return std::make_pair(r.transfer, r.p_lz);
      },
      py::arg("omega"), py::arg("g0"), py::arg("v"), "Wave-packet transfer and the LZ formula value.");

  m.def(
      "adiabatic_curves",
      [](double omega, double g0, const std::vector<double>& q) {
        const AdiabaticCurves c = adiabatic_curves({Model::rabi, omega, g0}, q);
        py::dict d;
        d["v_plus"] = to_array(c.v_plus);
        d["v_minus"] = to_array(c.v_minus);
        d["dtheta"] = to_array(c.dtheta);
        d["d2theta"] = to_array(c.d2theta);
        return d;
      },
      py::arg("omega"), py::arg("g0"), py::arg("q"));
}

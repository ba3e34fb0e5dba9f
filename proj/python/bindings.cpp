#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lvfb/analysis.hpp"
#include "lvfb/cli.hpp"
#include "lvfb/eigen.hpp"
#include "lvfb/fbsolver.hpp"
#include "lvfb/model.hpp"
#include "lvfb/scenario.hpp"
#include "lvfb/semiwave.hpp"

namespace py = pybind11;
using namespace lvfb;

namespace {

py::dict trajectory_columns(const Trajectory& traj) {
  std::vector<double> t, h, hp, su, sv, mass;
  for (const auto& r : traj.records) {
    t.push_back(r.t);
    h.push_back(r.h);
    hp.push_back(r.h_prime);
    su.push_back(r.sup_u);
    sv.push_back(r.sup_v);
    mass.push_back(r.mass_u);
  }
  py::dict d;
  d["t"] = t;
  d["h"] = h;
  d["h_prime"] = hp;
  d["sup_u"] = su;
  d["sup_v"] = sv;
  d["mass_u"] = mass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Competition model with a free boundary: solver, semi-waves, thresholds";

  py::register_exception<Error>(m, "LvfbError", PyExc_RuntimeError);

  py::enum_<Regime>(m, "Regime")
      .value("SuperiorU", Regime::SuperiorU)
      .value("InferiorU", Regime::InferiorU)
      .value("WeakCompetition", Regime::WeakCompetition)
      .value("StrongCompetition", Regime::StrongCompetition);

  py::enum_<Verdict>(m, "Verdict")
      .value("Spreading", Verdict::Spreading)
      .value("Vanishing", Verdict::Vanishing)
      .value("Undetermined", Verdict::Undetermined);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("d1", &ModelParams::d1)
      .def_readwrite("d2", &ModelParams::d2)
      .def_readwrite("a1", &ModelParams::a1)
      .def_readwrite("a2", &ModelParams::a2)
      .def_readwrite("b1", &ModelParams::b1)
      .def_readwrite("b2", &ModelParams::b2)
      .def_readwrite("c1", &ModelParams::c1)
      .def_readwrite("c2", &ModelParams::c2)
      .def_readwrite("mu", &ModelParams::mu)
      .def_readwrite("h0", &ModelParams::h0)
      .def_readwrite("dim", &ModelParams::dim)
      .def("validate", &ModelParams::validate)
      .def("__repr__", [](const ModelParams& p) {
        std::ostringstream os;
        os << "ModelParams(a1=" << p.a1 << ", a2=" << p.a2 << ", b1=" << p.b1 << ", b2=" << p.b2
           << ", c1=" << p.c1 << ", c2=" << p.c2 << ", d1=" << p.d1 << ", d2=" << p.d2
           << ", mu=" << p.mu << ", h0=" << p.h0 << ", dim=" << p.dim << ")";
        return os.str();
      });

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("m_u", &GridSpec::m_u)
      .def_readwrite("m_v", &GridSpec::m_v)
      .def_readwrite("L_v", &GridSpec::L_v)
      .def_readwrite("dt", &GridSpec::dt)
      .def_readwrite("t_end", &GridSpec::t_end)
      .def_readwrite("output_stride", &GridSpec::output_stride);

  m.def("classify_regime", &classify_regime);
  m.def("logistic_ode", &logistic_ode, py::arg("a"), py::arg("b"), py::arg("u0"), py::arg("t"));
  m.def("bessel_first_zero", &bessel_first_zero, py::arg("nu"));
  m.def("critical_radius", &critical_radius, py::arg("d"), py::arg("a"), py::arg("dim"));
  m.def("vanishing_bound", &vanishing_bound);
  m.def("semiwave_slope", &semiwave_slope, py::arg("a"), py::arg("b"), py::arg("d"),
        py::arg("k"));
  m.def("find_k0", &find_k0, py::arg("mu"), py::arg("a"), py::arg("b"), py::arg("d"));

  m.def(
      "builtin", [](const std::string& name) { return builtin_scenario(name).params; },
      py::arg("name"), "model parameters of a built-in scenario");
  m.def(
      "builtin_grid", [](const std::string& name) { return builtin_scenario(name).grid; },
      py::arg("name"));

  m.def(
      "simulate",
      [](const ModelParams& p, const GridSpec& g, double amplitude, double v_level) {
        const InitialData init = parabolic_initial_data(p, amplitude, v_level);
        SimulateOptions opts;
        opts.tolerate_domain_exhaustion = true;
        SimulationResult run;
        {
          py::gil_scoped_release release;
          run = simulate(p, init, g, opts);
        }
        py::dict d = trajectory_columns(run.trajectory);
        d["audit_violations"] = run.audit.violations();
        d["u"] = run.final_state.u;
        d["v"] = run.final_state.v;
        d["h_final"] = run.final_state.h;
        return d;
      },
      py::arg("params"), py::arg("grid"), py::arg("amplitude"), py::arg("v_level"),
      "Runs the front-fixing solver; returns trajectory columns and final fields.");

  m.def(
      "classify",
      [](const ModelParams& p, const GridSpec& g, double amplitude, double v_level) {
        const InitialData init = parabolic_initial_data(p, amplitude, v_level);
        SimulateOptions opts;
        opts.tolerate_domain_exhaustion = true;
        py::gil_scoped_release release;
        const SimulationResult run = simulate(p, init, g, opts);
        return classify(run.trajectory, p).verdict;
      },
      py::arg("params"), py::arg("grid"), py::arg("amplitude"), py::arg("v_level"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI command line; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = version_string();
}

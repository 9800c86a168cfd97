#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "charwave/control.hpp"
#include "charwave/errors.hpp"
#include "charwave/oracle.hpp"
#include "charwave/scenario.hpp"

namespace py = pybind11;
using namespace charwave;

namespace {

const char* configuration_name(ControlConfiguration c) {
  switch (c) {
    case ControlConfiguration::coincident: return "coincident";
    case ControlConfiguration::secondary_earlier: return "secondary_earlier";
    case ControlConfiguration::secondary_later: return "secondary_later";
  }
  return "unknown";
}

py::dict check_info(const Scenario& sc) {
  py::dict d;
  d["horizon"] = sc.horizon();
  d["derivative_bound"] = sc.maps->curves().derivative_bound();
  try {
    d["T_star"] = sc.maps->min_control_time();
    d["T_star_star"] = sc.maps->secondary_time();
    d["configuration"] = configuration_name(configuration(*sc.maps));
  } catch (const HorizonExceeded&) {
    d["T_star"] = py::none();
    d["T_star_star"] = py::none();
    d["configuration"] = py::none();
  }
  return d;
}

py::dict field(const Scenario& sc, double t, int n) {
  const FieldSample s = sc.system().reconstruct(t, n);
  py::dict d;
  d["t"] = s.t;
  d["x"] = s.x;
  d["p"] = s.p;
  d["q"] = s.q;
  d["y"] = s.y;
  d["y_t"] = s.y_t;
  return d;
}

std::vector<double> control_samples(const Scenario& sc, const std::vector<double>& times) {
  const auto signal = sc.control();
  if (!signal) throw PreconditionError("scenario has no control block");
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(signal->v(t));
  return out;
}

py::dict stability(const Scenario& sc, int n_max, const std::vector<std::string>& rates) {
  std::vector<RateCandidate> candidates;
  for (const auto& r : rates) candidates.push_back({r, parse_func(r)});
  const DecayReport rep = psi_table(*sc.maps, sc.feedback, n_max);
  const GrowthBound gb = growth_bound(rep);
  const DecayVerdict v = classify_decay(rep, candidates);
  py::dict d;
  d["classification"] = v.label();
  d["omega"] = gb.status == GrowthBound::Status::finite ? py::cast(gb.omega) : py::none();
  d["tau"] = rep.tau;
  d["ln_psi"] = rep.ln_psi;
  d["rate_id"] = v.rate_id;
  d["rate_constant"] = v.rate_constant;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Closed-form wave solutions on time-dependent intervals";

  // Translators are tried last-registered first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<FeedbackSingularity>(m, "FeedbackSingularity", PyExc_ValueError);
  py::register_exception<HorizonExceeded>(m, "HorizonExceeded", PyExc_RuntimeError);

  py::class_<Scenario>(m, "Scenario")
      .def_static("from_json", &parse_scenario_text, py::arg("text"))
      .def_static("load", &parse_scenario, py::arg("path"))
      .def_property_readonly("horizon", &Scenario::horizon)
      .def("check", &check_info)
      .def("eval_pq",
           [](const Scenario& sc, double t, double x) {
             const PQ pq = sc.system().eval_pq(t, x);
             return py::make_tuple(pq.p, pq.q);
           },
           py::arg("t"), py::arg("x"))
      .def("trace",
           [](const Scenario& sc, double t, double x, const std::string& inv) {
             if (inv != "p" && inv != "q") throw py::value_error("invariant must be 'p' or 'q'");
             const RayTrace r = trace(sc.system(), t, x, inv == "p" ? Invariant::p : Invariant::q);
             return py::make_tuple(r.value, r.events.size());
           },
           py::arg("t"), py::arg("x"), py::arg("invariant") = "p")
      .def("energy", [](const Scenario& sc, double t, int n) { return sc.system().energy(t, n); },
           py::arg("t"), py::arg("n_grid") = 512)
      .def("field", &field, py::arg("t"), py::arg("n_grid") = 512)
      .def("control", &control_samples, py::arg("times"))
      .def("stability", &stability, py::arg("n_max") = 400,
           py::arg("rates") = std::vector<std::string>{});
}

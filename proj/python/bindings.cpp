// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "relab/aging.hpp"
#include "relab/electrodynamics.hpp"
#include "relab/epr.hpp"
#include "relab/errors.hpp"
#include "relab/io.hpp"
#include "relab/lightcone.hpp"
#include "relab/minkowski.hpp"
#include "relab/worldline.hpp"

namespace py = pybind11;
using namespace relab;

namespace {

py::list matrix_to_list(const Matrix4& m) {
  py::list rows;
  for (const auto& r : m) rows.append(py::make_tuple(r[0], r[1], r[2], r[3]));
  return rows;
}

py::dict twin_to_dict(const aging::TwinReport& r) {
  py::dict d;
  d["construction"] = std::string(aging::to_string(r.construction));
  d["turnaround"] = py::make_tuple(r.turnaround.x, r.turnaround.t);
  d["tau_traveler"] = r.tau_traveler_one_way;
  d["tau_home"] = r.tau_home_one_way;
  d["round_trip_ratio"] = r.round_trip_ratio;
  return d;
}

Branch parse_branch(const std::string& s) {
  if (s == "retarded") return Branch::retarded;
  if (s == "advanced") return Branch::advanced;
  throw DomainError("branch must be 'retarded' or 'advanced'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "relab: EPR correlations, twin charts and retarded point-charge dynamics";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<OutOfRangeError>(m, "OutOfRangeError", PyExc_IndexError);
  py::register_exception<InsufficientHistoryError>(m, "InsufficientHistoryError", PyExc_RuntimeError);
  py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<FourVector>(m, "FourVector")
      .def(py::init([](double x, double y, double z, double t) { return FourVector::event(x, y, z, t); }),
           py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("z") = 0.0, py::arg("t") = 0.0)
      .def_readwrite("x", &FourVector::x)
      .def_readwrite("y", &FourVector::y)
      .def_readwrite("z", &FourVector::z)
      .def_readwrite("t", &FourVector::t)
      .def("__repr__", [](const FourVector& v) {
        std::ostringstream os;
        os << "FourVector(x=" << v.x << ", y=" << v.y << ", z=" << v.z << ", t=" << v.t << ")";
        return os.str();
      });

  m.def("minkowski_dot", &minkowski_dot, py::arg("u"), py::arg("v"));
  m.def("boost", [](double beta) { return matrix_to_list(boost(beta).matrix()); }, py::arg("beta"),
        "4x4 boost matrix along x acting on (t, x, y, z)");

  py::class_<WorldlineSample>(m, "WorldlineSample")
      .def_readonly("tau", &WorldlineSample::tau)
      .def_readonly("position", &WorldlineSample::position)
      .def_readonly("velocity", &WorldlineSample::velocity)
      .def_readonly("acceleration", &WorldlineSample::acceleration);

  py::class_<Worldline>(m, "Worldline")
      .def_static("static", &static_worldline, py::arg("position"), py::arg("tau_begin"),
                  py::arg("tau_end"), py::arg("spacing"))
      .def_static("uniform", &uniform_worldline, py::arg("at_tau_zero"), py::arg("bx"), py::arg("by"),
                  py::arg("bz"), py::arg("tau_begin"), py::arg("tau_end"), py::arg("spacing"))
      .def_static("hyperbolic",
                  [](double a, double t0, double t1, double h) { return hyperbolic_worldline(a, t0, t1, h); },
                  py::arg("accel"), py::arg("tau_begin"), py::arg("tau_end"), py::arg("spacing"))
      .def_static("circular", &circular_worldline, py::arg("radius"), py::arg("omega"),
                  py::arg("tau_begin"), py::arg("tau_end"), py::arg("spacing"))
      .def_static("from_json", &io::worldline_from_json)
      .def("to_json", &io::worldline_to_json)
      .def("interpolate", &Worldline::interpolate, py::arg("tau"))
      .def("proper_time_along", &proper_time_along, py::arg("tau_a"), py::arg("tau_b"))
      .def_property_readonly("tau_min", &Worldline::tau_min)
      .def_property_readonly("tau_max", &Worldline::tau_max)
      .def("__len__", &Worldline::size);

  m.def(
      "lightcone_intersection",
      [](const Worldline& w, const FourVector& event, const std::string& branch) {
        const auto hit = lightcone_intersection(w, event, parse_branch(branch));
        return py::make_tuple(hit.tau, hit.residual);
      },
      py::arg("worldline"), py::arg("event"), py::arg("branch") = "retarded",
      "returns (tau, residual)");

  // EPR
  m.def(
      "emit_pair",
      [](int n) {
        const auto e = epr::emit_pair(n);
        return py::make_tuple(py::make_tuple(e.s1[0], e.s1[1]), py::make_tuple(e.s2[0], e.s2[1]));
      },
      py::arg("n"));
  m.def(
      "polarizer_matrix",
      [](double theta) {
        const auto p = epr::polarizer_matrix(theta);
        return py::make_tuple(py::make_tuple(p.m[0][0], p.m[0][1]), py::make_tuple(p.m[1][0], p.m[1][1]));
      },
      py::arg("theta"));
  m.def("coincidence_analytic", &epr::coincidence_analytic, py::arg("theta1"), py::arg("theta2"));
  m.def(
      "estimate_coincidence",
      [](double t1, double t2, const std::string& estimator, const std::string& mode,
         std::uint64_t trials, std::uint64_t seed, unsigned chunks) {
        epr::EstimateOptions opt;
        opt.estimator = epr::parse_estimator(estimator);
        opt.mode = epr::parse_mode(mode);
        opt.trials = trials;
        opt.seed = seed;
        opt.chunks = chunks;
        const auto e = epr::estimate_coincidence(t1, t2, opt);
        py::dict d;
        d["value"] = e.value;
        d["standard_error"] = e.standard_error;
        d["trials"] = e.trials;
        d["exact"] = e.exact;
        d["estimator"] = std::string(epr::to_string(e.estimator));
        return d;
      },
      py::arg("theta1"), py::arg("theta2"), py::arg("estimator") = "amplitude",
      py::arg("mode") = "exact", py::arg("trials") = 0, py::arg("seed") = 0, py::arg("chunks") = 1);
  m.def("correlation_function", &epr::correlation_function, py::arg("a"), py::arg("b"));
  m.def("chsh", &epr::chsh, py::arg("a"), py::arg("a_prime"), py::arg("b"), py::arg("b_prime"));
  m.def("chsh_sampled", &epr::chsh_sampled, py::arg("a"), py::arg("a_prime"), py::arg("b"),
        py::arg("b_prime"), py::arg("trials"), py::arg("seed"));
  m.def(
      "bayes_decomposition",
      [](double t1, double t2) {
        const auto r = epr::bayes_decomposition(t1, t2);
        py::dict d;
        d["p_lambda"] = r.p_lambda;
        d["p_a_given_lambda"] = r.p_a_given_lambda;
        d["p_b_given_lambda"] = r.p_b_given_lambda;
        d["p_b_given_a_lambda"] = r.p_b_given_a_lambda;
        d["marginal"] = r.marginal;
        d["factorization_holds"] = r.factorization_holds;
        d["deviation"] = r.deviation_from_analytic;
        return d;
      },
      py::arg("theta1"), py::arg("theta2"));

  // Twin charts and decay
  m.def(
      "chart_conventional",
      [](double d, double beta) { return twin_to_dict(aging::chart_conventional({d, beta})); },
      py::arg("distance"), py::arg("beta"));
  m.def(
      "chart_equal_aging",
      [](double d, double beta) { return twin_to_dict(aging::chart_equal_aging({d, beta})); },
      py::arg("distance"), py::arg("beta"));
  m.def(
      "emit_chart_json",
      [](double d, double beta, int resolution) {
        return io::chart_to_json(aging::emit_chart({d, beta}, resolution));
      },
      py::arg("distance"), py::arg("beta"), py::arg("resolution") = 101);
  m.def(
      "decay_experiment",
      [](double lambda, double duration, double gamma_hot, const std::string& hypothesis) {
        const auto h = hypothesis == "equal_aging" ? aging::DecayHypothesis::equal_aging
                                                   : aging::DecayHypothesis::conventional;
        return aging::decay_experiment({lambda, duration, gamma_hot, 1.0}, h);
      },
      py::arg("decay_rate"), py::arg("duration"), py::arg("gamma_hot"),
      py::arg("hypothesis") = "conventional");
  m.def(
      "decay_sensitivity",
      [](double lambda, double duration, double gamma_hot, double n0) {
        const auto r = aging::decay_sensitivity({lambda, duration, gamma_hot, n0});
        py::dict d;
        d["absolute_difference"] = r.absolute_difference;
        d["relative_difference"] = r.relative_difference;
        d["survival_slope"] = r.survival_slope;
        d["detectable"] = r.detectable;
        d["note"] = r.detectability_note;
        return d;
      },
      py::arg("decay_rate"), py::arg("duration"), py::arg("gamma_hot"), py::arg("n0") = 1e20);

  // Electrodynamics
  py::class_<ed::Particle>(m, "Particle")
      .def(py::init([](double mass, double charge, Worldline history) {
             return ed::Particle{mass, charge, std::move(history)};
           }),
           py::arg("mass"), py::arg("charge"), py::arg("history"))
      .def_readonly("mass", &ed::Particle::mass)
      .def_readonly("charge", &ed::Particle::charge)
      .def_readonly("history", &ed::Particle::history);

  m.def(
      "retarded_field",
      [](const ed::Particle& p, const FourVector& event) {
        return matrix_to_list(ed::retarded_field(p, event).f);
      },
      py::arg("source"), py::arg("event"));
  m.def(
      "regularized_field_oracle",
      [](const ed::Particle& p, const FourVector& event, double eps, int points) {
        return matrix_to_list(ed::regularized_field_oracle(p, event, eps, points).f);
      },
      py::arg("source"), py::arg("event"), py::arg("epsilon"), py::arg("quadrature_points") = 1000);
  m.def(
      "integrate_json",
      [](const std::string& config, const std::string& base_dir) {
        auto state = io::parse_system_config(config, base_dir);
        const auto check = ed::check_initial_data(state);
        py::dict d;
        if (!check.valid) {
          d["status"] = "insufficient_history";
          d["message"] = check.message;
          return d;
        }
        const auto r = ed::integrate(std::move(state));
        std::ostringstream csv;
        io::write_trajectory_csv(csv, r.state, r.tau_start);
        d["status"] = std::string(ed::to_string(r.status));
        d["message"] = r.message;
        d["summary"] = io::diagnostics_summary_json(r);
        d["trajectories_csv"] = csv.str();
        return d;
      },
      py::arg("config"), py::arg("base_dir") = ".",
      "integrate a system configuration given as JSON text");
}

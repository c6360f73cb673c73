// SPDX-License-Identifier: Apache-2.0
#include "relab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "relab/errors.hpp"

namespace relab::io {

using nlohmann::json;

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

double get_number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw ParseError(std::string("missing or non-numeric field '") + key + "'");
  }
  return it->get<double>();
}

// Writes doubles as JSON numbers with 12 significant digits.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return json::parse(fmt(v));
}

std::array<double, 3> triple(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  if (it->is_number()) return {it->get<double>(), 0.0, 0.0};
  if (!it->is_array() || it->size() != 3) {
    throw ParseError(std::string("field '") + key + "' must be a number or a 3-array");
  }
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(*it)[i].is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
    out[i] = (*it)[i].get<double>();
  }
  return out;
}

}  // namespace

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string worldline_to_json(const Worldline& w) {
  json arr = json::array();
  for (const auto& s : w.samples()) {
    json o;
    o["tau"] = num(s.tau);
    o["x"] = num(s.position.x);
    o["y"] = num(s.position.y);
    o["z"] = num(s.position.z);
    o["t"] = num(s.position.t);
    o["vx"] = num(s.velocity.x);
    o["vy"] = num(s.velocity.y);
    o["vz"] = num(s.velocity.z);
    o["vt"] = num(s.velocity.t);
    o["ax"] = num(s.acceleration.x);
    o["ay"] = num(s.acceleration.y);
    o["az"] = num(s.acceleration.z);
    o["at"] = num(s.acceleration.t);
    arr.push_back(std::move(o));
  }
  return arr.dump(1);
}

Worldline worldline_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("worldline JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw ParseError("worldline JSON must be a non-empty array");
  std::vector<WorldlineSample> samples;
  bool has_acc = true;
  for (const auto& o : doc) {
    if (!o.is_object()) throw ParseError("worldline JSON: samples must be objects");
    WorldlineSample s;
    s.tau = get_number(o, "tau");
    s.position = FourVector::event(get_number(o, "x"), get_number(o, "y"), get_number(o, "z"),
                                   get_number(o, "t"));
    s.velocity = FourVector::event(get_number(o, "vx"), get_number(o, "vy"),
                                   get_number(o, "vz"), get_number(o, "vt"));
    if (o.contains("ax")) {
      s.acceleration = FourVector::event(get_number(o, "ax"), get_number(o, "ay"),
                                         get_number(o, "az"), get_number(o, "at"));
    } else {
      has_acc = false;
    }
    samples.push_back(s);
  }
  if (!has_acc && samples.size() >= 2) {
    // Finite differences of the sampled velocities, projected orthogonal to v.
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = i + 1 == samples.size() ? i : i + 1;
      FourVector a = (samples[hi].velocity - samples[lo].velocity) *
                     (1.0 / (samples[hi].tau - samples[lo].tau));
      const FourVector& v = samples[i].velocity;
      a -= (minkowski_dot(a, v) / minkowski_dot(v, v)) * v;
      samples[i].acceleration = a;
    }
  }
  try {
    return Worldline(std::move(samples));
  } catch (const DomainError& e) {
    throw ParseError(std::string("worldline JSON: ") + e.what());
  }
}

EprRecord make_epr_record(double theta1_rad, double theta2_rad, const epr::EstimateOptions& opt) {
  EprRecord r;
  r.theta1_deg = theta1_rad * kDeg;
  r.theta2_deg = theta2_rad * kDeg;
  r.estimate = epr::estimate_coincidence(theta1_rad, theta2_rad, opt);
  r.analytic = epr::coincidence_analytic(theta1_rad, theta2_rad);
  r.deviation = r.estimate.value - r.analytic;
  return r;
}

std::string epr_csv_header() {
  return "theta1_deg,theta2_deg,estimator,trials,value,stderr,analytic,deviation";
}

std::string epr_csv_row(const EprRecord& r) {
  std::ostringstream os;
  os << fmt(r.theta1_deg) << ',' << fmt(r.theta2_deg) << ',' << epr::to_string(r.estimate.estimator)
     << ',' << r.estimate.trials << ',' << fmt(r.estimate.value) << ','
     << fmt(r.estimate.standard_error) << ',' << fmt(r.analytic) << ',' << fmt(r.deviation);
  return os.str();
}

std::string epr_json(const std::vector<EprRecord>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"theta1_deg", num(r.theta1_deg)},
                   {"theta2_deg", num(r.theta2_deg)},
                   {"estimator", std::string(epr::to_string(r.estimate.estimator))},
                   {"trials", r.estimate.trials},
                   {"value", num(r.estimate.value)},
                   {"stderr", num(r.estimate.standard_error)},
                   {"analytic", num(r.analytic)},
                   {"deviation", num(r.deviation)}});
  }
  return arr.dump(1);
}

std::string twin_csv_header() {
  return "construction,D,beta,turnaround_x,turnaround_t,tau_traveler,tau_home";
}

std::string twin_csv_row(const aging::TwinReport& r, double length_scale) {
  std::ostringstream os;
  os << aging::to_string(r.construction) << ',' << fmt(r.scenario.distance * length_scale) << ','
     << fmt(r.scenario.beta) << ',' << fmt(r.turnaround.x * length_scale) << ','
     << fmt(r.turnaround.t * length_scale) << ',' << fmt(r.tau_traveler_one_way * length_scale)
     << ',' << fmt(r.tau_home_one_way * length_scale);
  return os.str();
}

std::string twin_json(const std::vector<aging::TwinReport>& rows, double length_scale) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"construction", std::string(aging::to_string(r.construction))},
                   {"D", num(r.scenario.distance * length_scale)},
                   {"beta", num(r.scenario.beta)},
                   {"turnaround_x", num(r.turnaround.x * length_scale)},
                   {"turnaround_t", num(r.turnaround.t * length_scale)},
                   {"tau_traveler", num(r.tau_traveler_one_way * length_scale)},
                   {"tau_home", num(r.tau_home_one_way * length_scale)}});
  }
  return arr.dump(1);
}

std::string chart_to_json(const aging::ChartData& chart) {
  json curves = json::array();
  for (const auto& c : chart.curves) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back(json::array({num(p.x), num(p.t)}));
    curves.push_back({{"name", c.name}, {"points", std::move(pts)}});
  }
  json events = json::array();
  for (const auto& e : chart.events) {
    events.push_back({{"name", e.name}, {"x", num(e.point.x)}, {"t", num(e.point.t)}});
  }
  json doc;
  doc["curves"] = std::move(curves);
  doc["events"] = std::move(events);
  doc["params"] = {{"D", num(chart.scenario.distance)}, {"beta", num(chart.scenario.beta)}};
  return doc.dump(1);
}

namespace {

ed::SystemState parse_config_document(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config JSON must be an object");

  ed::IntegrationConfig cfg;
  cfg.dtau = get_number(doc, "dtau");
  cfg.tau_end = get_number(doc, "tau_end");
  cfg.min_separation = doc.contains("min_separation") ? get_number(doc, "min_separation") : 1e-3;
  if (doc.contains("lightcone_tolerance")) {
    cfg.lightcone_tolerance = get_number(doc, "lightcone_tolerance");
  }
  if (doc.contains("renormalize_velocity")) {
    if (!doc["renormalize_velocity"].is_boolean()) throw ParseError("renormalize_velocity must be boolean");
    cfg.renormalize_velocity = doc["renormalize_velocity"].get<bool>();
  }
  InterpolationOrder order = InterpolationOrder::quintic;
  if (doc.contains("interpolation")) {
    const auto v = doc["interpolation"].get<std::string>();
    if (v == "cubic") {
      order = InterpolationOrder::cubic;
    } else if (v != "quintic") {
      throw ParseError("interpolation must be 'cubic' or 'quintic'");
    }
  }
  const double spacing = doc.contains("history_spacing") ? get_number(doc, "history_spacing") : cfg.dtau;

  const auto parts = doc.find("particles");
  if (parts == doc.end() || !parts->is_array() || parts->empty()) {
    throw ParseError("config JSON needs a non-empty 'particles' array");
  }
  std::vector<ed::Particle> particles;
  for (const auto& p : *parts) {
    ed::Particle particle;
    particle.mass = get_number(p, "mass");
    particle.charge = get_number(p, "charge");
    const auto h = p.find("history");
    if (h == p.end()) throw ParseError("particle needs a 'history'");
    try {
      if (h->is_string()) {
        std::filesystem::path path = h->get<std::string>();
        if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open history file " + path.string());
        std::stringstream buf;
        buf << in.rdbuf();
        particle.history = worldline_from_json(buf.str());
      } else if (h->is_object()) {
        const std::string type = h->value("type", "uniform");
        const auto pos = triple(*h, "position");
        std::array<double, 3> beta{};
        if (type == "uniform") {
          beta = triple(*h, "beta");
        } else if (type != "static") {
          throw ParseError("unknown history generator '" + type + "'");
        }
        const double depth = get_number(*h, "depth");
        if (!(depth > 0.0)) throw ParseError("history depth must be > 0");
        const FourVector u = four_velocity(beta[0], beta[1], beta[2]);
        const FourVector origin{0.0, pos[0], pos[1], pos[2]};
        particle.history = uniform_worldline(origin, beta[0], beta[1], beta[2], -depth / u.t, 0.0,
                                             spacing);
        if (order != InterpolationOrder::quintic) {
          particle.history = Worldline(
              std::vector<WorldlineSample>(particle.history.samples().begin(),
                                           particle.history.samples().end()),
              order);
        }
      } else {
        throw ParseError("history must be a file path or a generator object");
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("particle history: ") + e.what());
    }
    particles.push_back(std::move(particle));
  }
  try {
    return ed::make_state(std::move(particles), cfg);
  } catch (const DomainError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

}  // namespace

ed::SystemState parse_system_config(const std::string& text, const std::string& base_dir) {
  try {
    return parse_config_document(text, base_dir);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

std::string trajectory_csv_header() {
  return "particle_id,tau,x,y,z,t,vx,vy,vz,vt,norm_drift,min_sep";
}

void write_trajectory_csv(std::ostream& os, const ed::SystemState& s, double tau_from) {
  os << trajectory_csv_header() << '\n';
  for (std::size_t j = 0; j < s.particles.size(); ++j) {
    for (const auto& smp : s.particles[j].history.samples()) {
      if (smp.tau < tau_from) continue;
      double min_sep = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < s.particles.size(); ++k) {
        if (k == j || !s.particles[k].history.contains(smp.tau)) continue;
        min_sep = std::min(
            min_sep, (smp.position - s.particles[k].history.position_at(smp.tau)).spatial_norm());
      }
      const FourVector& p = smp.position;
      const FourVector& v = smp.velocity;
      os << j << ',' << fmt(smp.tau) << ',' << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.z) << ','
         << fmt(p.t) << ',' << fmt(v.x) << ',' << fmt(v.y) << ',' << fmt(v.z) << ',' << fmt(v.t)
         << ',' << fmt(std::abs(minkowski_dot(v, v) - 1.0)) << ',' << fmt(min_sep) << '\n';
    }
  }
}

std::string diagnostics_summary_json(const ed::IntegrationResult& r) {
  const auto& d = r.diagnostics;
  json doc;
  doc["status"] = std::string(ed::to_string(r.status));
  doc["message"] = r.message;
  doc["tau_start"] = num(r.tau_start);
  doc["tau_final"] = num(r.state.tau_now);
  doc["steps"] = d.steps.size();
  doc["max_normalization_drift"] = num(d.max_normalization_drift());
  doc["max_orthogonality_residual"] = num(d.max_orthogonality());
  doc["max_lightcone_residual"] = num(d.max_lightcone_residual());
  const double ms = d.min_separation();
  doc["min_separation"] = std::isfinite(ms) ? num(ms) : json(nullptr);
  return doc.dump(1);
}

}  // namespace relab::io

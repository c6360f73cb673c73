// SPDX-License-Identifier: Apache-2.0
#include "relab/aging.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "relab/errors.hpp"

namespace relab::aging {

void validate(const TwinScenario& s) {
  if (!(s.distance > 0.0) || !std::isfinite(s.distance)) {
    throw DomainError("twin scenario: distance must be > 0");
  }
  if (!(s.beta > 0.0 && s.beta < 1.0)) {
    throw DomainError("twin scenario: beta must lie in (0, 1)");
  }
}

std::string_view to_string(Construction c) {
  return c == Construction::conventional ? "conventional" : "equal_aging";
}

double gamma(double beta) { return lorentz_gamma(beta); }

TwinReport chart_conventional(const TwinScenario& s) {
  validate(s);
  TwinReport r;
  r.construction = Construction::conventional;
  r.scenario = s;
  r.turnaround = {s.distance, s.distance / s.beta};
  const double t = r.turnaround.t, x = r.turnaround.x;
  r.tau_traveler_one_way = std::sqrt((t - x) * (t + x));
  r.tau_home_one_way = t;
  r.round_trip_ratio = r.tau_traveler_one_way / r.tau_home_one_way;
  return r;
}

TwinReport chart_equal_aging(const TwinScenario& s) {
  validate(s);
  const double g = gamma(s.beta);
  TwinReport r;
  r.construction = Construction::equal_aging;
  r.scenario = s;
  r.axis_intersection = {g * s.distance, g * s.beta * s.distance};
  const double pylon_x = r.axis_intersection.x;
  r.turnaround = {pylon_x, pylon_x / s.beta};
  const double t = r.turnaround.t, x = r.turnaround.x;
  r.tau_traveler_one_way = std::sqrt((t - x) * (t + x));
  r.tau_home_one_way = s.distance / s.beta;
  r.round_trip_ratio = r.tau_traveler_one_way / r.tau_home_one_way;
  return r;
}

const Curve& ChartData::curve(std::string_view name) const {
  for (const auto& c : curves)
    if (c.name == name) return c;
  throw OutOfRangeError("no curve named " + std::string(name));
}

const NamedEvent& ChartData::event(std::string_view name) const {
  for (const auto& e : events)
    if (e.name == name) return e;
  throw OutOfRangeError("no event named " + std::string(name));
}

namespace {

std::vector<ChartPoint> segment(ChartPoint a, ChartPoint b, int n) {
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    out.push_back({a.x + f * (b.x - a.x), a.t + f * (b.t - a.t)});
  }
  return out;
}

// Hyperbola arcs parameterized by rapidity so every point satisfies its
// defining equation up to rounding.
std::vector<ChartPoint> time_isocline(double tau, double rapidity_max, int n) {
  std::vector<ChartPoint> out;
  for (int i = 0; i < n; ++i) {
    const double eta = rapidity_max * i / (n - 1);
    out.push_back({tau * std::sinh(eta), tau * std::cosh(eta)});
  }
  return out;
}

std::vector<ChartPoint> length_isocline(double d, double rapidity_max, int n) {
  std::vector<ChartPoint> out;
  for (int i = 0; i < n; ++i) {
    const double eta = rapidity_max * i / (n - 1);
    out.push_back({d * std::cosh(eta), d * std::sinh(eta)});
  }
  return out;
}

}  // namespace

ChartData emit_chart(const TwinScenario& s, int resolution) {
  if (resolution < 2) throw DomainError("emit_chart: resolution must be >= 2");
  if (!(s.distance > 0.0)) throw DomainError("emit_chart: distance must be > 0");
  if (!(s.beta >= 0.0 && s.beta < 1.0)) throw DomainError("emit_chart: beta must lie in [0, 1)");

  ChartData chart;
  chart.scenario = s;
  const double d = s.distance;
  const double beta = s.beta;
  const double g = gamma(beta);
  const bool degenerate = beta == 0.0;
  const double rapidity = std::atanh(beta);

  // Chart extent: a little past the later turnaround, or 2D when the traveler stays home.
  const double t_max = degenerate ? 2.0 * d : 1.2 * g * d / beta;
  const double x_max = 1.2 * g * d;

  // Axes drawn as a single L-shaped polyline through the origin.
  auto axes = [&](ChartPoint x_dir, ChartPoint t_dir) {
    std::vector<ChartPoint> pts = segment({x_dir.x, x_dir.t}, {0.0, 0.0}, resolution);
    auto up = segment({0.0, 0.0}, t_dir, resolution);
    pts.insert(pts.end(), up.begin() + 1, up.end());
    return pts;
  };
  chart.curves.push_back({"fixed_axes", axes({x_max, 0.0}, {0.0, t_max})});
  chart.curves.push_back({"primed_axes", axes({x_max, beta * x_max}, {beta * t_max, t_max})});

  chart.curves.push_back({"traveler_worldline", segment({0.0, 0.0}, {beta * t_max, t_max}, resolution)});
  chart.curves.push_back({"pylon_worldline_fixed", segment({d, 0.0}, {d, t_max}, resolution)});
  chart.curves.push_back({"pylon_worldline_primed", segment({g * d, 0.0}, {g * d, t_max}, resolution)});
  chart.curves.push_back({"proper_length_isocline", length_isocline(d, rapidity, resolution)});

  chart.events.push_back({"origin", {0.0, 0.0}});
  chart.events.push_back({"pylon_on_x_axis", {d, 0.0}});
  chart.events.push_back({"axis_intersection", {g * d, g * beta * d}});

  if (degenerate) {
    chart.curves.push_back({"proper_time_isocline_conventional", {}});
    chart.curves.push_back({"proper_time_isocline_equal_aging", {}});
    return chart;
  }

  const TwinReport conv = chart_conventional(s);
  const TwinReport equal = chart_equal_aging(s);
  // Each isocline runs from its t-axis crossing (0, tau) up to the turnaround event.
  chart.curves.push_back({"proper_time_isocline_conventional",
                          time_isocline(conv.tau_traveler_one_way, rapidity, resolution)});
  chart.curves.push_back({"proper_time_isocline_equal_aging",
                          time_isocline(equal.tau_traveler_one_way, rapidity, resolution)});
  chart.events.push_back({"turnaround_conventional", conv.turnaround});
  chart.events.push_back({"turnaround_equal_aging", equal.turnaround});
  chart.events.push_back({"isocline_t_axis_conventional", {0.0, conv.tau_traveler_one_way}});
  chart.events.push_back({"isocline_t_axis_equal_aging", {0.0, equal.tau_traveler_one_way}});
  return chart;
}

void validate(const DecayScenario& d) {
  if (!(d.lambda > 0.0)) throw DomainError("decay scenario: lambda must be > 0");
  if (!(d.duration > 0.0)) throw DomainError("decay scenario: duration must be > 0");
  if (!(d.gamma_hot >= 1.0)) throw DomainError("decay scenario: gamma_hot must be >= 1");
  if (!(d.n0 > 0.0)) throw DomainError("decay scenario: n0 must be > 0");
}

namespace {
// lambda * duration * (1 - 1/gamma_hot), written to avoid cancellation near gamma_hot = 1.
double dilation_exponent(const DecayScenario& d) {
  return d.lambda * d.duration * ((d.gamma_hot - 1.0) / d.gamma_hot);
}
}  // namespace

double decay_experiment(const DecayScenario& d, DecayHypothesis h) {
  validate(d);
  if (h == DecayHypothesis::equal_aging) return 1.0;
  return std::exp(dilation_exponent(d));
}

DecaySensitivity decay_sensitivity(const DecayScenario& d) {
  validate(d);
  DecaySensitivity r;
  const double lt = d.lambda * d.duration;
  const double cold = std::exp(-lt);
  const double excess = std::expm1(dilation_exponent(d));
  // Hot survival under time dilation is cold * exp(lt (1 - 1/gamma)).
  const double hot_conv = cold * (1.0 + excess);
  r.absolute_difference = cold * excess;
  r.relative_difference = excess;
  r.survival_slope = lt / (d.gamma_hot * d.gamma_hot) * std::exp(-lt / d.gamma_hot);
  r.counting_noise = std::sqrt(hot_conv * (1.0 - hot_conv) / d.n0);
  r.detectable = r.absolute_difference > 3.0 * r.counting_noise;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "survival difference %.3e vs counting noise %.3e (n0=%.3g): %s", r.absolute_difference,
                r.counting_noise, d.n0, r.detectable ? "resolvable at 3 sigma" : "not resolvable");
  r.detectability_note = buf;
  return r;
}

}  // namespace relab::aging

// SPDX-License-Identifier: Apache-2.0
//
// Minkowski-chart constructions for the twin trip to a pylon at proper
// distance D with cruise speed beta. Everything lives in the stay-at-home
// frame's chart coordinates (x, t); primed-axis objects are represented by
// their loci in that single chart.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relab/minkowski.hpp"

namespace relab::aging {

struct TwinScenario {
  double distance = 0.0;  // D > 0
  double beta = 0.0;      // 0 < beta < 1
};

/// Throws DomainError unless D > 0 and 0 < beta < 1.
void validate(const TwinScenario& s);

enum class Construction { conventional, equal_aging };
std::string_view to_string(Construction c);

struct ChartPoint {
  double x = 0.0;
  double t = 0.0;
};

struct TwinReport {
  Construction construction = Construction::conventional;
  TwinScenario scenario;
  ChartPoint turnaround;
  double tau_traveler_one_way = 0.0;
  double tau_home_one_way = 0.0;
  /// Traveler/home proper-time ratio for the round trip (turnaround is instantaneous).
  double round_trip_ratio = 0.0;
  /// Intersection of the proper-length isocline through (D, 0) with the
  /// traveler's space axis. Only populated by the equal-aging construction.
  ChartPoint axis_intersection;

  double tau_traveler_round_trip() const { return 2.0 * tau_traveler_one_way; }
  double tau_home_round_trip() const { return 2.0 * tau_home_one_way; }
};

/// gamma(beta); throws DomainError for |beta| >= 1.
double gamma(double beta);

/// Turnaround where the traveler meets the pylon worldline x = D; traveler
/// proper time read off the proper-time isocline through that event.
TwinReport chart_conventional(const TwinScenario& s);

/// Pylon worldline referred to the traveler's axes:
///  1. proper-length isocline x^2 - t^2 = D^2 through (D, 0)
///  2. meets the traveler's space axis t = beta x at (gamma D, gamma beta D)
///  3. pylon worldline through that point, parallel to the t axis: x = gamma D
///  4. meets the traveler worldline x = beta t at t = gamma D / beta
///  5. traveler proper time sqrt(t^2 - x^2), home time D / beta
TwinReport chart_equal_aging(const TwinScenario& s);

struct Curve {
  std::string name;
  std::vector<ChartPoint> points;
};

struct NamedEvent {
  std::string name;
  ChartPoint point;
};

struct ChartData {
  TwinScenario scenario;
  std::vector<Curve> curves;
  std::vector<NamedEvent> events;

  /// Throws std::out_of_range for unknown names.
  const Curve& curve(std::string_view name) const;
  const NamedEvent& event(std::string_view name) const;
};

/// Polylines for re-plotting the superimposed charts. `resolution` is the
/// number of points on each sampled curve (>= 2).
///
/// beta = 0 is accepted as the degenerate chart: primed axes coincide with
/// the fixed axes, the traveler never leaves home, and the two turnaround
/// isoclines are emitted empty.
ChartData emit_chart(const TwinScenario& s, int resolution);

// Decay-ratio thought experiment -------------------------------------------

struct DecayScenario {
  double lambda = 0.0;     // decay rate, 1/time
  double duration = 0.0;   // coordinate time
  double gamma_hot = 1.0;  // time-dilation factor of the heated sample's atoms
  double n0 = 0.0;         // initial nucleus count
};

void validate(const DecayScenario& d);

enum class DecayHypothesis { conventional, equal_aging };

/// Surviving-fraction ratio hot/cold after `duration`.
/// conventional: exp(lambda duration (1 - 1/gamma_hot)); equal_aging: 1.
double decay_experiment(const DecayScenario& d, DecayHypothesis h);

struct DecaySensitivity {
  /// Difference in hot-sample surviving fraction between the hypotheses.
  double absolute_difference = 0.0;
  /// Difference in the hot/cold survival ratio between the hypotheses.
  double relative_difference = 0.0;
  /// d(surviving fraction)/d(gamma_hot) under the conventional hypothesis.
  double survival_slope = 0.0;
  /// Counting noise on the hot sample's survivor fraction, sqrt(S (1 - S) / n0).
  double counting_noise = 0.0;
  bool detectable = false;
  std::string detectability_note;
};

DecaySensitivity decay_sensitivity(const DecayScenario& d);

}  // namespace relab::aging

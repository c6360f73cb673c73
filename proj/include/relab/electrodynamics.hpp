// SPDX-License-Identifier: Apache-2.0
//
// Retarded-only action-at-a-distance electrodynamics for point charges.
// Units: c = 1, Gaussian-style charges (two static charges at distance d
// repel with force e1 e2 / d^2). Fields are rank-2 contravariant tensors
// with F^{i0} = E^i.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "relab/lightcone.hpp"
#include "relab/minkowski.hpp"
#include "relab/worldline.hpp"

namespace relab::ed {

struct Particle {
  double mass = 1.0;
  double charge = 0.0;
  Worldline history;
};

/// Antisymmetric field tensor F^{mu nu}.
struct FieldTensor {
  Matrix4 f{};

  double operator()(std::size_t mu, std::size_t nu) const { return f[mu][nu]; }
  /// Electric field E^i = F^{i0}.
  std::array<double, 3> electric() const { return {f[1][0], f[2][0], f[3][0]}; }
  /// Magnetic field B = (-F^{23}, -F^{31}, -F^{12}).
  std::array<double, 3> magnetic() const { return {-f[2][3], -f[3][1], -f[1][2]}; }
  /// max |F + F^T|
  double antisymmetry_error() const;
  /// max |F^{mu nu}|
  double max_abs() const;

  FieldTensor& operator+=(const FieldTensor& o);
  friend FieldTensor operator+(FieldTensor a, const FieldTensor& b) { return a += b; }
  friend FieldTensor operator*(double s, FieldTensor a);
};

/// Field of a point charge seen at separation R = event - source point, with
/// source four-velocity u and four-acceleration a at that point:
///   F = e G / |R.u|,  G = d/dtau' [ (R u^T - u R^T) / (R.u) ].
/// Valid on either light-cone branch. Throws SingularityError when R.u ~ 0.
FieldTensor point_charge_field(double charge, const FourVector& separation,
                               const FourVector& velocity, const FourVector& acceleration);

struct FieldEvaluation {
  FieldTensor field;
  double source_tau = 0.0;
  double lightcone_residual = 0.0;
};

/// Field of `source` at `event` from its retarded (or advanced) light-cone point.
FieldEvaluation field_from(const Particle& source, const FourVector& event, Branch branch,
                           double lightcone_tolerance = kDefaultLightconeTolerance);

/// Closed-form retarded field. Throws InsufficientHistoryError when the
/// history does not cover the retarded point.
FieldTensor retarded_field(const Particle& source, const FourVector& event,
                           double lightcone_tolerance = kDefaultLightconeTolerance);

/// Independent numerical evaluation of the retarded field: quadrature over the
/// source history of a Gaussian nascent delta of width `epsilon` in the
/// invariant interval, with the delta's derivative moved onto the worldline
/// integrand by parts. Only the portion of the history up to the event's
/// coordinate time contributes, which excludes the advanced crossing.
/// `quadrature_points` caps the adaptive subdivisions per component.
/// Throws OracleFailure when the quadrature does not converge.
FieldTensor regularized_field_oracle(const Particle& source, const FourVector& event,
                                     double epsilon, int quadrature_points = 1000);

/// Four-acceleration (e/m) F^{mu nu} v_nu of a charge with four-velocity v.
FourVector lorentz_force(const FieldTensor& f, const Particle& p, const FourVector& velocity);

/// Four-force e F^{mu nu} v_nu.
FourVector four_force(const FieldTensor& f, double charge, const FourVector& velocity);

// DDE integration -----------------------------------------------------------

struct IntegrationConfig {
  double dtau = 0.01;
  double tau_end = 1.0;
  double min_separation = 1e-3;
  double lightcone_tolerance = kDefaultLightconeTolerance;
  bool renormalize_velocity = false;
};

/// Throws DomainError for non-positive step, separation cutoff or tolerance.
void validate(const IntegrationConfig& c);

/// All particles share the proper-time parameter: every history ends at tau_now.
struct SystemState {
  std::vector<Particle> particles;
  double tau_now = 0.0;
  IntegrationConfig config;
};

/// Builds a state and checks the shared-parameter invariant.
SystemState make_state(std::vector<Particle> particles, const IntegrationConfig& config);

struct HistoryRequirement {
  std::size_t target = 0;  // particle whose current event needs the field
  std::size_t source = 0;  // particle whose history must reach back
  /// Light-travel distance from the source's oldest sample to the target's current event.
  double required_span = 0.0;
  /// Coordinate time between the source's oldest sample and the target's current event.
  double available_span = 0.0;
  bool ok = false;
};

struct InitialDataReport {
  bool valid = false;
  std::vector<HistoryRequirement> requirements;
  std::string message;
};

/// Verifies that every retarded intersection at tau_now is resolvable. The
/// oldest sample cannot be the intersection itself, so available_span must
/// strictly exceed required_span.
InitialDataReport check_initial_data(const SystemState& s);

struct StepRecord {
  double tau = 0.0;
  std::vector<double> normalization_drift;  // |v.v - 1| per particle
  double orthogonality = 0.0;               // max |v.a| over the step's force evaluations
  double lightcone_residual = 0.0;          // max |residual| over the step's evaluations
  double min_separation = std::numeric_limits<double>::infinity();
};

struct Diagnostics {
  std::vector<StepRecord> steps;

  double max_normalization_drift() const;
  double max_orthogonality() const;
  double max_lightcone_residual() const;
  double min_separation() const;
};

/// Advances every particle by one dtau of common proper time with the
/// classical fourth-order stage scheme. Stage accelerations read the other
/// particles' recorded histories at their retarded points.
///
/// Throws CollisionError when particles are closer than min_separation and
/// InsufficientHistoryError when a retarded point escapes the recorded history.
SystemState step(SystemState s);

/// In-place variant that also appends a diagnostics record.
void step_in_place(SystemState& s, Diagnostics& diag);

enum class IntegrationStatus { completed, collision, insufficient_history, numerical_failure };
std::string_view to_string(IntegrationStatus s);

struct IntegrationResult {
  SystemState state;
  Diagnostics diagnostics;
  IntegrationStatus status = IntegrationStatus::completed;
  std::string message;
  double tau_start = 0.0;
};

/// Steps until tau_end or the first abort; never throws for physics aborts.
IntegrationResult integrate(SystemState s);

/// Spatial distance between two particles at the same proper time.
double separation(const Particle& a, const Particle& b, double tau);

struct FokkerForce {
  FourVector retarded;
  FourVector advanced;
  /// Half-retarded plus half-advanced four-force.
  FourVector total;
};

/// Time-symmetric force on particle j from the other particle, evaluated on
/// two complete, prescribed worldlines. Needs both light-cone crossings inside
/// the given span; throws InsufficientHistoryError otherwise.
FokkerForce fokker_force(const std::vector<Particle>& particles, std::size_t j, double tau);

/// Time-reversed copy of a history: tau -> -tau, t -> -t, spatial velocity flipped.
Worldline time_reversed(const Worldline& w, double tau_from, double tau_to);

struct TimeArrowReport {
  double max_position_deviation = 0.0;
  double span = 0.0;
  IntegrationStatus status = IntegrationStatus::completed;
};

/// Integrates `initial` forward, then feeds the last `history_span` of the
/// trajectories, naively reversed in tau, back in as initial data and
/// integrates that reversed system back to tau = tau_start. Reports how far the
/// result strays from the reversed forward trajectory.
TimeArrowReport time_arrow_demo(const SystemState& initial, double history_span);

}  // namespace relab::ed

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>
#include <span>
#include <vector>

#include "relab/minkowski.hpp"

namespace relab {

struct WorldlineSample {
  double tau = 0.0;
  FourVector position;
  FourVector velocity{1.0, 0.0, 0.0, 0.0};
  FourVector acceleration;
};

/// Hermite order used between samples.
///   cubic   - matches positions and velocities at segment ends.
///   quintic - additionally matches accelerations; needed when fields are read
///             off the history inside a fourth-order integrator.
enum class InterpolationOrder { cubic, quintic };

/// A timelike, future-directed particle history sampled in proper time.
///
/// Construction validates ordering (tau and coordinate time strictly
/// increasing) and the timelike separation of consecutive samples. Queries
/// between samples use piecewise Hermite interpolation; queries outside the
/// sampled range throw OutOfRangeError.
class Worldline {
 public:
  Worldline() = default;
  explicit Worldline(std::vector<WorldlineSample> samples,
                     InterpolationOrder order = InterpolationOrder::quintic);

  std::span<const WorldlineSample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const WorldlineSample& front() const { return samples_.front(); }
  const WorldlineSample& back() const { return samples_.back(); }
  double tau_min() const { return samples_.front().tau; }
  double tau_max() const { return samples_.back().tau; }
  InterpolationOrder order() const { return order_; }

  bool contains(double tau) const { return !empty() && tau >= tau_min() && tau <= tau_max(); }

  /// Appends a sample past the current end. Throws DomainError when the new
  /// sample breaks the ordering or timelike invariants.
  void append(const WorldlineSample& s);

  /// Overwrites the acceleration of the last sample.
  void set_back_acceleration(const FourVector& a) { samples_.back().acceleration = a; }

  /// Position only; cheaper than interpolate() and used by root finding.
  FourVector position_at(double tau) const;

  /// Position and its raw parameter derivative (not renormalized).
  std::pair<FourVector, FourVector> position_and_derivative(double tau) const;

  /// Full sample at tau. Velocity is renormalized to v.v = 1 and the
  /// acceleration is projected orthogonal to it.
  WorldlineSample interpolate(double tau) const;

 private:
  std::size_t segment_index(double tau) const;

  std::vector<WorldlineSample> samples_;
  InterpolationOrder order_ = InterpolationOrder::quintic;
};

/// Arc length / c along w between tau_a and tau_b, integrated from the
/// interpolated positions. Signed: negative when tau_b < tau_a.
double proper_time_along(const Worldline& w, double tau_a, double tau_b);

/// Free-function form of Worldline::interpolate.
WorldlineSample interpolate(const Worldline& w, double tau);

// Generators ---------------------------------------------------------------

/// Samples `fn` on [tau_begin, tau_end] with the given spacing. The last
/// sample lands exactly on tau_end.
Worldline sample_worldline(const std::function<WorldlineSample(double)>& fn, double tau_begin,
                           double tau_end, double spacing,
                           InterpolationOrder order = InterpolationOrder::quintic);

/// Particle at rest at `position` (spatial part used); t = tau.
Worldline static_worldline(const FourVector& position, double tau_begin, double tau_end,
                           double spacing);

/// Uniform motion with 3-velocity (bx, by, bz) passing through `at_tau_zero` at tau = 0.
Worldline uniform_worldline(const FourVector& at_tau_zero, double bx, double by, double bz,
                            double tau_begin, double tau_end, double spacing);

/// Hyperbolic motion along x with proper acceleration `accel`:
/// x = cosh(a tau)/a, t = sinh(a tau)/a.
WorldlineSample hyperbolic_sample(double accel, double tau);
Worldline hyperbolic_worldline(double accel, double tau_begin, double tau_end, double spacing,
                               InterpolationOrder order = InterpolationOrder::quintic);

/// Uniform circular motion in the x-y plane with radius r and angular
/// frequency omega (coordinate time), r*omega < 1.
WorldlineSample circular_sample(double radius, double omega, double tau);
Worldline circular_worldline(double radius, double omega, double tau_begin, double tau_end,
                             double spacing);

}  // namespace relab

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "relab/minkowski.hpp"
#include "relab/worldline.hpp"

namespace relab {

enum class Branch { retarded, advanced };

inline constexpr double kDefaultLightconeTolerance = 1e-10;

struct LightconeHit {
  double tau = 0.0;
  /// (event - w(tau)).(event - w(tau)) at the returned root.
  double residual = 0.0;
};

/// Proper time on `w` where it crosses the past (retarded) or future
/// (advanced) light cone of `event`.
///
/// The signed light-time gap g(tau') = (t_e - t(tau')) - |r_e - r(tau')| is
/// strictly monotone along a timelike worldline, so the root is unique. It is
/// bracketed by binary search over the samples and refined by Newton steps
/// kept inside a shrinking bisection bracket.
///
/// Throws InsufficientHistoryError when the crossing lies outside the sampled
/// range and NumericalError when refinement cannot meet `tolerance`.
LightconeHit lightcone_intersection(const Worldline& w, const FourVector& event, Branch branch,
                                    double tolerance = kDefaultLightconeTolerance);

}  // namespace relab

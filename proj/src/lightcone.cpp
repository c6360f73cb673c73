// SPDX-License-Identifier: Apache-2.0
#include "relab/lightcone.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "relab/errors.hpp"

namespace relab {
namespace {

// Light-time gap, oriented so it is strictly decreasing in tau' on either branch:
//   retarded:  (t_e - t(tau')) - |r_e - r(tau')|
//   advanced: -((t(tau') - t_e) - |r_e - r(tau')|)
double gap(const FourVector& event, const FourVector& p, Branch branch) {
  const FourVector d = event - p;
  const double r = d.spatial_norm();
  return branch == Branch::retarded ? d.t - r : d.t + r;
}

// d gap / d tau' given the raw tangent dp.
double gap_slope(const FourVector& event, const FourVector& p, const FourVector& dp,
                 Branch branch) {
  const FourVector d = event - p;
  const double r = d.spatial_norm();
  const double radial = r > 0.0 ? (d.x * dp.x + d.y * dp.y + d.z * dp.z) / r : 0.0;
  return branch == Branch::retarded ? -dp.t + radial : -dp.t - radial;
}

std::string describe(const FourVector& e) {
  std::ostringstream os;
  os.precision(12);
  os << "(x=" << e.x << ", y=" << e.y << ", z=" << e.z << ", t=" << e.t << ")";
  return os.str();
}

}  // namespace

LightconeHit lightcone_intersection(const Worldline& w, const FourVector& event, Branch branch,
                                    double tolerance) {
  if (w.empty()) throw InsufficientHistoryError("lightcone_intersection: empty worldline");
  const auto samples = w.samples();
  const char* which = branch == Branch::retarded ? "retarded" : "advanced";

  const double g_first = gap(event, samples.front().position, branch);
  const double g_last = gap(event, samples.back().position, branch);
  if (g_first < 0.0) {
    throw InsufficientHistoryError(std::string("lightcone_intersection: ") + which +
                                   " point of event " + describe(event) +
                                   " precedes the start of the history");
  }
  if (g_last > 0.0) {
    throw InsufficientHistoryError(std::string("lightcone_intersection: ") + which +
                                   " point of event " + describe(event) +
                                   " lies beyond the end of the history");
  }

  auto finish = [&](double tau) {
    const FourVector d = event - w.position_at(tau);
    LightconeHit hit{tau, minkowski_dot(d, d)};
    if (!(std::abs(hit.residual) < tolerance)) {
      std::ostringstream os;
      os.precision(3);
      os << "lightcone_intersection: residual " << hit.residual << " exceeds tolerance "
         << tolerance;
      throw NumericalError(os.str());
    }
    return hit;
  };

  if (g_first == 0.0) return finish(samples.front().tau);
  if (g_last == 0.0) return finish(samples.back().tau);

  // Bracket on the sample grid: g(lo) > 0 >= g(hi).
  std::size_t lo = 0, hi = samples.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const double g = gap(event, samples[mid].position, branch);
    if (g > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double a = samples[lo].tau;
  double b = samples[hi].tau;
  if (gap(event, samples[hi].position, branch) == 0.0) return finish(b);

  // Safeguarded Newton inside [a, b].
  double x = 0.5 * (a + b);
  for (int iter = 0; iter < 200; ++iter) {
    const auto [p, dp] = w.position_and_derivative(x);
    const double g = gap(event, p, branch);
    if (g == 0.0) return finish(x);
    if (g > 0.0) {
      a = x;
    } else {
      b = x;
    }
    const double slope = gap_slope(event, p, dp, branch);
    double next = slope < 0.0 ? x - g / slope : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (next == x || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      x = next;
      break;
    }
    // Converged once the Newton correction is below a few ulps.
    if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(x) +
                                  std::numeric_limits<double>::min()) {
      x = next;
      break;
    }
    x = next;
  }
  return finish(x);
}

}  // namespace relab

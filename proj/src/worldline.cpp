// SPDX-License-Identifier: Apache-2.0
#include "relab/worldline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "relab/errors.hpp"

namespace relab {
namespace {

struct HermiteEval {
  FourVector p;  // position
  FourVector d;  // d/dtau
  FourVector dd; // d^2/dtau^2
};

// Basis weights for value, first and second derivative (w.r.t. s) of the
// quintic Hermite segment, ordered p0, v0, a0, p1, v1, a1.
struct QuinticBasis {
  std::array<double, 6> h0, h1, h2;
};

QuinticBasis quintic_basis(double s) {
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  QuinticBasis b;
  b.h0 = {1 - 10 * s3 + 15 * s4 - 6 * s5,
          s - 6 * s3 + 8 * s4 - 3 * s5,
          0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5,
          10 * s3 - 15 * s4 + 6 * s5,
          -4 * s3 + 7 * s4 - 3 * s5,
          0.5 * s3 - s4 + 0.5 * s5};
  b.h1 = {-30 * s2 + 60 * s3 - 30 * s4,
          1 - 18 * s2 + 32 * s3 - 15 * s4,
          s - 4.5 * s2 + 6 * s3 - 2.5 * s4,
          30 * s2 - 60 * s3 + 30 * s4,
          -12 * s2 + 28 * s3 - 15 * s4,
          1.5 * s2 - 4 * s3 + 2.5 * s4};
  b.h2 = {-60 * s + 180 * s2 - 120 * s3,
          -36 * s + 96 * s2 - 60 * s3,
          1 - 9 * s + 18 * s2 - 10 * s3,
          60 * s - 180 * s2 + 120 * s3,
          -24 * s + 84 * s2 - 60 * s3,
          3 * s - 12 * s2 + 10 * s3};
  return b;
}

struct CubicBasis {
  std::array<double, 4> h0, h1, h2;  // p0, v0, p1, v1
};

CubicBasis cubic_basis(double s) {
  const double s2 = s * s, s3 = s2 * s;
  CubicBasis b;
  b.h0 = {1 - 3 * s2 + 2 * s3, s - 2 * s2 + s3, 3 * s2 - 2 * s3, -s2 + s3};
  b.h1 = {-6 * s + 6 * s2, 1 - 4 * s + 3 * s2, 6 * s - 6 * s2, -2 * s + 3 * s2};
  b.h2 = {-6 + 12 * s, -4 + 6 * s, 6 - 12 * s, -2 + 6 * s};
  return b;
}

HermiteEval eval_segment(const WorldlineSample& a, const WorldlineSample& b, double tau,
                         InterpolationOrder order) {
  const double h = b.tau - a.tau;
  const double s = (tau - a.tau) / h;
  HermiteEval out;
  if (order == InterpolationOrder::quintic) {
    const auto w = quintic_basis(s);
    const double h2 = h * h;
    const std::array<double, 6> scale = {1.0, h, h2, 1.0, h, h2};
    const std::array<const FourVector*, 6> data = {&a.position, &a.velocity, &a.acceleration,
                                                   &b.position, &b.velocity, &b.acceleration};
    for (std::size_t k = 0; k < 6; ++k) {
      out.p += (w.h0[k] * scale[k]) * *data[k];
      out.d += (w.h1[k] * scale[k] / h) * *data[k];
      out.dd += (w.h2[k] * scale[k] / h2) * *data[k];
    }
  } else {
    const auto w = cubic_basis(s);
    const std::array<double, 4> scale = {1.0, h, 1.0, h};
    const std::array<const FourVector*, 4> data = {&a.position, &a.velocity, &b.position,
                                                   &b.velocity};
    for (std::size_t k = 0; k < 4; ++k) {
      out.p += (w.h0[k] * scale[k]) * *data[k];
      out.d += (w.h1[k] * scale[k] / h) * *data[k];
      out.dd += (w.h2[k] * scale[k] / (h * h)) * *data[k];
    }
  }
  return out;
}

void check_successor(const WorldlineSample& prev, const WorldlineSample& next) {
  if (!(next.tau > prev.tau)) {
    throw DomainError("worldline: tau must be strictly increasing");
  }
  if (!(next.position.t > prev.position.t)) {
    throw DomainError("worldline: coordinate time must be strictly increasing");
  }
  const FourVector dp = next.position - prev.position;
  if (!(minkowski_dot(dp, dp) > 0.0)) {
    throw DomainError("worldline: consecutive samples are not timelike separated");
  }
}

void check_sample(const WorldlineSample& s) {
  if (!std::isfinite(s.tau) || !s.position.is_finite() || !s.velocity.is_finite() ||
      !s.acceleration.is_finite()) {
    throw DomainError("worldline: non-finite sample");
  }
  if (!(s.velocity.t > 0.0)) {
    throw DomainError("worldline: four-velocity must be future-directed");
  }
}

}  // namespace

Worldline::Worldline(std::vector<WorldlineSample> samples, InterpolationOrder order)
    : samples_(std::move(samples)), order_(order) {
  if (samples_.empty()) {
    throw DomainError("worldline: at least one sample required");
  }
  check_sample(samples_.front());
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    check_sample(samples_[i]);
    check_successor(samples_[i - 1], samples_[i]);
  }
}

void Worldline::append(const WorldlineSample& s) {
  check_sample(s);
  if (!samples_.empty()) check_successor(samples_.back(), s);
  samples_.push_back(s);
}

std::size_t Worldline::segment_index(double tau) const {
  if (!contains(tau)) {
    throw OutOfRangeError("worldline: tau " + std::to_string(tau) + " outside sampled range [" +
                          std::to_string(tau_min()) + ", " + std::to_string(tau_max()) + "]");
  }
  // Index i of the segment [i, i+1] holding tau; the final sample maps to the last segment.
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), tau,
                                   [](double t, const WorldlineSample& s) { return t < s.tau; });
  const auto idx = static_cast<std::size_t>(std::distance(samples_.begin(), it));
  return std::min(idx == 0 ? 0 : idx - 1, samples_.size() - 2);
}

FourVector Worldline::position_at(double tau) const {
  if (samples_.size() == 1) {
    if (tau == samples_.front().tau) return samples_.front().position;
    segment_index(tau);  // throws
  }
  const std::size_t i = segment_index(tau);
  if (tau == samples_[i].tau) return samples_[i].position;
  if (tau == samples_[i + 1].tau) return samples_[i + 1].position;
  return eval_segment(samples_[i], samples_[i + 1], tau, order_).p;
}

std::pair<FourVector, FourVector> Worldline::position_and_derivative(double tau) const {
  if (samples_.size() == 1) {
    if (tau == samples_.front().tau) return {samples_.front().position, samples_.front().velocity};
    segment_index(tau);
  }
  const std::size_t i = segment_index(tau);
  const auto e = eval_segment(samples_[i], samples_[i + 1], tau, order_);
  return {e.p, e.d};
}

WorldlineSample Worldline::interpolate(double tau) const {
  if (samples_.size() == 1) {
    if (tau == samples_.front().tau) return samples_.front();
    segment_index(tau);
  }
  const std::size_t i = segment_index(tau);
  if (tau == samples_[i].tau) return samples_[i];
  if (tau == samples_[i + 1].tau) return samples_[i + 1];
  const auto e = eval_segment(samples_[i], samples_[i + 1], tau, order_);
  WorldlineSample out;
  out.tau = tau;
  out.position = e.p;
  const double norm2 = minkowski_dot(e.d, e.d);
  if (!(norm2 > 0.0)) {
    throw NumericalError("worldline: interpolated velocity is not timelike");
  }
  out.velocity = e.d * (1.0 / std::sqrt(norm2));
  out.acceleration = e.dd - minkowski_dot(e.dd, out.velocity) * out.velocity;
  return out;
}

WorldlineSample interpolate(const Worldline& w, double tau) { return w.interpolate(tau); }

double proper_time_along(const Worldline& w, double tau_a, double tau_b) {
  if (!w.contains(tau_a) || !w.contains(tau_b)) {
    throw OutOfRangeError("proper_time_along: range outside history");
  }
  if (tau_a == tau_b) return 0.0;
  if (tau_b < tau_a) return -proper_time_along(w, tau_b, tau_a);

  // 5-point Gauss-Legendre on each piece between sample breakpoints.
  static constexpr std::array<double, 5> nodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                                  0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> weights = {0.2369268850561891, 0.4786286704993665,
                                                    0.5688888888888889, 0.4786286704993665,
                                                    0.2369268850561891};
  std::vector<double> breaks{tau_a};
  for (const auto& s : w.samples()) {
    if (s.tau > tau_a && s.tau < tau_b) breaks.push_back(s.tau);
  }
  breaks.push_back(tau_b);

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k], hi = breaks[k + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const auto [p, d] = w.position_and_derivative(mid + half * nodes[q]);
      total += weights[q] * half * std::sqrt(std::max(0.0, minkowski_dot(d, d)));
    }
  }
  return total;
}

Worldline sample_worldline(const std::function<WorldlineSample(double)>& fn, double tau_begin,
                           double tau_end, double spacing, InterpolationOrder order) {
  if (!(spacing > 0.0) || !(tau_end >= tau_begin)) {
    throw DomainError("sample_worldline: need spacing > 0 and tau_end >= tau_begin");
  }
  const auto n = static_cast<std::size_t>(std::ceil((tau_end - tau_begin) / spacing - 1e-9));
  std::vector<WorldlineSample> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(fn(tau_begin + static_cast<double>(i) * spacing));
  }
  out.push_back(fn(tau_end));
  if (out.size() >= 2 && !(out.back().tau > out[out.size() - 2].tau)) out.erase(out.end() - 2);
  return Worldline(std::move(out), order);
}

Worldline static_worldline(const FourVector& position, double tau_begin, double tau_end,
                           double spacing) {
  return uniform_worldline(FourVector{0.0, position.x, position.y, position.z}, 0.0, 0.0, 0.0,
                           tau_begin, tau_end, spacing);
}

Worldline uniform_worldline(const FourVector& at_tau_zero, double bx, double by, double bz,
                            double tau_begin, double tau_end, double spacing) {
  const FourVector u = four_velocity(bx, by, bz);
  return sample_worldline(
      [&](double tau) {
        WorldlineSample s;
        s.tau = tau;
        s.position = at_tau_zero + tau * u;
        s.velocity = u;
        return s;
      },
      tau_begin, tau_end, spacing);
}

WorldlineSample hyperbolic_sample(double accel, double tau) {
  const double ch = std::cosh(accel * tau), sh = std::sinh(accel * tau);
  WorldlineSample s;
  s.tau = tau;
  s.position = FourVector{sh / accel, ch / accel, 0.0, 0.0};
  s.velocity = FourVector{ch, sh, 0.0, 0.0};
  s.acceleration = FourVector{accel * sh, accel * ch, 0.0, 0.0};
  return s;
}

Worldline hyperbolic_worldline(double accel, double tau_begin, double tau_end, double spacing,
                               InterpolationOrder order) {
  if (!(accel > 0.0)) throw DomainError("hyperbolic_worldline: acceleration must be > 0");
  return sample_worldline([&](double tau) { return hyperbolic_sample(accel, tau); }, tau_begin,
                          tau_end, spacing, order);
}

WorldlineSample circular_sample(double radius, double omega, double tau) {
  const double speed = radius * omega;
  const double g = lorentz_gamma(speed);
  const double t = g * tau;
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  WorldlineSample out;
  out.tau = tau;
  out.position = FourVector{t, radius * c, radius * s, 0.0};
  out.velocity = FourVector{g, -g * speed * s, g * speed * c, 0.0};
  const double k = g * g * speed * omega;
  out.acceleration = FourVector{0.0, -k * c, -k * s, 0.0};
  return out;
}

Worldline circular_worldline(double radius, double omega, double tau_begin, double tau_end,
                             double spacing) {
  return sample_worldline([&](double tau) { return circular_sample(radius, omega, tau); },
                          tau_begin, tau_end, spacing);
}

}  // namespace relab

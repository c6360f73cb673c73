// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "relab/errors.hpp"
#include "relab/lightcone.hpp"

using namespace relab;

namespace {

// Plain bisection on the analytic uniform-motion worldline, independent of the
// library's sampled interpolation and Newton refinement.
double bisect_uniform_retarded(double beta, const FourVector& event) {
  const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
  auto gap = [&](double tau) {
    const double t = gamma * tau, x = gamma * beta * tau;
    return (event.t - t) - std::hypot(event.x - x, event.y, event.z);
  };
  double lo = -1e3, hi = event.t / gamma;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double residual_at(const Worldline& w, double tau, const FourVector& event) {
  const auto d = event - w.position_at(tau);
  return minkowski_dot(d, d);
}

}  // namespace

TEST_SUITE("lightcone") {
  TEST_CASE("static source: retarded time is T - d") {
    const auto w = static_worldline(FourVector{}, -50.0, 50.0, 0.1);
    const auto hit = lightcone_intersection(w, FourVector::event(7, 0, 0, 20), Branch::retarded);
    CHECK(hit.tau == doctest::Approx(13.0).epsilon(1e-12));
    CHECK(std::abs(hit.residual) < 1e-10);

    const auto adv = lightcone_intersection(w, FourVector::event(7, 0, 0, 20), Branch::advanced);
    CHECK(adv.tau == doctest::Approx(27.0).epsilon(1e-12));
  }

  TEST_CASE("event on the worldline itself") {
    const auto w = static_worldline(FourVector::event(1, 2, 3, 0), -5.0, 5.0, 0.5);
    const auto hit = lightcone_intersection(w, FourVector::event(1, 2, 3, 2.25), Branch::retarded);
    CHECK(hit.tau == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(hit.residual == 0.0);
  }

  TEST_CASE("uniform beta 0.5 matches an independent bisection") {
    const auto w = uniform_worldline(FourVector{}, 0.5, 0.0, 0.0, -40.0, 10.0, 0.1);
    const auto event = FourVector::event(10, 0, 0, 0);
    const auto hit = lightcone_intersection(w, event, Branch::retarded);
    const double oracle = bisect_uniform_retarded(0.5, event);
    CHECK(std::abs(hit.tau - oracle) < 1e-10);
    CHECK(std::abs(hit.tau - (-20.0 / std::sqrt(4.0 / 3.0))) < 1e-10);
    CHECK(std::abs(residual_at(w, hit.tau, event)) < 1e-10);
    CHECK(w.position_at(hit.tau).t < event.t);
  }

  TEST_CASE("insufficient history is distinct from numerical failure") {
    const auto w = static_worldline(FourVector{}, -5.0, 0.0, 0.1);
    CHECK_THROWS_AS(lightcone_intersection(w, FourVector::event(10, 0, 0, 0), Branch::retarded),
                    InsufficientHistoryError);
    CHECK_THROWS_AS(lightcone_intersection(w, FourVector::event(1, 0, 0, 0), Branch::advanced),
                    InsufficientHistoryError);
  }

  TEST_CASE("property: residual small and retarded root strictly in the past") {
    testing::Gen g(4242);
    const auto circ = circular_worldline(2.0, 0.35, -60.0, 60.0, 0.05);
    const auto hyp = hyperbolic_worldline(0.2, -8.0, 8.0, 0.02);
    for (int i = 0; i < 300; ++i) {
      const auto event = FourVector::event(g.uniform(-8, 8), g.uniform(-8, 8), g.uniform(-8, 8),
                                           g.uniform(-20, 20));
      const auto hit = lightcone_intersection(circ, event, Branch::retarded);
      CHECK(std::abs(hit.residual) < 1e-10);
      CHECK(std::abs(residual_at(circ, hit.tau, event)) < 1e-10);
      CHECK(circ.position_at(hit.tau).t < event.t);

      const auto adv = lightcone_intersection(circ, event, Branch::advanced);
      CHECK(std::abs(adv.residual) < 1e-10);
      CHECK(circ.position_at(adv.tau).t > event.t);
    }
    for (int i = 0; i < 100; ++i) {
      const auto event = FourVector::event(g.uniform(6, 9), g.uniform(-1, 1), 0.0, g.uniform(-1, 1));
      const auto hit = lightcone_intersection(hyp, event, Branch::retarded);
      CHECK(std::abs(hit.residual) < 1e-10);
      CHECK(hyp.position_at(hit.tau).t < event.t);
    }
  }
}

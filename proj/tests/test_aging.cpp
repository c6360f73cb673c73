// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "relab/aging.hpp"
#include "relab/errors.hpp"

using namespace relab;
using namespace relab::aging;

namespace {
// Minkowski interval from the origin, positive for timelike chart points.
double interval(const ChartPoint& p) { return p.t * p.t - p.x * p.x; }
}  // namespace

TEST_SUITE("aging") {
  TEST_CASE("gamma") {
    CHECK(aging::gamma(0.0) == 1.0);
    CHECK(aging::gamma(0.6) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(aging::gamma(0.8) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(aging::gamma(1.0), DomainError);
  }

  TEST_CASE("scenario validation") {
    CHECK_THROWS_AS(chart_conventional({0.0, 0.5}), DomainError);
    CHECK_THROWS_AS(chart_conventional({3.0, 0.0}), DomainError);
    CHECK_THROWS_AS(chart_equal_aging({3.0, 1.0}), DomainError);
    CHECK_THROWS_AS(chart_equal_aging({-1.0, 0.5}), DomainError);
  }

  TEST_CASE("conventional construction") {
    auto r = chart_conventional({3.0, 0.6});
    CHECK(r.turnaround.x == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(r.turnaround.t == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(std::abs(r.tau_traveler_one_way - 4.0) < 1e-12);
    CHECK(std::abs(r.tau_home_one_way - 5.0) < 1e-12);
    CHECK(r.round_trip_ratio == doctest::Approx(0.8));

    r = chart_conventional({4.0, 0.8});
    CHECK(std::abs(r.tau_traveler_one_way - 3.0) < 1e-12);
    CHECK(std::abs(r.tau_home_one_way - 5.0) < 1e-12);

    r = chart_conventional({1.0, 1e-6});
    CHECK(std::abs(r.round_trip_ratio - 1.0) < 1e-11);
  }

  TEST_CASE("equal-aging construction") {
    auto r = chart_equal_aging({3.0, 0.6});
    CHECK(r.axis_intersection.x == doctest::Approx(3.75).epsilon(1e-15));
    CHECK(r.axis_intersection.t == doctest::Approx(2.25).epsilon(1e-15));
    CHECK(r.turnaround.x == doctest::Approx(3.75).epsilon(1e-15));
    CHECK(r.turnaround.t == doctest::Approx(6.25).epsilon(1e-15));
    CHECK(std::abs(r.tau_traveler_one_way - 5.0) < 1e-12);
    CHECK(std::abs(r.tau_home_one_way - 5.0) < 1e-12);
    CHECK(r.tau_traveler_round_trip() == doctest::Approx(10.0));

    r = chart_equal_aging({4.0, 0.8});
    CHECK(std::abs(r.tau_traveler_one_way - 5.0) < 1e-12);
    CHECK(std::abs(r.tau_home_one_way - 5.0) < 1e-12);
  }

  TEST_CASE("property: grid identities for both constructions") {
    for (int i = 1; i <= 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const TwinScenario s{0.5 * i, 0.01 + 0.98 * j / 19.0};
        const auto eq = chart_equal_aging(s);
        const auto conv = chart_conventional(s);
        CHECK(std::abs(eq.tau_traveler_one_way - eq.tau_home_one_way) <= 1e-12 * std::max(1.0, eq.tau_home_one_way));
        CHECK(std::abs(conv.tau_traveler_one_way * aging::gamma(s.beta) - conv.tau_home_one_way) <=
              1e-12 * std::max(1.0, conv.tau_home_one_way));
        // The axis intersection keeps proper distance D from the origin.
        CHECK(std::abs(-interval(eq.axis_intersection) - s.distance * s.distance) <
              1e-12 * std::max(1.0, s.distance * s.distance * aging::gamma(s.beta) * aging::gamma(s.beta)));
      }
    }
  }

  TEST_CASE("constructions agree in the slow limit") {
    const TwinScenario s{2.0, 1e-4};
    const double a = chart_conventional(s).tau_traveler_one_way;
    const double b = chart_equal_aging(s).tau_traveler_one_way;
    CHECK(std::abs(a - b) / b < 1e-6);
  }

  TEST_CASE("chart contents for D=3, beta=0.6") {
    const auto chart = emit_chart({3.0, 0.6}, 101);
    CHECK(chart.curves.size() == 8);
    for (const auto& c : chart.curves) CHECK(c.points.size() >= 2);

    for (const auto& p : chart.curve("pylon_worldline_fixed").points) CHECK(p.x == 3.0);
    for (const auto& p : chart.curve("pylon_worldline_primed").points) CHECK(std::abs(p.x - 3.75) < 1e-12);
    for (const auto& p : chart.curve("proper_length_isocline").points)
      CHECK(std::abs(p.x * p.x - p.t * p.t - 9.0) < 1e-9);
    for (const auto& p : chart.curve("proper_time_isocline_conventional").points)
      CHECK(std::abs(interval(p) - 16.0) < 1e-9);
    for (const auto& p : chart.curve("proper_time_isocline_equal_aging").points)
      CHECK(std::abs(interval(p) - 25.0) < 1e-9);
    for (const auto& p : chart.curve("traveler_worldline").points) CHECK(std::abs(p.x - 0.6 * p.t) < 1e-12);

    const auto& length = chart.curve("proper_length_isocline").points;
    CHECK(length.front().x == doctest::Approx(3.0));
    CHECK(length.front().t == 0.0);

    CHECK(chart.event("axis_intersection").point.x == doctest::Approx(3.75));
    CHECK(chart.event("axis_intersection").point.t == doctest::Approx(2.25));
    CHECK(chart.event("turnaround_conventional").point.t == doctest::Approx(5.0));
    CHECK(chart.event("turnaround_equal_aging").point.t == doctest::Approx(6.25));

    // Each time isocline ends on its turnaround event.
    const auto& conv = chart.curve("proper_time_isocline_conventional").points.back();
    CHECK(conv.x == doctest::Approx(3.0));
    CHECK(conv.t == doctest::Approx(5.0));
    const auto& eq = chart.curve("proper_time_isocline_equal_aging").points.back();
    CHECK(eq.x == doctest::Approx(3.75));
    CHECK(eq.t == doctest::Approx(6.25));

    CHECK_THROWS_AS(chart.curve("nope"), OutOfRangeError);
    CHECK_THROWS_AS(emit_chart({3.0, 0.6}, 1), DomainError);
  }

  TEST_CASE("chart at beta 0 collapses the primed objects") {
    const auto chart = emit_chart({3.0, 0.0}, 11);
    CHECK(chart.curves.size() == 8);
    const auto& fixed = chart.curve("fixed_axes").points;
    const auto& primed = chart.curve("primed_axes").points;
    REQUIRE(fixed.size() == primed.size());
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      CHECK(fixed[i].x == primed[i].x);
      CHECK(fixed[i].t == primed[i].t);
    }
    for (const auto& p : chart.curve("pylon_worldline_primed").points) CHECK(p.x == 3.0);
  }

  TEST_CASE("decay experiment") {
    CHECK(decay_experiment({0.3, 2.0, 1.7, 1.0}, DecayHypothesis::equal_aging) == 1.0);
    CHECK(decay_experiment({1.0, 1.0, 1.0, 1.0}, DecayHypothesis::conventional) == 1.0);
    const double r = decay_experiment({1.0, 1.0, 1.0 + 1e-12, 1.0}, DecayHypothesis::conventional);
    CHECK(std::abs((r - 1.0) - 1e-12) < 1e-13);
    CHECK(decay_experiment({2.0, 3.0, 1.5, 1.0}, DecayHypothesis::conventional) ==
          doctest::Approx(std::exp(6.0 * (1.0 - 1.0 / 1.5))));
    CHECK_THROWS_AS(decay_experiment({0.0, 1.0, 1.0, 1.0}, DecayHypothesis::conventional), DomainError);
    CHECK_THROWS_AS(decay_experiment({1.0, 1.0, 0.9, 1.0}, DecayHypothesis::conventional), DomainError);
  }

  TEST_CASE("property: conventional decay ratio is at least one") {
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const DecayScenario d{0.1 + 0.2 * i, 1.0, 1.0 + 0.05 * j, 1.0};
        const double r = decay_experiment(d, DecayHypothesis::conventional);
        CHECK(r >= 1.0);
        CHECK((r == 1.0) == (j == 0));
      }
    }
  }

  TEST_CASE("decay sensitivity") {
    auto s = decay_sensitivity({1.0, 1.0, 1.0, 1e6});
    CHECK(s.absolute_difference == 0.0);
    CHECK_FALSE(s.detectable);

    s = decay_sensitivity({1.0, 1.0, 1.0 + 1e-12, 1e20});
    CHECK(std::abs(s.absolute_difference - std::exp(-1.0) * 1e-12) < 1e-3 * std::exp(-1.0) * 1e-12);
    CHECK(std::abs(s.relative_difference - 1e-12) < 1e-13);
    CHECK(s.survival_slope == doctest::Approx(std::exp(-1.0)));
    CHECK_FALSE(s.detectable);
    CHECK_FALSE(s.detectability_note.empty());
  }

  TEST_CASE("property: sensitivity grows with the dilation argument") {
    double previous = -1.0;
    for (int k = 0; k < 40; ++k) {
      const double x = 1e-9 * std::pow(1.5, k);  // lambda t (gamma - 1)
      const auto s = decay_sensitivity({0.5, 2.0, 1.0 + x, 1.0});
      CHECK(s.absolute_difference > previous);
      previous = s.absolute_difference;
    }
  }
}

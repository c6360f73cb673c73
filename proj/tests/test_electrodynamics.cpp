// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "relab/electrodynamics.hpp"
#include "relab/errors.hpp"

using namespace relab;
using namespace relab::ed;

namespace {

Particle static_charge(double x, double charge, double tau_begin, double tau_end, double h = 0.1) {
  return {1.0, charge, static_worldline(FourVector::event(x, 0, 0, 0), tau_begin, tau_end, h)};
}

FieldTensor coulomb(double charge, const FourVector& r) {
  const double d = r.spatial_norm();
  const double k = charge / (d * d * d);
  FieldTensor f;
  for (std::size_t i = 1; i < 4; ++i) {
    f.f[i][0] = k * r[i];
    f.f[0][i] = -k * r[i];
  }
  return f;
}

double max_diff(const FieldTensor& a, const FieldTensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m = std::max(m, std::abs(a.f[i][j] - b.f[i][j]));
  return m;
}

SystemState head_on(double d, double charge, double beta, double h, double tau_end) {
  IntegrationConfig c;
  c.dtau = h;
  c.tau_end = tau_end;
  Particle a{1.0, charge, uniform_worldline(FourVector::event(-d / 2, 0, 0, 0), beta, 0, 0, -3 * d, 0, h)};
  Particle b{1.0, charge, uniform_worldline(FourVector::event(d / 2, 0, 0, 0), -beta, 0, 0, -3 * d, 0, h)};
  return make_state({a, b}, c);
}

}  // namespace

TEST_SUITE("electrodynamics") {
  TEST_CASE("static charge gives the Coulomb field") {
    const auto src = static_charge(0.0, 1.0, -50.0, 50.0);
    for (double d : {1.0, 3.0, 10.0}) {
      const auto f = retarded_field(src, FourVector::event(d, 0, 0, 20));
      const auto e = f.electric();
      const auto b = f.magnetic();
      CHECK(std::hypot(e[0], e[1], e[2]) == doctest::Approx(1.0 / (d * d)).epsilon(1e-12));
      CHECK(e[0] > 0.0);
      CHECK(std::hypot(b[0], b[1], b[2]) < 1e-15);
      CHECK(f.antisymmetry_error() == 0.0);
    }
  }

  TEST_CASE("uniformly moving charge equals the boosted Coulomb field") {
    const double beta = 0.5;
    const Particle src{1.0, 2.0, uniform_worldline(FourVector{}, beta, 0, 0, -100.0, 20.0, 0.1)};
    const auto to_rest = boost(beta);
    const auto to_lab = to_rest.inverse();
    testing::Gen g(55);
    for (int i = 0; i < 50; ++i) {
      const auto event = FourVector::event(g.uniform(-6, 6), g.uniform(-6, 6), g.uniform(-6, 6), g.uniform(-5, 5));
      const auto rest_event = to_rest.apply(event);
      FieldTensor expected;
      expected.f = to_lab.apply(coulomb(2.0, rest_event).f);
      const auto got = retarded_field(src, event);
      CHECK(max_diff(got, expected) < 1e-8);
    }
  }

  TEST_CASE("property: field antisymmetry and force orthogonality on accelerated sources") {
    const Particle src{1.0, -1.5, circular_worldline(1.0, 0.6, -80.0, 20.0, 0.05)};
    const Particle probe{2.0, 0.7, {}};
    testing::Gen g(101);
    for (int i = 0; i < 200; ++i) {
      const auto event = FourVector::event(g.uniform(-5, 5), g.uniform(-5, 5), g.uniform(-5, 5), g.uniform(-10, 10));
      const auto f = retarded_field(src, event);
      CHECK(f.antisymmetry_error() < 1e-12);
      const auto v = g.velocity(0.95);
      const auto a = lorentz_force(f, probe, v);
      CHECK(std::abs(minkowski_dot(a, v)) < 1e-10 * std::max(1.0, f.max_abs() * v.t * v.t));
    }
  }

  TEST_CASE("lorentz force") {
    const Particle p{2.0, 3.0, {}};
    const auto zero = lorentz_force(FieldTensor{}, p, FourVector{1, 0, 0, 0});
    CHECK(zero == FourVector{0, 0, 0, 0});

    const auto src = static_charge(0.0, 5.0, -50.0, 50.0);
    const auto f = retarded_field(src, FourVector::event(4, 0, 0, 10));
    const auto a = lorentz_force(f, p, FourVector{1, 0, 0, 0});
    CHECK(a.x == doctest::Approx(5.0 * 3.0 / (2.0 * 16.0)).epsilon(1e-12));
    CHECK(std::abs(a.t) < 1e-16);

    testing::Gen g(9);
    for (int i = 0; i < 500; ++i) {
      FieldTensor r;
      r.f = g.antisymmetric(3.0);
      const auto v = g.velocity(0.99);
      CHECK(std::abs(minkowski_dot(lorentz_force(r, p, v), v)) < 1e-10 * v.t * v.t);
    }
  }

  TEST_CASE("closed-form field reports missing history and singular geometry") {
    const auto src = static_charge(0.0, 1.0, -5.0, 5.0);
    CHECK_THROWS_AS(retarded_field(src, FourVector::event(20, 0, 0, 0)), InsufficientHistoryError);
    CHECK_THROWS_AS(point_charge_field(1.0, FourVector{}, FourVector{1, 0, 0, 0}, FourVector{}),
                    SingularityError);
  }

  TEST_CASE("regularized oracle converges to the static Coulomb field") {
    const auto src = static_charge(0.0, 1.0, -60.0, 20.0);
    const auto event = FourVector::event(10, 0, 0, 0);
    double previous = 1.0;
    for (double eps : {0.1, 0.05, 0.025}) {
      const auto f = regularized_field_oracle(src, event, eps);
      const double err = std::abs(f.electric()[0] - 0.01);
      CHECK(err < previous);
      previous = err;
      CHECK(f.antisymmetry_error() == 0.0);
    }
    CHECK(previous < 1e-7);
  }

  TEST_CASE("regularized oracle agrees with the closed form on three worldlines") {
    struct Case {
      Particle source;
      FourVector event;
    };
    const Case cases[] = {
        {static_charge(0.0, 1.0, -50.0, 5.0), FourVector::event(10, 0, 0, 3)},
        {{1.0, 1.0, uniform_worldline(FourVector{}, 0.5, 0, 0, -50.0, 5.0, 0.1)}, FourVector::event(3, 4, 0, 2)},
        {{1.0, 1.0, circular_worldline(1.0, 0.1, -100.0, 5.0, 0.1)}, FourVector::event(5, 2, 1, 3)},
    };
    for (const auto& c : cases) {
      const auto closed = retarded_field(c.source, c.event);
      double previous = 1.0;
      for (double eps : {4e-3, 2e-3, 1e-3}) {
        const double err = max_diff(regularized_field_oracle(c.source, c.event, eps), closed);
        CHECK(err < previous);
        previous = err;
      }
      CHECK(previous < 1e-4 * closed.max_abs());
    }
  }

  TEST_CASE("oracle input validation") {
    const auto src = static_charge(0.0, 1.0, -50.0, 5.0);
    CHECK_THROWS_AS(regularized_field_oracle(src, FourVector::event(10, 0, 0, 3), 0.0), DomainError);
    CHECK_THROWS_AS(regularized_field_oracle(src, FourVector::event(100, 0, 0, 0), 1e-3),
                    InsufficientHistoryError);
  }

  TEST_CASE("initial data checks") {
    IntegrationConfig c;
    auto ok = make_state({static_charge(-5, 1, -20, 0), static_charge(5, 1, -20, 0)}, c);
    auto r = check_initial_data(ok);
    CHECK(r.valid);
    REQUIRE(r.requirements.size() == 2);
    CHECK(r.requirements[0].required_span == doctest::Approx(10.0));
    CHECK(r.requirements[0].available_span == doctest::Approx(20.0));

    auto shallow = make_state({static_charge(-5, 1, -5, 0), static_charge(5, 1, -5, 0)}, c);
    r = check_initial_data(shallow);
    CHECK_FALSE(r.valid);
    CHECK(r.message.find("deficit") != std::string::npos);

    auto marginal = make_state({static_charge(-5, 1, -10, 0), static_charge(5, 1, -10, 0)}, c);
    CHECK_FALSE(check_initial_data(marginal).valid);

    CHECK_THROWS_AS(make_state({static_charge(-5, 1, -10, 0), static_charge(5, 1, -10, 1)}, c), DomainError);
    c.dtau = 0.0;
    CHECK_THROWS_AS(make_state({static_charge(-5, 1, -10, 0)}, c), DomainError);
  }

  TEST_CASE("free particle advances uniformly") {
    IntegrationConfig c;
    c.dtau = 0.25;
    c.tau_end = 10.0;
    Particle p{1.0, 1.0, uniform_worldline(FourVector::event(1, 2, 3, 0), 0.3, 0.4, -0.1, -1.0, 0.0, 0.25)};
    const auto u = four_velocity(0.3, 0.4, -0.1);
    auto s = step(make_state({p}, c));
    CHECK(s.tau_now == 0.25);
    const auto& b = s.particles[0].history.back();
    CHECK(std::abs(b.position.x - (1 + 0.25 * u.x)) < 1e-15);
    CHECK(std::abs(b.position.t - 0.25 * u.t) < 1e-15);

    c.dtau = 1e-3;
    Particle q{1.0, 1.0, uniform_worldline(FourVector{}, 0.6, 0.0, 0.0, -1.0, 0.0, 1e-3)};
    c.tau_end = 10.0;
    const auto res = integrate(make_state({q}, c));
    CHECK(res.status == IntegrationStatus::completed);
    CHECK(res.diagnostics.steps.size() == 10000);
    CHECK(res.diagnostics.max_normalization_drift() < 1e-9);
    CHECK(res.state.particles[0].history.back().position.x == doctest::Approx(10.0 * 0.75).epsilon(1e-12));
  }

  TEST_CASE("symmetric head-on approach stays mirror symmetric") {
    const auto res = integrate(head_on(4.0, 1.0, 0.3, 0.02, 12.0));
    CHECK(res.status == IntegrationStatus::completed);
    const auto& a = res.state.particles[0].history.samples();
    const auto& b = res.state.particles[1].history.samples();
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      worst = std::max({worst, std::abs(a[i].position.x + b[i].position.x),
                        std::abs(a[i].position.t - b[i].position.t), std::abs(a[i].tau - b[i].tau)});
    }
    CHECK(worst < 1e-9);
    // The like charges turn around: they end up receding.
    CHECK(b.back().velocity.x > 0.0);
  }

  TEST_CASE("common proper time after every step") {
    auto s = head_on(5.0, 1.0, 0.1, 0.05, 1.0);
    Diagnostics d;
    for (int i = 0; i < 30; ++i) {
      step_in_place(s, d);
      for (const auto& p : s.particles) CHECK(p.history.tau_max() == s.tau_now);
    }
    CHECK(d.steps.size() == 30);
  }

  TEST_CASE("renormalization keeps velocities on the mass shell") {
    auto s = head_on(3.0, 2.0, 0.4, 0.01, 8.0);
    s.config.renormalize_velocity = true;
    const auto res = integrate(std::move(s));
    CHECK(res.status == IntegrationStatus::completed);
    CHECK(res.diagnostics.max_normalization_drift() < 1e-12);
  }

  TEST_CASE("close approach aborts with a collision status") {
    IntegrationConfig c;
    c.dtau = 0.01;
    c.tau_end = 100.0;
    c.min_separation = 1.0;
    auto s = make_state({static_charge(-1.5, 1.0, -10, 0, 0.01), static_charge(1.5, -1.0, -10, 0, 0.01)}, c);
    const auto res = integrate(std::move(s));
    CHECK(res.status == IntegrationStatus::collision);
    CHECK(res.state.tau_now < 100.0);
    CHECK(res.diagnostics.min_separation() < 1.5);
  }

  TEST_CASE("fourth-order self-convergence before breaking points reach the partner") {
    // The history's acceleration jumps at tau = 0 and the partner only sees
    // that after roughly one light-crossing time, so stop before it does.
    auto end_position = [](double h) {
      return integrate(head_on(2.0, 1.0, 0.0, h, 1.5)).state.particles[1].history.back().position;
    };
    const auto ref = end_position(0.1 / 8);
    const auto coarse = end_position(0.1), fine = end_position(0.05);
    const double e1 = std::hypot(coarse.x - ref.x, coarse.t - ref.t);
    const double e2 = std::hypot(fine.x - ref.x, fine.t - ref.t);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
  }

  TEST_CASE("fokker force on static charges equals the retarded force") {
    const std::vector<Particle> pair{static_charge(-5, 2.0, -50, 50), static_charge(5, 3.0, -50, 50)};
    for (std::size_t j : {0u, 1u}) {
      const auto f = fokker_force(pair, j, 0.0);
      CHECK(std::abs(f.retarded.x - f.advanced.x) < 1e-14);
      CHECK(std::abs(f.total.x - f.retarded.x) < 1e-14);
      CHECK(std::abs(f.total.x) == doctest::Approx(6.0 / 100.0).epsilon(1e-12));
    }
    CHECK(fokker_force(pair, 1, 0.0).total.x > 0.0);
    CHECK_THROWS_AS(fokker_force(pair, 0, 45.0), InsufficientHistoryError);
  }

  TEST_CASE("fokker force on a moving pair keeps orthogonality") {
    const std::vector<Particle> pair{
        {1.0, 1.0, uniform_worldline(FourVector::event(-3, 0, 0, 0), 0.2, 0.1, 0, -60, 60, 0.1)},
        {1.0, -1.0, uniform_worldline(FourVector::event(3, 1, 0, 0), -0.3, 0, 0.2, -60, 60, 0.1)}};
    const auto f = fokker_force(pair, 0, 0.0);
    const auto v = pair[0].history.interpolate(0.0).velocity;
    CHECK(std::abs(minkowski_dot(f.retarded, v)) < 1e-12);
    CHECK(std::abs(minkowski_dot(f.advanced, v)) < 1e-12);
    CHECK(std::abs(minkowski_dot(f.total, v)) < 1e-12);
    // A uniformly moving source has identical retarded and advanced fields.
    CHECK(std::abs(f.total.x - f.retarded.x) < 1e-12);

    const std::vector<Particle> orbiting{
        pair[0], {1.0, -1.0, circular_worldline(1.0, 0.5, -60, 60, 0.05)}};
    const auto g = fokker_force(orbiting, 0, 0.0);
    CHECK(std::abs(minkowski_dot(g.total, v)) < 1e-12);
    const FourVector diff = g.total - g.retarded;
    CHECK(std::abs(diff.x) + std::abs(diff.y) > 1e-4);
  }

  TEST_CASE("naive time reversal does not retrace the trajectory") {
    const auto report = time_arrow_demo(head_on(4.0, 1.0, 0.3, 0.05, 10.0), 8.0);
    CHECK(report.status == IntegrationStatus::completed);
    CHECK(report.max_position_deviation > 1e-6);
  }
}

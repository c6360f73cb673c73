// SPDX-License-Identifier: Apache-2.0
#include "relab/electrodynamics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "relab/errors.hpp"

namespace relab::ed {

double FieldTensor::antisymmetry_error() const {
  double e = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) e = std::max(e, std::abs(f[i][j] + f[j][i]));
  return e;
}

double FieldTensor::max_abs() const {
  double m = 0.0;
  for (const auto& row : f)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

FieldTensor& FieldTensor::operator+=(const FieldTensor& o) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) f[i][j] += o.f[i][j];
  return *this;
}

FieldTensor operator*(double s, FieldTensor a) {
  for (auto& row : a.f)
    for (double& v : row) v *= s;
  return a;
}

FieldTensor point_charge_field(double charge, const FourVector& separation,
                               const FourVector& velocity, const FourVector& acceleration) {
  const double ru = minkowski_dot(separation, velocity);
  const double ra = minkowski_dot(separation, acceleration);
  if (!(std::abs(ru) > 1e-14 * std::abs(separation.t) * velocity.t) || separation.t == 0.0) {
    throw SingularityError("point_charge_field: R.u vanishes (coincident event or luminal source)");
  }
  FieldTensor out;
  const double w_acc = 1.0 / ru;
  const double w_vel = (1.0 - ra) / (ru * ru);
  const double scale = charge / std::abs(ru);
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = mu + 1; nu < 4; ++nu) {
      const double g = w_acc * (separation[mu] * acceleration[nu] - separation[nu] * acceleration[mu]) +
                       w_vel * (separation[mu] * velocity[nu] - separation[nu] * velocity[mu]);
      out.f[mu][nu] = scale * g;
      out.f[nu][mu] = -scale * g;
    }
  }
  return out;
}

FieldEvaluation field_from(const Particle& source, const FourVector& event, Branch branch,
                           double lightcone_tolerance) {
  const LightconeHit hit = lightcone_intersection(source.history, event, branch, lightcone_tolerance);
  const WorldlineSample s = source.history.interpolate(hit.tau);
  FieldEvaluation out;
  out.field = point_charge_field(source.charge, event - s.position, s.velocity, s.acceleration);
  out.source_tau = hit.tau;
  out.lightcone_residual = hit.residual;
  return out;
}

FieldTensor retarded_field(const Particle& source, const FourVector& event,
                           double lightcone_tolerance) {
  return field_from(source, event, Branch::retarded, lightcone_tolerance).field;
}

// Regularized-delta oracle ---------------------------------------------------

namespace {

struct OracleContext {
  const Worldline* w = nullptr;
  FourVector event;
  double epsilon = 0.0;
  double fd_step = 0.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  std::size_t mu = 0;
  std::size_t nu = 0;
};

double interval(const OracleContext& c, double tau) {
  const FourVector d = c.event - c.w->position_at(tau);
  return minkowski_dot(d, d);
}

// Component (mu, nu) of N / (R.u) with N = R u^T - u R^T, from interpolated positions.
double bivector_ratio(const OracleContext& c, double tau) {
  const auto [p, dp] = c.w->position_and_derivative(tau);
  const FourVector u = dp * (1.0 / std::sqrt(minkowski_dot(dp, dp)));
  const FourVector r = c.event - p;
  return (r[c.mu] * u[c.nu] - r[c.nu] * u[c.mu]) / minkowski_dot(r, u);
}

double oracle_integrand(double tau, void* params) {
  const auto& c = *static_cast<const OracleContext*>(params);
  const double f = interval(c, tau);
  const double z = f / c.epsilon;
  const double delta = std::exp(-0.5 * z * z) / (c.epsilon * std::sqrt(2.0 * std::numbers::pi));
  if (delta == 0.0) return 0.0;
  // Central difference, shifted inward near the ends of the usable range.
  const double h = c.fd_step;
  const double lo = std::max(c.tau_lo, tau - h);
  const double hi = std::min(c.tau_hi, tau + h);
  const double g = (bivector_ratio(c, hi) - bivector_ratio(c, lo)) / (hi - lo);
  return 2.0 * delta * g;
}

}  // namespace

FieldTensor regularized_field_oracle(const Particle& source, const FourVector& event,
                                     double epsilon, int quadrature_points) {
  if (!(epsilon > 0.0)) throw DomainError("regularized_field_oracle: epsilon must be > 0");
  if (quadrature_points < 1) throw DomainError("regularized_field_oracle: quadrature_points >= 1");
  const Worldline& w = source.history;
  const auto samples = w.samples();
  if (samples.size() < 2) throw InsufficientHistoryError("regularized_field_oracle: history too short");

  OracleContext ctx;
  ctx.w = &w;
  ctx.event = event;
  ctx.epsilon = epsilon;

  // Upper limit: where the source reaches the event's coordinate time.
  double tau_upper = w.tau_max();
  if (samples.back().position.t > event.t) {
    std::size_t k = 0;
    while (k + 1 < samples.size() && samples[k + 1].position.t <= event.t) ++k;
    double a = samples[k].tau, b = samples[std::min(k + 1, samples.size() - 1)].tau;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      const double m = 0.5 * (a + b);
      (w.position_at(m).t <= event.t ? a : b) = m;
    }
    tau_upper = a;
  }

  // Coarse scan for the sign change of the interval (timelike past -> spacelike).
  std::size_t cross = samples.size();
  for (std::size_t i = 0; i + 1 < samples.size() && samples[i + 1].tau <= tau_upper; ++i) {
    if (interval(ctx, samples[i].tau) > 0.0 && interval(ctx, samples[i + 1].tau) <= 0.0) {
      cross = i;
    }
  }
  if (cross == samples.size()) {
    // The crossing may sit in the partial segment ending at tau_upper.
    const auto it = std::upper_bound(samples.begin(), samples.end(), tau_upper,
                                     [](double t, const WorldlineSample& s) { return t < s.tau; });
    const std::size_t i = it == samples.begin() ? 0 : static_cast<std::size_t>(it - samples.begin()) - 1;
    if (interval(ctx, samples[i].tau) > 0.0 && interval(ctx, tau_upper) <= 0.0) cross = i;
  }
  if (cross == samples.size()) {
    throw InsufficientHistoryError("regularized_field_oracle: no retarded crossing in history");
  }
  double a = samples[cross].tau;
  double b = std::min(samples[cross + 1].tau, tau_upper);
  for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    (interval(ctx, m) > 0.0 ? a : b) = m;
  }
  const double center = 0.5 * (a + b);

  const double spacing = samples[cross + 1].tau - samples[cross].tau;
  const double probe = 1e-3 * spacing;
  const double slope = std::abs(interval(ctx, std::min(center + probe, tau_upper)) -
                                interval(ctx, std::max(center - probe, w.tau_min()))) /
                       (std::min(center + probe, tau_upper) - std::max(center - probe, w.tau_min()));
  if (!(slope > 0.0)) throw OracleFailure("regularized_field_oracle: degenerate interval slope");
  const double sigma = epsilon / slope;
  const double half_width = 12.0 * sigma;
  ctx.tau_lo = std::max(w.tau_min(), center - half_width);
  ctx.tau_hi = std::min(tau_upper, center + half_width);
  if (center - half_width < w.tau_min()) {
    throw InsufficientHistoryError("regularized_field_oracle: history does not cover the delta window");
  }
  ctx.fd_step = std::min(1e-5 * spacing, 0.01 * sigma);

  // Components that vanish identically cannot meet a relative tolerance, so
  // the absolute one is tied to the Coulomb scale at the crossing.
  const double reach = (event - w.position_at(center)).spatial_norm();
  const double scale = 1.0 / std::max(reach * reach, 1e-300);
  const double epsabs = 1e-9 * scale;

  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(static_cast<std::size_t>(quadrature_points)),
      &gsl_integration_workspace_free);

  FieldTensor out;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = mu + 1; nu < 4; ++nu) {
      ctx.mu = mu;
      ctx.nu = nu;
      gsl_function fn{&oracle_integrand, &ctx};
      double value = 0.0, abserr = 0.0;
      const int status = gsl_integration_qag(&fn, ctx.tau_lo, ctx.tau_hi, epsabs, 1e-10,
                                             static_cast<std::size_t>(quadrature_points),
                                             GSL_INTEG_GAUSS61, ws.get(), &value, &abserr);
      // Finite-difference noise can trip the roundoff detector well below
      // any accuracy that matters here.
      const bool tolerable = status == GSL_EROUND && abserr <= 1e-7 * scale;
      if (status != GSL_SUCCESS && !tolerable) {
        gsl_set_error_handler(previous);
        std::ostringstream os;
        os << "regularized_field_oracle: quadrature failed for component (" << mu << "," << nu
           << "): " << gsl_strerror(status) << ", abserr " << abserr;
        throw OracleFailure(os.str());
      }
      out.f[mu][nu] = source.charge * value;
      out.f[nu][mu] = -source.charge * value;
    }
  }
  gsl_set_error_handler(previous);
  return out;
}

FourVector four_force(const FieldTensor& f, double charge, const FourVector& velocity) {
  const FourVector v = lower(velocity);
  FourVector out;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    double acc = 0.0;
    for (std::size_t nu = 0; nu < 4; ++nu) acc += f.f[mu][nu] * v[nu];
    out[mu] = charge * acc;
  }
  return out;
}

FourVector lorentz_force(const FieldTensor& f, const Particle& p, const FourVector& velocity) {
  return four_force(f, p.charge / p.mass, velocity);
}

// Integration ---------------------------------------------------------------

void validate(const IntegrationConfig& c) {
  if (!(c.dtau > 0.0)) throw DomainError("integration config: dtau must be > 0");
  if (!(c.min_separation > 0.0)) throw DomainError("integration config: min_separation must be > 0");
  if (!(c.lightcone_tolerance > 0.0)) {
    throw DomainError("integration config: lightcone_tolerance must be > 0");
  }
  if (!std::isfinite(c.tau_end)) throw DomainError("integration config: tau_end must be finite");
}

SystemState make_state(std::vector<Particle> particles, const IntegrationConfig& config) {
  validate(config);
  if (particles.empty()) throw DomainError("make_state: no particles");
  SystemState s;
  s.config = config;
  s.tau_now = particles.front().history.tau_max();
  for (const auto& p : particles) {
    if (!(p.mass > 0.0)) throw DomainError("make_state: mass must be > 0");
    if (p.history.empty()) throw DomainError("make_state: empty history");
    if (p.history.tau_max() != s.tau_now) {
      throw DomainError("make_state: all histories must end at the same proper time");
    }
  }
  s.particles = std::move(particles);
  return s;
}

InitialDataReport check_initial_data(const SystemState& s) {
  InitialDataReport r;
  r.valid = true;
  std::ostringstream msg;
  msg.precision(12);
  for (std::size_t j = 0; j < s.particles.size(); ++j) {
    const Worldline& target = s.particles[j].history;
    if (target.empty() || target.tau_max() != s.tau_now) {
      r.valid = false;
      msg << "particle " << j << " history does not end at tau_now; ";
      continue;
    }
    const FourVector event = target.back().position;
    for (std::size_t k = 0; k < s.particles.size(); ++k) {
      if (k == j) continue;
      const Worldline& src = s.particles[k].history;
      HistoryRequirement req;
      req.target = j;
      req.source = k;
      const FourVector d = event - src.front().position;
      req.available_span = d.t;
      req.required_span = d.spatial_norm();
      req.ok = req.available_span > req.required_span;
      // The source must also not lag behind the event's past light cone.
      const FourVector d_last = event - src.back().position;
      const bool end_ok = d_last.t - d_last.spatial_norm() <= 0.0;
      if (!req.ok) {
        msg << "particle " << k << " history spans " << req.available_span
            << " but particle " << j << " needs more than " << req.required_span << " (deficit "
            << req.required_span - req.available_span << "); ";
      }
      if (!end_ok) {
        req.ok = false;
        msg << "particle " << k << " history ends before the retarded point of particle " << j
            << "; ";
      }
      r.valid = r.valid && req.ok;
      r.requirements.push_back(req);
    }
  }
  r.message = r.valid ? "initial data spans every delay" : msg.str();
  return r;
}

double Diagnostics::max_normalization_drift() const {
  double m = 0.0;
  for (const auto& s : steps)
    for (double d : s.normalization_drift) m = std::max(m, d);
  return m;
}
double Diagnostics::max_orthogonality() const {
  double m = 0.0;
  for (const auto& s : steps) m = std::max(m, s.orthogonality);
  return m;
}
double Diagnostics::max_lightcone_residual() const {
  double m = 0.0;
  for (const auto& s : steps) m = std::max(m, s.lightcone_residual);
  return m;
}
double Diagnostics::min_separation() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : steps) m = std::min(m, s.min_separation);
  return m;
}

double separation(const Particle& a, const Particle& b, double tau) {
  return (a.history.position_at(tau) - b.history.position_at(tau)).spatial_norm();
}

namespace {

struct StageResult {
  std::vector<FourVector> acceleration;
  double orthogonality = 0.0;
  double residual = 0.0;
};

StageResult accelerations(const SystemState& s, const std::vector<FourVector>& x,
                          const std::vector<FourVector>& u) {
  StageResult out;
  const std::size_t n = s.particles.size();
  out.acceleration.assign(n, FourVector{0.0, 0.0, 0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    FieldTensor total;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const FieldEvaluation fe =
          field_from(s.particles[k], x[j], Branch::retarded, s.config.lightcone_tolerance);
      out.residual = std::max(out.residual, std::abs(fe.lightcone_residual));
      total += fe.field;
    }
    out.acceleration[j] = lorentz_force(total, s.particles[j], u[j]);
    out.orthogonality =
        std::max(out.orthogonality, std::abs(minkowski_dot(out.acceleration[j], u[j])));
  }
  return out;
}

double min_pair_distance(const std::vector<FourVector>& x) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) m = std::min(m, (x[i] - x[j]).spatial_norm());
  return m;
}

}  // namespace

void step_in_place(SystemState& s, Diagnostics& diag) {
  const std::size_t n = s.particles.size();
  // The final step is shortened to land on tau_end.
  const double remaining = s.config.tau_end - s.tau_now;
  const double h = remaining > 0.0 ? std::min(s.config.dtau, remaining) : s.config.dtau;
  std::vector<FourVector> x0(n), u0(n);
  for (std::size_t j = 0; j < n; ++j) {
    x0[j] = s.particles[j].history.back().position;
    u0[j] = s.particles[j].history.back().velocity;
  }
  const double sep0 = min_pair_distance(x0);
  if (sep0 < s.config.min_separation) {
    std::ostringstream os;
    os << "collision: separation " << sep0 << " below " << s.config.min_separation << " at tau "
       << s.tau_now;
    throw CollisionError(os.str());
  }

  double ortho = 0.0, residual = 0.0;
  auto track = [&](const StageResult& r) {
    ortho = std::max(ortho, r.orthogonality);
    residual = std::max(residual, r.residual);
  };

  auto axpy = [&](const std::vector<FourVector>& base, double c, const std::vector<FourVector>& d) {
    std::vector<FourVector> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = base[j] + c * d[j];
    return out;
  };

  const StageResult k1 = accelerations(s, x0, u0);
  track(k1);
  const auto x2 = axpy(x0, 0.5 * h, u0);
  const auto u2 = axpy(u0, 0.5 * h, k1.acceleration);
  const StageResult k2 = accelerations(s, x2, u2);
  track(k2);
  const auto x3 = axpy(x0, 0.5 * h, u2);
  const auto u3 = axpy(u0, 0.5 * h, k2.acceleration);
  const StageResult k3 = accelerations(s, x3, u3);
  track(k3);
  const auto x4 = axpy(x0, h, u3);
  const auto u4 = axpy(u0, h, k3.acceleration);
  const StageResult k4 = accelerations(s, x4, u4);
  track(k4);

  std::vector<FourVector> x1(n), u1(n);
  for (std::size_t j = 0; j < n; ++j) {
    x1[j] = x0[j] + (h / 6.0) * (u0[j] + 2.0 * u2[j] + 2.0 * u3[j] + u4[j]);
    u1[j] = u0[j] + (h / 6.0) * (k1.acceleration[j] + 2.0 * k2.acceleration[j] +
                                 2.0 * k3.acceleration[j] + k4.acceleration[j]);
    if (s.config.renormalize_velocity) {
      u1[j] *= 1.0 / std::sqrt(minkowski_dot(u1[j], u1[j]));
    }
  }
  // Acceleration at the new point, read against the pre-step histories.
  const StageResult k_end = accelerations(s, x1, u1);
  track(k_end);

  // Commit: everything above may throw, nothing below does except append validation.
  const double tau_new = s.tau_now + h;
  StepRecord rec;
  rec.tau = tau_new;
  rec.orthogonality = ortho;
  rec.lightcone_residual = residual;
  rec.min_separation = min_pair_distance(x1);
  for (std::size_t j = 0; j < n; ++j) {
    s.particles[j].history.set_back_acceleration(k1.acceleration[j]);
    WorldlineSample sample;
    sample.tau = tau_new;
    sample.position = x1[j];
    sample.velocity = u1[j];
    sample.acceleration = k_end.acceleration[j];
    s.particles[j].history.append(sample);
    rec.normalization_drift.push_back(std::abs(minkowski_dot(u1[j], u1[j]) - 1.0));
  }
  s.tau_now = tau_new;
  diag.steps.push_back(std::move(rec));
}

SystemState step(SystemState s) {
  Diagnostics d;
  step_in_place(s, d);
  return s;
}

std::string_view to_string(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::completed: return "completed";
    case IntegrationStatus::collision: return "collision";
    case IntegrationStatus::insufficient_history: return "insufficient_history";
    case IntegrationStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

IntegrationResult integrate(SystemState s) {
  IntegrationResult r;
  r.tau_start = s.tau_now;
  r.state = std::move(s);
  const double tol = 1e-12 * std::max(1.0, std::abs(r.state.config.tau_end));
  try {
    while (r.state.tau_now < r.state.config.tau_end - tol) {
      step_in_place(r.state, r.diagnostics);
    }
  } catch (const CollisionError& e) {
    r.status = IntegrationStatus::collision;
    r.message = e.what();
  } catch (const InsufficientHistoryError& e) {
    r.status = IntegrationStatus::insufficient_history;
    r.message = e.what();
  } catch (const NumericalError& e) {
    r.status = IntegrationStatus::numerical_failure;
    r.message = e.what();
  } catch (const SingularityError& e) {
    r.status = IntegrationStatus::numerical_failure;
    r.message = e.what();
  }
  if (r.status == IntegrationStatus::completed) r.message = "reached tau_end";
  return r;
}

FokkerForce fokker_force(const std::vector<Particle>& particles, std::size_t j, double tau) {
  if (j >= particles.size()) throw DomainError("fokker_force: particle index out of range");
  const Particle& target = particles[j];
  if (!target.history.contains(tau)) {
    throw InsufficientHistoryError("fokker_force: tau outside the target worldline");
  }
  const WorldlineSample here = target.history.interpolate(tau);
  FokkerForce out;
  for (std::size_t k = 0; k < particles.size(); ++k) {
    if (k == j) continue;
    const FieldTensor ret = field_from(particles[k], here.position, Branch::retarded).field;
    const FieldTensor adv = field_from(particles[k], here.position, Branch::advanced).field;
    out.retarded += four_force(ret, target.charge, here.velocity);
    out.advanced += four_force(adv, target.charge, here.velocity);
  }
  out.total = 0.5 * (out.retarded + out.advanced);
  return out;
}

Worldline time_reversed(const Worldline& w, double tau_from, double tau_to) {
  std::vector<WorldlineSample> out;
  const auto samples = w.samples();
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    if (it->tau < tau_from || it->tau > tau_to) continue;
    WorldlineSample r;
    r.tau = -it->tau;
    r.position = FourVector{-it->position.t, it->position.x, it->position.y, it->position.z};
    r.velocity = FourVector{it->velocity.t, -it->velocity.x, -it->velocity.y, -it->velocity.z};
    r.acceleration =
        FourVector{-it->acceleration.t, it->acceleration.x, it->acceleration.y, it->acceleration.z};
    out.push_back(r);
  }
  return Worldline(std::move(out), w.order());
}

TimeArrowReport time_arrow_demo(const SystemState& initial, double history_span) {
  TimeArrowReport report;
  report.span = history_span;
  const IntegrationResult fwd = integrate(initial);
  report.status = fwd.status;
  if (fwd.status != IntegrationStatus::completed) return report;

  const double t_start = fwd.tau_start;
  const double t_end = fwd.state.tau_now;
  const double cut = t_end - history_span;
  if (!(cut > t_start)) {
    throw DomainError("time_arrow_demo: history span must be shorter than the integrated span");
  }
  std::vector<Particle> reversed;
  for (const auto& p : fwd.state.particles) {
    reversed.push_back({p.mass, p.charge, time_reversed(p.history, cut, t_end)});
  }
  IntegrationConfig cfg = initial.config;
  cfg.tau_end = -t_start;
  const IntegrationResult back = integrate(make_state(std::move(reversed), cfg));
  report.status = back.status;

  for (std::size_t j = 0; j < back.state.particles.size(); ++j) {
    const Worldline& w = back.state.particles[j].history;
    const Worldline& f = fwd.state.particles[j].history;
    for (const auto& s : w.samples()) {
      if (s.tau <= -cut) continue;
      if (!f.contains(-s.tau)) continue;
      const FourVector p = f.position_at(-s.tau);
      const FourVector mirrored{-p.t, p.x, p.y, p.z};
      const FourVector d = s.position - mirrored;
      const double dev = std::max(std::abs(d.t), d.spatial_norm());
      report.max_position_deviation = std::max(report.max_position_deviation, dev);
    }
  }
  return report;
}

}  // namespace relab::ed

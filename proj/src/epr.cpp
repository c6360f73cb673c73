// SPDX-License-Identifier: Apache-2.0
#include "relab/epr.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "relab/errors.hpp"

namespace relab::epr {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Products per hidden index used by both estimators.
struct PairMoments {
  double amplitude_product = 0.0;  // a1 a2
  double intensity_product = 0.0;  // |E1|^2 |E2|^2
};

PairMoments moments(int n, double theta1, double theta2) {
  const auto f = project_fields(emit_pair(n), theta1, theta2);
  const double i1 = f.e1[0] * f.e1[0] + f.e1[1] * f.e1[1];
  const double i2 = f.e2[0] * f.e2[0] + f.e2[1] * f.e2[1];
  return {f.a1 * f.a2, i1 * i2};
}

// Running sums for one chunk of sampled trials.
struct ChunkSums {
  std::uint64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SourceEmission emit_pair(int n) {
  if (n != 0 && n != 1) {
    throw DomainError("emit_pair: hidden index must be 0 or 1, got " + std::to_string(n));
  }
  // Exact values at the two admissible angles; cos(pi/2) is not exactly zero in floating point.
  const double c = n == 0 ? 1.0 : 0.0;
  const double s = n == 0 ? 0.0 : 1.0;
  return {n, {c, s}, {s, -c}};
}

PolarizerMatrix PolarizerMatrix::operator*(const PolarizerMatrix& o) const {
  PolarizerMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
  return r;
}

PolarizerMatrix polarizer_matrix(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {{{{c * c, c * s}, {s * c, s * s}}}};
}

ProjectedFields project_fields(const SourceEmission& emission, double theta1, double theta2) {
  ProjectedFields f;
  f.e1 = polarizer_matrix(theta1).apply(emission.s1);
  f.e2 = polarizer_matrix(theta2).apply(emission.s2);
  f.a1 = emission.s1[0] * std::cos(theta1) + emission.s1[1] * std::sin(theta1);
  f.a2 = emission.s2[0] * std::cos(theta2) + emission.s2[1] * std::sin(theta2);
  return f;
}

double coincidence_analytic(double theta1, double theta2) {
  const double s = std::sin(theta1 - theta2);
  return 0.5 * s * s;
}

std::string_view to_string(Estimator e) {
  return e == Estimator::intensity ? "intensity" : "amplitude";
}
std::string_view to_string(Mode m) { return m == Mode::exact ? "exact" : "sampled"; }

Estimator parse_estimator(std::string_view s) {
  if (s == "intensity") return Estimator::intensity;
  if (s == "amplitude") return Estimator::amplitude;
  throw DomainError("unknown estimator '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s) {
  if (s == "exact") return Mode::exact;
  if (s == "sampled") return Mode::sampled;
  throw DomainError("unknown mode '" + std::string(s) + "'");
}

CoincidenceEstimate estimate_coincidence(double theta1, double theta2,
                                         const EstimateOptions& options) {
  const std::array<PairMoments, 2> per_n = {moments(0, theta1, theta2),
                                            moments(1, theta1, theta2)};
  auto pick = [&](int n) {
    return options.estimator == Estimator::amplitude ? per_n[n].amplitude_product
                                                     : per_n[n].intensity_product;
  };

  CoincidenceEstimate est;
  est.estimator = options.estimator;

  double mean = 0.0;
  double mean_se = 0.0;
  if (options.mode == Mode::exact) {
    mean = 0.5 * (pick(0) + pick(1));
    est.exact = true;
    est.trials = 2;
  } else {
    if (options.trials == 0) throw DomainError("estimate_coincidence: sampled mode needs trials >= 1");
    const unsigned chunks = std::max(1u, options.chunks);
    std::vector<ChunkSums> sums(chunks);
    for (unsigned c = 0; c < chunks; ++c) {
      const std::uint64_t begin = options.trials * c / chunks;
      const std::uint64_t end = options.trials * (c + 1) / chunks;
      std::mt19937_64 rng(chunks == 1 ? options.seed : derive_seed(options.seed, c));
      ChunkSums& s = sums[c];
      for (std::uint64_t i = begin; i < end; ++i) {
        const double x = pick(static_cast<int>(rng() >> 63));
        s.sum += x;
        s.sum_sq += x * x;
        ++s.count;
      }
    }
    ChunkSums total;
    for (const auto& s : sums) {
      total.count += s.count;
      total.sum += s.sum;
      total.sum_sq += s.sum_sq;
    }
    const double nn = static_cast<double>(total.count);
    mean = total.sum / nn;
    const double var = total.count > 1
                           ? std::max(0.0, (total.sum_sq - nn * mean * mean) / (nn - 1.0))
                           : 0.0;
    mean_se = std::sqrt(var / nn);
    est.exact = false;
    est.trials = total.count;
  }

  if (options.estimator == Estimator::amplitude) {
    est.value = 2.0 * mean * mean;
    // Delta method for 2 m^2.
    est.standard_error = 4.0 * std::abs(mean) * mean_se;
  } else {
    est.value = mean;
    est.standard_error = mean_se;
  }
  return est;
}

double correlation_function(double a, double b) {
  const double pp = coincidence_analytic(a, b);
  const double mm = coincidence_analytic(a + kHalfPi, b + kHalfPi);
  const double pm = coincidence_analytic(a, b + kHalfPi);
  const double mp = coincidence_analytic(a + kHalfPi, b);
  return pp + mm - pm - mp;
}

double correlation_sampled(double a, double b, std::uint64_t trials, std::uint64_t seed) {
  EstimateOptions opt;
  opt.estimator = Estimator::amplitude;
  opt.mode = Mode::sampled;
  opt.trials = trials;
  auto rate = [&](double x, double y, std::uint64_t k) {
    opt.seed = derive_seed(seed, k);
    return estimate_coincidence(x, y, opt).value;
  };
  return rate(a, b, 0) + rate(a + kHalfPi, b + kHalfPi, 1) - rate(a, b + kHalfPi, 2) -
         rate(a + kHalfPi, b, 3);
}

double chsh(double a, double a_prime, double b, double b_prime) {
  return std::abs(correlation_function(a, b) - correlation_function(a, b_prime)) +
         std::abs(correlation_function(a_prime, b) + correlation_function(a_prime, b_prime));
}

double chsh_sampled(double a, double a_prime, double b, double b_prime, std::uint64_t trials,
                    std::uint64_t seed) {
  auto corr = [&](double x, double y, std::uint64_t k) {
    return correlation_sampled(x, y, trials, derive_seed(seed, k));
  };
  return std::abs(corr(a, b, 0) - corr(a, b_prime, 1)) +
         std::abs(corr(a_prime, b, 2) + corr(a_prime, b_prime, 3));
}

DecompositionReport bayes_decomposition(double theta1, double theta2) {
  DecompositionReport r;
  r.factorization_holds = true;
  for (int n = 0; n < 2; ++n) {
    const auto f = project_fields(emit_pair(n), theta1, theta2);
    const double pa = f.e1[0] * f.e1[0] + f.e1[1] * f.e1[1];
    const double pb = f.e2[0] * f.e2[0] + f.e2[1] * f.e2[1];
    // Joint detection given n: the product of the two transmitted intensities.
    const double joint = pa * pb;
    r.p_lambda[n] = 0.5;
    r.p_a_given_lambda[n] = pa;
    r.p_b_given_lambda[n] = pb;
    // Conditioning on a zero-probability detection is undefined; fall back to P(b|n).
    r.p_b_given_a_lambda[n] = pa > 0.0 ? joint / pa : pb;
    if (std::abs(r.p_b_given_a_lambda[n] - pb) > 1e-12) r.factorization_holds = false;
    r.marginal += r.p_lambda[n] * r.p_a_given_lambda[n] * r.p_b_given_a_lambda[n];
  }
  r.deviation_from_analytic = std::abs(r.marginal - coincidence_analytic(theta1, theta2));
  return r;
}

}  // namespace relab::epr

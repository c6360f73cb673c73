// SPDX-License-Identifier: Apache-2.0
//
// Classical local model of EPR polarization correlations. A source emits a
// pair of orthogonally polarized amplitudes selected by a hidden index n in
// {0, 1}; each station projects its signal through a linear polarizer.
// All angles are radians.
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace relab::epr {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

struct SourceEmission {
  int n = 0;
  Vec2 s1{};
  Vec2 s2{};
};

/// S1 = (cos(n pi/2), sin(n pi/2)), S2 = (sin(n pi/2), -cos(n pi/2)).
/// Throws DomainError unless n is 0 or 1.
SourceEmission emit_pair(int n);

/// Rank-one projector onto the polarizer axis (cos t, sin t).
struct PolarizerMatrix {
  Mat2 m{};

  Vec2 apply(const Vec2& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
  }
  double trace() const { return m[0][0] + m[1][1]; }
  PolarizerMatrix operator*(const PolarizerMatrix& o) const;
};

PolarizerMatrix polarizer_matrix(double theta);

struct ProjectedFields {
  Vec2 e1{};
  Vec2 e2{};
  /// Signed transmitted amplitudes along each polarizer axis.
  double a1 = 0.0;
  double a2 = 0.0;
};

/// E1 = P(theta1) S1, E2 = P(theta2) S2.
ProjectedFields project_fields(const SourceEmission& emission, double theta1, double theta2);

/// 1/2 sin^2(theta1 - theta2).
double coincidence_analytic(double theta1, double theta2);

enum class Estimator { intensity, amplitude };
enum class Mode { exact, sampled };

std::string_view to_string(Estimator e);
std::string_view to_string(Mode m);
Estimator parse_estimator(std::string_view s);
Mode parse_mode(std::string_view s);

struct CoincidenceEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  Estimator estimator = Estimator::amplitude;
  bool exact = true;
};

struct EstimateOptions {
  Estimator estimator = Estimator::amplitude;
  Mode mode = Mode::exact;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  /// Sampled trials are split into this many chunks, each with its own
  /// seed derived from (seed, chunk index). Results depend on (seed, chunks)
  /// only, never on scheduling.
  unsigned chunks = 1;
};

/// Second-order cross-correlation estimate of the coincidence probability.
///
///   intensity: mean over n of |E1|^2 |E2|^2
///   amplitude: 2 (mean over n of a1 a2)^2
///
/// Exact mode enumerates n with weight 1/2 each; sampled mode draws n from a
/// seeded mt19937_64. Throws DomainError for zero trials in sampled mode.
CoincidenceEstimate estimate_coincidence(double theta1, double theta2,
                                         const EstimateOptions& options);

/// E(a, b) = P++ + P-- - P+- - P-+ = -cos 2(a - b).
double correlation_function(double a, double b);

/// Correlation assembled from four sampled amplitude-estimator coincidence
/// rates (outcome "-" is the orthogonal analyzer setting).
double correlation_sampled(double a, double b, std::uint64_t trials, std::uint64_t seed);

/// S = |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')|.
double chsh(double a, double a_prime, double b, double b_prime);

/// CHSH combination over sampled correlations; each of the 16 coincidence
/// rates gets its own derived seed.
double chsh_sampled(double a, double a_prime, double b, double b_prime, std::uint64_t trials,
                    std::uint64_t seed);

/// Audit of the hidden-variable decomposition P(a,b) = sum_n P(n) P(a|n) P(b|a,n)
/// against the factorized form P(b|a,n) = P(b|n).
struct DecompositionReport {
  std::array<double, 2> p_lambda{};
  std::array<double, 2> p_a_given_lambda{};
  std::array<double, 2> p_b_given_lambda{};
  std::array<double, 2> p_b_given_a_lambda{};
  double marginal = 0.0;
  bool factorization_holds = false;
  double deviation_from_analytic = 0.0;
};

DecompositionReport bayes_decomposition(double theta1, double theta2);

/// Derives a per-cell seed from a base seed and a cell index (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace relab::epr

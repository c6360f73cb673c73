// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace relab {

/// Argument outside an operation's mathematical domain (|beta| >= 1, n not in {0,1}, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Query outside the sampled range of a worldline. Interpolation never extrapolates.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A light-cone intersection lies outside the recorded history.
class InsufficientHistoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The retarded denominator R.u vanished; the source approaches the event at light speed.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two particles came closer than the configured minimum separation.
class CollisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure (root refinement) failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The regularized-delta quadrature oracle did not converge.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace relab

// SPDX-License-Identifier: Apache-2.0
//
// Spacetime primitives in natural units (c = 1) with metric signature (+,-,-,-).
// Index 0 is the time component; indices 1..3 are x, y, z.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace relab {

struct FourVector {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t mu) const {
    switch (mu) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }
  constexpr double& operator[](std::size_t mu) {
    switch (mu) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }

  /// Event helper taking spatial components first, matching the (x, y, z, t) file layout.
  static constexpr FourVector event(double x, double y, double z, double t) { return {t, x, y, z}; }

  constexpr FourVector& operator+=(const FourVector& o) {
    t += o.t; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr FourVector& operator-=(const FourVector& o) {
    t -= o.t; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr FourVector& operator*=(double s) {
    t *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  bool is_finite() const {
    return std::isfinite(t) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  /// Euclidean norm of the spatial part.
  double spatial_norm() const { return std::sqrt(x * x + y * y + z * z); }

  friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

constexpr FourVector operator+(FourVector a, const FourVector& b) { return a += b; }
constexpr FourVector operator-(FourVector a, const FourVector& b) { return a -= b; }
constexpr FourVector operator*(double s, FourVector v) { return v *= s; }
constexpr FourVector operator*(FourVector v, double s) { return v *= s; }
constexpr FourVector operator-(const FourVector& v) { return {-v.t, -v.x, -v.y, -v.z}; }

/// u_t v_t - u_x v_x - u_y v_y - u_z v_z
constexpr double minkowski_dot(const FourVector& u, const FourVector& v) {
  return u.t * v.t - u.x * v.x - u.y * v.y - u.z * v.z;
}

/// Lowers the index of a contravariant vector: (t, -x, -y, -z).
constexpr FourVector lower(const FourVector& v) { return {v.t, -v.x, -v.y, -v.z}; }

/// Four-velocity of a particle moving with 3-velocity (bx, by, bz); |b| < 1.
FourVector four_velocity(double bx, double by, double bz);

enum class Axis { x = 1, y = 2, z = 3 };

using Matrix4 = std::array<std::array<double, 4>, 4>;

Matrix4 identity4();
Matrix4 multiply(const Matrix4& a, const Matrix4& b);
Matrix4 transpose(const Matrix4& m);
double determinant(const Matrix4& m);

/// Proper Lorentz transformation acting on contravariant components.
class LorentzMap {
 public:
  LorentzMap() : m_(identity4()) {}
  explicit LorentzMap(const Matrix4& m) : m_(m) {}

  const Matrix4& matrix() const { return m_; }
  double operator()(std::size_t row, std::size_t col) const { return m_[row][col]; }

  FourVector apply(const FourVector& v) const;

  /// Transforms a rank-2 contravariant tensor: M T M^T.
  Matrix4 apply(const Matrix4& tensor) const;

  LorentzMap inverse() const;
  double det() const { return determinant(m_); }

  friend LorentzMap operator*(const LorentzMap& a, const LorentzMap& b) {
    return LorentzMap(multiply(a.m_, b.m_));
  }

 private:
  Matrix4 m_;
};

/// Standard boost into a frame moving with velocity beta along `axis`:
/// x' = gamma (x - beta t), t' = gamma (t - beta x). Throws DomainError for |beta| >= 1.
LorentzMap boost(double beta, Axis axis = Axis::x);

/// (1 - beta^2)^(-1/2); throws DomainError for |beta| >= 1.
double lorentz_gamma(double beta);

}  // namespace relab

// SPDX-License-Identifier: Apache-2.0
#include "relab/minkowski.hpp"

#include <string>

#include "relab/errors.hpp"

namespace relab {

double lorentz_gamma(double beta) {
  if (!(std::abs(beta) < 1.0)) {
    throw DomainError("lorentz_gamma: |beta| must be < 1, got " + std::to_string(beta));
  }
  return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

FourVector four_velocity(double bx, double by, double bz) {
  const double b2 = bx * bx + by * by + bz * bz;
  if (!(b2 < 1.0)) {
    throw DomainError("four_velocity: speed must be < 1");
  }
  const double g = 1.0 / std::sqrt(1.0 - b2);
  return {g, g * bx, g * by, g * bz};
}

Matrix4 identity4() {
  Matrix4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

Matrix4 multiply(const Matrix4& a, const Matrix4& b) {
  Matrix4 r{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      const double aik = a[i][k];
      for (std::size_t j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
    }
  }
  return r;
}

Matrix4 transpose(const Matrix4& m) {
  Matrix4 r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r[i][j] = m[j][i];
  return r;
}

double determinant(const Matrix4& m) {
  // Laplace expansion along the first row using 3x3 minors.
  auto minor3 = [&](std::size_t skip_col) {
    std::array<std::array<double, 3>, 3> s{};
    for (std::size_t i = 1; i < 4; ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        if (j == skip_col) continue;
        s[i - 1][c++] = m[i][j];
      }
    }
    return s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
           s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
           s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
  };
  double det = 0.0;
  double sign = 1.0;
  for (std::size_t j = 0; j < 4; ++j) {
    det += sign * m[0][j] * minor3(j);
    sign = -sign;
  }
  return det;
}

FourVector LorentzMap::apply(const FourVector& v) const {
  FourVector r;
  for (std::size_t i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < 4; ++j) acc += m_[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

Matrix4 LorentzMap::apply(const Matrix4& tensor) const {
  return multiply(multiply(m_, tensor), transpose(m_));
}

LorentzMap LorentzMap::inverse() const {
  // For any Lorentz map, M^-1 = eta M^T eta.
  Matrix4 r = transpose(m_);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double si = i == 0 ? 1.0 : -1.0;
      const double sj = j == 0 ? 1.0 : -1.0;
      r[i][j] *= si * sj;
    }
  }
  return LorentzMap(r);
}

LorentzMap boost(double beta, Axis axis) {
  const double g = lorentz_gamma(beta);
  Matrix4 m = identity4();
  const auto k = static_cast<std::size_t>(axis);
  m[0][0] = g;
  m[k][k] = g;
  m[0][k] = -g * beta;
  m[k][0] = -g * beta;
  return LorentzMap(m);
}

}  // namespace relab

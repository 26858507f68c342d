// Copyright 2026 The adiabatic-pointer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace adiabatic {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;

inline constexpr cplx kI{0.0, 1.0};

/// Unit vector with polar angle `theta` from +z and azimuth `phi`.
inline Vec3 direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Normalized two-component spinor in the sigma_z basis (up, down).
class SpinState {
 public:
  SpinState(cplx up, cplx down, const Tolerances& tol = {}) : amps_(up, down) {
    const double n = amps_.squaredNorm();
    if (!(std::abs(n - 1.0) <= tol.spin_norm))
      fail(ErrorKind::InvalidState, "spin state norm " + std::to_string(n) + " differs from 1");
  }

  /// Rescales (up, down) to unit norm; rejects the zero vector.
  static SpinState normalized(cplx up, cplx down) {
    const double n = std::sqrt(std::norm(up) + std::norm(down));
    if (!(n > 0.0)) fail(ErrorKind::InvalidState, "cannot normalize a zero spinor");
    return SpinState(up / n, down / n);
  }

  static SpinState from_vector(const Eigen::Vector2cd& v) { return normalized(v(0), v(1)); }

  cplx up() const { return amps_(0); }
  cplx down() const { return amps_(1); }
  const Eigen::Vector2cd& vector() const { return amps_; }

  /// |<this|other>|^2
  double overlap(const SpinState& other) const { return std::norm(amps_.dot(other.amps_)); }

 private:
  Eigen::Vector2cd amps_;
};

/// +1 eigenstate of sigma.n(theta, phi): (cos theta/2, e^{i phi} sin theta/2).
/// Angles outside [0, pi] x [0, 2 pi) are wrapped onto the same direction.
inline SpinState make_spin_state(double theta, double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > std::numbers::pi) {
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  return SpinState(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
}

/// Decomposition M = a0 * I + a . sigma of a Hermitian 2x2 matrix.
struct BlochForm {
  double a0 = 0.0;
  Vec3 a = Vec3::Zero();
};

/// Hermitian 2x2 operator on the spin factor, e.g. Q_S, H_S or sigma.n.
class SpinOperator {
 public:
  SpinOperator() : matrix_(Eigen::Matrix2cd::Zero()), label_("0") {}

  SpinOperator(const Eigen::Matrix2cd& m, std::string label, const Tolerances& tol = {})
      : matrix_(m), label_(std::move(label)) {
    if (!((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol.hermiticity))
      fail(ErrorKind::InvalidState, "spin operator '" + label_ + "' is not Hermitian");
  }

  static SpinOperator pauli_x() { return sigma_dot(Vec3::UnitX()); }
  static SpinOperator pauli_y() { return sigma_dot(Vec3::UnitY()); }
  static SpinOperator pauli_z() { return sigma_dot(Vec3::UnitZ()); }
  static SpinOperator identity() { return SpinOperator(Eigen::Matrix2cd::Identity(), "I"); }

  /// a0 * I + a . sigma
  static SpinOperator from_bloch(double a0, const Vec3& a, std::string label = "") {
    Eigen::Matrix2cd m;
    m << cplx(a0 + a.z(), 0.0), cplx(a.x(), -a.y()), cplx(a.x(), a.y()), cplx(a0 - a.z(), 0.0);
    if (label.empty()) label = "bloch";
    return SpinOperator(m, std::move(label));
  }

  /// sigma . n for a unit vector n.
  static SpinOperator sigma_dot(const Vec3& n) {
    if (!(std::abs(n.norm() - 1.0) <= 1e-12))
      fail(ErrorKind::InvalidState, "sigma.n requires a unit vector");
    return from_bloch(0.0, n,
                      "sigma.(" + std::to_string(n.x()) + "," + std::to_string(n.y()) + "," +
                          std::to_string(n.z()) + ")");
  }
  static SpinOperator sigma_dot(double theta, double phi) { return sigma_dot(direction(theta, phi)); }

  const Eigen::Matrix2cd& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }

  BlochForm bloch() const {
    BlochForm b;
    b.a0 = 0.5 * (matrix_(0, 0).real() + matrix_(1, 1).real());
    b.a = Vec3(matrix_(1, 0).real(), matrix_(1, 0).imag(),
               0.5 * (matrix_(0, 0).real() - matrix_(1, 1).real()));
    return b;
  }

  SpinOperator scaled(double factor) const {
    return SpinOperator(matrix_ * factor, std::to_string(factor) + "*" + label_);
  }
  SpinOperator operator+(const SpinOperator& other) const {
    return SpinOperator(matrix_ + other.matrix_, label_ + "+" + other.label_);
  }

  /// Ascending eigenvalues and the matching orthonormal eigenvectors (columns).
  std::pair<Eigen::Vector2d, Eigen::Matrix2cd> eigen() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(matrix_);
    return {solver.eigenvalues(), solver.eigenvectors()};
  }

  double commutator_norm(const SpinOperator& other) const {
    return (matrix_ * other.matrix_ - other.matrix_ * matrix_).norm();
  }

 private:
  Eigen::Matrix2cd matrix_;
  std::string label_;
};

/// exp(-i tau M) in closed form: e^{-i a0 tau} (cos(|a| tau) - i sin(|a| tau) a^.sigma).
inline Eigen::Matrix2cd evolution_operator(const BlochForm& b, double tau) {
  const double len = b.a.norm();
  const double c = std::cos(len * tau);
  const double s_over = len > 0.0 ? std::sin(len * tau) / len : tau;
  const cplx phase = std::polar(1.0, -b.a0 * tau);
  Eigen::Matrix2cd u;
  u << cplx(c, -s_over * b.a.z()), cplx(-s_over * b.a.y(), -s_over * b.a.x()),
      cplx(s_over * b.a.y(), -s_over * b.a.x()), cplx(c, s_over * b.a.z());
  return phase * u;
}

inline Eigen::Matrix2cd evolution_operator(const SpinOperator& m, double tau) {
  return evolution_operator(m.bloch(), tau);
}

/// <s|A|s>
inline double expectation(const SpinOperator& a, const SpinState& s) {
  return s.vector().dot(a.matrix() * s.vector()).real();
}

}  // namespace adiabatic

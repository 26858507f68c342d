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

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/quantum/composite.hpp"
#include "adiabatic_pointer/quantum/spin.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace adiabatic {

enum class Subsystem { Spin, Pointer };

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// The eigenvalue check runs up to kEigenCheckLimit; larger matrices come
  /// from partial traces of normalized states, which are PSD in Gram form.
  explicit DensityMatrix(Eigen::MatrixXcd rho, const Tolerances& tol = {})
      : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
      fail(ErrorKind::InvalidState, "density matrix must be square and non-empty");
    if (!((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() <= tol.hermiticity))
      fail(ErrorKind::InvalidState, "density matrix is not Hermitian");
    const double tr = rho_.trace().real();
    if (!(std::abs(tr - 1.0) <= tol.trace))
      fail(ErrorKind::InvalidState, "density matrix trace " + std::to_string(tr) + " != 1");
    if (rho_.rows() <= kEigenCheckLimit && !(eigenvalues().minCoeff() >= tol.eigenvalue_floor))
      fail(ErrorKind::InvalidState, "density matrix has a negative eigenvalue");
  }

  /// |s><s|
  static DensityMatrix pure(const SpinState& s) {
    return DensityMatrix(s.vector() * s.vector().adjoint());
  }

  static constexpr int kEigenCheckLimit = 256;

  int dimension() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  cplx operator()(int i, int j) const { return rho_(i, j); }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

 private:
  Eigen::MatrixXcd rho_;
};

/// Partial trace over the complementary factor. Round-off from the grid sum is
/// removed by symmetrizing and renormalizing the trace; the input state's own
/// norm invariant (1e-9) is the real accuracy bound.
inline DensityMatrix reduced_density(const CompositeState& psi, Subsystem keep) {
  const double dr = psi.grid().spacing();
  const auto& up = psi.component(0);
  const auto& dn = psi.component(1);
  Eigen::MatrixXcd rho;
  if (keep == Subsystem::Spin) {
    rho.resize(2, 2);
    rho(0, 0) = up.squaredNorm() * dr;
    rho(1, 1) = dn.squaredNorm() * dr;
    rho(0, 1) = dn.dot(up) * dr;  // sum_k up_k conj(dn_k)
    rho(1, 0) = std::conj(rho(0, 1));
  } else {
    rho = (up * up.adjoint() + dn * dn.adjoint()) * dr;
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

/// Tr rho^2
inline double purity(const DensityMatrix& rho) { return rho.matrix().cwiseAbs2().sum(); }

/// 1 - Tr rho^2
inline double linear_entropy(const DensityMatrix& rho) { return 1.0 - purity(rho); }

/// <nu|rho|nu>, clamped to [0, 1] against round-off.
inline double fidelity_to(const DensityMatrix& rho, const SpinState& nu) {
  if (rho.dimension() != 2)
    fail(ErrorKind::InvalidState, "fidelity_to needs a spin (2x2) density matrix");
  const double f = nu.vector().dot(rho.matrix() * nu.vector()).real();
  return std::clamp(f, 0.0, 1.0);
}

/// Ascending Schmidt weights of the spin/pointer cut (eigenvalues of the spin rho).
inline Eigen::Vector2d schmidt_weights(const CompositeState& psi) {
  Eigen::VectorXd ev = reduced_density(psi, Subsystem::Spin).eigenvalues();
  return {std::max(ev(0), 0.0), std::min(ev(1), 1.0)};
}

}  // namespace adiabatic

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
#include <utility>
#include <vector>

#include "adiabatic_pointer/dynamics/coupling.hpp"
#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/quantum/spin.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace adiabatic {

enum class Eigenstate { Ground, Excited };

/// H(t) = H_A(Q_A) + H_S + g(t) Q_A Q_S with hbar = 1.
///
/// H_A is a polynomial in Q_A, sum_j apparatus_coeffs[j] * Q_A^j, so it
/// commutes with Q_A; the default (empty) is H_A = 0.
struct HamiltonianSpec {
  SpinOperator system;    // H_S
  SpinOperator coupling;  // Q_S
  std::vector<double> apparatus_coeffs;
  CouplingProfile profile = CouplingProfile::square(1.0);

  /// E_A(q) = H_A evaluated on the Q_A eigenvalue q (Horner).
  double apparatus_energy(double q) const {
    double acc = 0.0;
    for (auto it = apparatus_coeffs.rbegin(); it != apparatus_coeffs.rend(); ++it)
      acc = acc * q + *it;
    return acc;
  }

  HamiltonianSpec with_total_time(double total_time) const {
    HamiltonianSpec out = *this;
    out.profile = profile.with_total_time(total_time);
    return out;
  }

  /// Every term of H flipped in sign; used for time-reversal checks.
  HamiltonianSpec negated() const {
    HamiltonianSpec out = *this;
    out.system = system.scaled(-1.0);
    out.coupling = coupling.scaled(-1.0);
    for (auto& c : out.apparatus_coeffs) c = -c;
    return out;
  }
};

inline double system_gap(const HamiltonianSpec& spec) {
  const auto [values, vectors] = spec.system.eigen();
  return values(1) - values(0);
}

/// Throws DegenerateSystem when the H_S gap is below tol.min_gap.
inline void require_nondegenerate(const HamiltonianSpec& spec, const Tolerances& tol = {}) {
  const double gap = system_gap(spec);
  if (!(gap >= tol.min_gap))
    fail(ErrorKind::DegenerateSystem,
         "H_S gap " + std::to_string(gap) + " is below " + std::to_string(tol.min_gap));
}

/// Chosen eigenstate of H_S (ground = lower eigenvalue).
inline SpinState system_eigenstate(const HamiltonianSpec& spec, Eigenstate which,
                                   const Tolerances& tol = {}) {
  require_nondegenerate(spec, tol);
  const auto [values, vectors] = spec.system.eigen();
  return SpinState::from_vector(vectors.col(which == Eigenstate::Ground ? 0 : 1));
}

struct EnergyPair {
  double exact = 0.0;
  double first_order = 0.0;
};

/// Tracked eigenvalue of H_A(a) + H_S + g(t) a Q_S for a Q_A eigenvalue `a`,
/// exact and to first order in the coupling:
///   first_order = E_A(a) + g(t) a <nu|Q_S|nu> + <nu|H_S|nu>.
/// The branch is the one continuously connected to the chosen eigenstate nu.
inline EnergyPair instantaneous_energies(const HamiltonianSpec& spec, double a, double t,
                                         Eigenstate which = Eigenstate::Ground,
                                         const Tolerances& tol = {}) {
  const SpinState nu = system_eigenstate(spec, which, tol);
  const double g = spec.profile.value(t);
  const double e_a = spec.apparatus_energy(a);
  const Eigen::Matrix2cd h = spec.system.matrix() + (g * a) * spec.coupling.matrix() +
                             e_a * Eigen::Matrix2cd::Identity();

  EnergyPair out;
  out.first_order = e_a + g * a * expectation(spec.coupling, nu) + expectation(spec.system, nu);
  const double scale = spec.system.matrix().norm() * spec.coupling.matrix().norm();
  if (spec.system.commutator_norm(spec.coupling) <= 1e-12 * std::max(scale, 1.0)) {
    // nu stays an exact eigenvector; eigenvalue ordering may cross, so read it off directly.
    out.exact = nu.vector().dot(h * nu.vector()).real();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h, Eigen::EigenvaluesOnly);
    out.exact = solver.eigenvalues()(which == Eigenstate::Ground ? 0 : 1);
  }
  return out;
}

}  // namespace adiabatic

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

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/quantum/pointer.hpp"
#include "adiabatic_pointer/quantum/spin.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace adiabatic {

/// Joint spin (x) pointer wavefunction: component(s)(k) is the amplitude for
/// spin index s (0 = up, 1 = down along z) at grid point k.
class CompositeState {
 public:
  CompositeState(PointerGrid grid, Eigen::VectorXcd up, Eigen::VectorXcd down,
                 const Tolerances& tol = {})
      : grid_(grid), components_{std::move(up), std::move(down)} {
    for (const auto& c : components_)
      if (c.size() != grid_.size())
        fail(ErrorKind::InvalidState, "composite component does not match the grid size");
    const double n = norm();
    if (!(std::abs(n - 1.0) <= tol.composite_norm))
      fail(ErrorKind::InvalidState,
           "composite state norm " + std::to_string(n) + " differs from 1");
  }

  const PointerGrid& grid() const { return grid_; }
  const Eigen::VectorXcd& component(int spin) const { return components_.at(spin); }

  /// sum_s sum_k |psi_s(k)|^2 dr
  double norm() const {
    return (components_[0].squaredNorm() + components_[1].squaredNorm()) * grid_.spacing();
  }

  /// Marginal |psi(r_k)|^2 dr over the pointer coordinate.
  Eigen::VectorXd position_probabilities() const {
    return (components_[0].cwiseAbs2() + components_[1].cwiseAbs2()) * grid_.spacing();
  }

 private:
  PointerGrid grid_;
  std::array<Eigen::VectorXcd, 2> components_;
};

/// amplitudes[s][k] = s[s] * p[k]
inline CompositeState tensor(const SpinState& s, const PointerState& p) {
  return CompositeState(p.grid(), s.up() * p.amplitudes(), s.down() * p.amplitudes());
}

inline double pointer_center(const CompositeState& psi) {
  return psi.position_probabilities().dot(psi.grid().positions());
}

inline double pointer_variance(const CompositeState& psi) {
  const Eigen::VectorXd w = psi.position_probabilities();
  const Eigen::VectorXd r = psi.grid().positions();
  const double mean = w.dot(r);
  return w.dot((r.array() - mean).square().matrix());
}

/// <psi| A (x) I |psi>
inline double expectation(const SpinOperator& a, const CompositeState& psi) {
  const auto& m = a.matrix();
  const auto& up = psi.component(0);
  const auto& dn = psi.component(1);
  const cplx acc = up.dot(m(0, 0) * up + m(0, 1) * dn) + dn.dot(m(1, 0) * up + m(1, 1) * dn);
  return acc.real() * psi.grid().spacing();
}

/// Probability mass inside [center - half_width, center + half_width].
inline double window_weight(const CompositeState& psi, double center, double half_width) {
  const Eigen::VectorXd w = psi.position_probabilities();
  double acc = 0.0;
  for (int k = 0; k < psi.grid().size(); ++k) {
    const double r = psi.grid().position(k);
    if (r >= center - half_width && r <= center + half_width) acc += w(k);
  }
  return acc;
}

}  // namespace adiabatic

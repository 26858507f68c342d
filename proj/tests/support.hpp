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
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "adiabatic_pointer/dynamics/hamiltonian.hpp"
#include "adiabatic_pointer/quantum/composite.hpp"
#include "adiabatic_pointer/quantum/pointer.hpp"
#include "adiabatic_pointer/quantum/spin.hpp"

// Hand-rolled generators for the property tests. Every generator takes the
// caller's engine so each test is reproducible from its seed.
namespace testing_support {

using namespace adiabatic;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(n(rng), n(rng), n(rng));
  } while (v.norm() < 1e-3);
  return v.normalized();
}

inline SpinState random_spin(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return SpinState::normalized({n(rng), n(rng)}, {n(rng), n(rng)});
}

inline SpinOperator random_operator(std::mt19937_64& rng, double scale = 1.0) {
  return SpinOperator::from_bloch(uniform(rng, -scale, scale), scale * uniform(rng, 0.2, 1.0) * random_unit(rng));
}

/// Gapped H_S, unit-norm Q_S, optional quadratic H_A.
inline HamiltonianSpec random_spec(std::mt19937_64& rng, double T, bool smooth = false,
                                   bool apparatus = false) {
  const SpinOperator h_s = SpinOperator::sigma_dot(random_unit(rng)).scaled(uniform(rng, 0.5, 1.5));
  const SpinOperator q_s = SpinOperator::sigma_dot(random_unit(rng));
  std::vector<double> coeffs;
  if (apparatus) coeffs = {0.0, uniform(rng, -0.1, 0.1), uniform(rng, 0.0, 0.02)};
  const CouplingProfile profile =
      smooth ? CouplingProfile::smooth(T, uniform(rng, 0.05, 0.25)) : CouplingProfile::square(T);
  return HamiltonianSpec{h_s, q_s, coeffs, profile};
}

/// A coarse grid with a wide packet, cheap enough for many randomized runs.
inline PointerState small_pointer(double center = 0.0, double width = 0.5, int points = 128) {
  return make_gaussian_pointer(PointerGrid(-10.0, 10.0, points), center, width);
}

/// Spin-pointer entangled state a|s1>|g(c1)> + b|s2>|g(c2)>, normalized.
inline CompositeState random_entangled(std::mt19937_64& rng, int points = 128) {
  const PointerGrid grid(-10.0, 10.0, points);
  const PointerState p1 = make_gaussian_pointer(grid, uniform(rng, -3.0, 0.0), uniform(rng, 0.3, 1.0));
  const PointerState p2 = make_gaussian_pointer(grid, uniform(rng, 0.0, 3.0), uniform(rng, 0.3, 1.0));
  const SpinState s1 = random_spin(rng);
  const SpinState s2 = random_spin(rng);
  const cplx a(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  const cplx b(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  Eigen::VectorXcd up = a * s1.up() * p1.amplitudes() + b * s2.up() * p2.amplitudes();
  Eigen::VectorXcd dn = a * s1.down() * p1.amplitudes() + b * s2.down() * p2.amplitudes();
  const double n = std::sqrt((up.squaredNorm() + dn.squaredNorm()) * grid.spacing());
  return CompositeState(grid, up / n, dn / n);
}

}  // namespace testing_support

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

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "adiabatic_pointer/quantum/composite.hpp"
#include "adiabatic_pointer/quantum/density.hpp"
#include "adiabatic_pointer/quantum/pointer.hpp"
#include "adiabatic_pointer/quantum/spin.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using namespace adiabatic;
using namespace testing_support;

TEST(Spin, SigmaDotHasUnitEigenvaluesForRandomAxes) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const SpinOperator op = SpinOperator::sigma_dot(random_unit(rng));
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(op.matrix());
    std::array<double, 2> ev{es.eigenvalues()(0).real(), es.eigenvalues()(1).real()};
    std::sort(ev.begin(), ev.end());
    EXPECT_NEAR(ev[0], -1.0, 1e-12);
    EXPECT_NEAR(ev[1], 1.0, 1e-12);
    EXPECT_NEAR(std::abs(es.eigenvalues()(0).imag()), 0.0, 1e-12);
  }
}

TEST(Spin, MakeSpinStateIsPlusEigenstate) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = uniform(rng, -7.0, 7.0);
    const double phi = uniform(rng, -7.0, 7.0);
    const SpinState s = make_spin_state(theta, phi);
    EXPECT_NEAR(s.vector().norm(), 1.0, 1e-12);
    EXPECT_NEAR(expectation(SpinOperator::sigma_dot(theta, phi), s), 1.0, 1e-12);
  }
}

TEST(Spin, FifteenDegreeStateHasExpectedAmplitudes) {
  const SpinState s = make_spin_state(std::numbers::pi / 6.0, 0.0);
  EXPECT_NEAR(s.up().real(), std::cos(std::numbers::pi / 12.0), 1e-15);
  EXPECT_NEAR(s.down().real(), std::sin(std::numbers::pi / 12.0), 1e-15);
}

TEST(Spin, RejectsNonUnitAxisAndNonHermitianMatrix) {
  EXPECT_THROW(SpinOperator::sigma_dot(Vec3(1.0, 1.0, 0.0)), Error);
  Eigen::Matrix2cd m;
  m << 1.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 1.0;
  EXPECT_THROW(SpinOperator(m, "bad"), Error);
  EXPECT_THROW(SpinState::normalized(0.0, 0.0), Error);
}

TEST(Spin, EvolutionOperatorMatchesDiagonalization) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const SpinOperator op = random_operator(rng, 3.0);
    const double tau = uniform(rng, -5.0, 5.0);
    const Eigen::Matrix2cd u = evolution_operator(op, tau);
    EXPECT_LT((u - oracle::expm(op.matrix(), tau)).norm(), 1e-12);
    EXPECT_LT((u * u.adjoint() - Eigen::Matrix2cd::Identity()).norm(), 1e-13);
  }
}

TEST(Pointer, GridValidation) {
  EXPECT_THROW(PointerGrid(-1.0, 1.0, 100), Error);
  EXPECT_THROW(PointerGrid(-1.0, 1.0, 8), Error);
  EXPECT_THROW(PointerGrid(1.0, -1.0, 64), Error);
  const PointerGrid g(-10.0, 10.0, 1024);
  EXPECT_DOUBLE_EQ(g.spacing(), 20.0 / 1024);
  EXPECT_DOUBLE_EQ(g.wavenumber(1), 2.0 * std::numbers::pi / 20.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(1023), -2.0 * std::numbers::pi / 20.0);
}

TEST(Pointer, GaussianMatchesClosedFormAndIsNormalized) {
  const PointerGrid g(-10.0, 10.0, 1024);
  const PointerState p = make_gaussian_pointer(g, 1.25, 0.05);
  EXPECT_NEAR(discrete_norm(p.amplitudes(), g), 1.0, 1e-12);
  EXPECT_LT((p.amplitudes() - oracle::gaussian(g, 1.25, 0.05)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(pointer_center(p), 1.25, 1e-12);
  EXPECT_NEAR(pointer_width(p), 0.05, 1e-9);
}

TEST(Pointer, SupportOutsideGridIsRejected) {
  const PointerGrid g(-1.0, 1.0, 64);
  try {
    make_gaussian_pointer(g, 0.9, 0.1);
    FAIL() << "expected GridTooNarrow";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridTooNarrow);
  }
  EXPECT_THROW(make_gaussian_pointer(g, 0.0, 0.0), Error);
}

TEST(Pointer, TranslationMatchesShiftedGaussian) {
  std::mt19937_64 rng(14);
  const PointerGrid g(-10.0, 10.0, 512);
  for (int trial = 0; trial < 20; ++trial) {
    const double c = uniform(rng, -2.0, 2.0);
    const double w = uniform(rng, 0.2, 0.6);
    const double s = uniform(rng, -2.0, 2.0);
    const PointerState moved = make_gaussian_pointer(g, c, w).translated(s);
    EXPECT_NEAR(discrete_norm(moved.amplitudes(), g), 1.0, 1e-12);
    EXPECT_LT((moved.amplitudes() - oracle::gaussian(g, c + s, w)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Composite, TensorIsNormalizedProduct) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const SpinState s = random_spin(rng);
    const CompositeState psi = tensor(s, small_pointer(uniform(rng, -2.0, 2.0)));
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    const Eigen::Vector2d w = schmidt_weights(psi);
    EXPECT_NEAR(w(0), 0.0, 1e-12);
    EXPECT_NEAR(w(1), 1.0, 1e-12);
    EXPECT_NEAR(fidelity_to(reduced_density(psi, Subsystem::Spin), s), 1.0, 1e-12);
  }
}

TEST(Composite, RejectsUnnormalizedComponents) {
  const PointerGrid g(-10.0, 10.0, 64);
  EXPECT_THROW(CompositeState(g, Eigen::VectorXcd::Ones(64), Eigen::VectorXcd::Ones(64)), Error);
  EXPECT_THROW(CompositeState(g, Eigen::VectorXcd::Ones(32), Eigen::VectorXcd::Ones(64)), Error);
}

TEST(Density, PurityBoundsOnRandomStates) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const CompositeState psi = random_entangled(rng, 64);
    for (Subsystem keep : {Subsystem::Spin, Subsystem::Pointer}) {
      const DensityMatrix rho = reduced_density(psi, keep);
      const double p = purity(rho);
      EXPECT_GE(p, 1.0 / rho.dimension() - 1e-12);
      EXPECT_LE(p, 1.0 + 1e-12);
    }
    // Both sides of a pure bipartite state have the same spectrum.
    EXPECT_NEAR(purity(reduced_density(psi, Subsystem::Spin)),
                purity(reduced_density(psi, Subsystem::Pointer)), 1e-10);
  }
}

TEST(Density, PartialTraceConsistency) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const CompositeState psi = random_entangled(rng);
    const SpinOperator a = random_operator(rng, 2.0);
    const DensityMatrix rho = reduced_density(psi, Subsystem::Spin);
    const double traced = (rho.matrix() * a.matrix()).trace().real();
    EXPECT_NEAR(expectation(a, psi), traced, 1e-10);
  }
}

TEST(Density, RejectsInvalidMatrices) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, Error);  // trace 2
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{m}, Error);  // negative eigenvalue
  m = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  m(0, 1) = 0.3;
  EXPECT_THROW(DensityMatrix{m}, Error);  // not Hermitian
  m(1, 0) = 0.3;
  EXPECT_NO_THROW(DensityMatrix{m});
}

TEST(Density, MaximallyMixedHasPurityHalf) {
  const PointerGrid g(-10.0, 10.0, 256);
  const Eigen::VectorXcd a = make_gaussian_pointer(g, -4.0, 0.3).amplitudes();
  const Eigen::VectorXcd b = make_gaussian_pointer(g, 4.0, 0.3).amplitudes();
  const CompositeState psi(g, a / std::sqrt(2.0), b / std::sqrt(2.0));
  EXPECT_NEAR(purity(reduced_density(psi, Subsystem::Spin)), 0.5, 1e-12);
  const Eigen::Vector2d w = schmidt_weights(psi);
  EXPECT_NEAR(w(0), 0.5, 1e-12);
  EXPECT_NEAR(w(1), 0.5, 1e-12);
}

}  // namespace

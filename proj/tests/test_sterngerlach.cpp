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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "adiabatic_pointer/protocols/protocols.hpp"
#include "adiabatic_pointer/sterngerlach/sterngerlach.hpp"
#include "support.hpp"

namespace {

using namespace adiabatic;
namespace sg = adiabatic::sterngerlach;
using testing_support::uniform;

// Independent cgs values for the hand computations below.
constexpr double kHbarCgs = 1.054571817e-27;
constexpr double kCCgs = 2.99792458e10;
constexpr double kMuNCgs = 5.0507837461e-24;
constexpr double kAmuCgs = 1.66053906660e-24;

TEST(SternGerlach, HandComputedValues) {
  const sg::Params p;
  EXPECT_NEAR(sg::critical_velocity(p.mu, p.B0, p.L), kMuNCgs * 30.0 / kHbarCgs, 1e-6);
  const double P = kMuNCgs * 1e11 / (kHbarCgs * kCCgs);
  EXPECT_NEAR(sg::momentum_shift(p), P, 1e-9 * P);
  EXPECT_NEAR(sg::lab_gradient(p), 1e11 / kCCgs / 30.0, 1e-12);
  const auto r = sg::feasibility_report(p);
  EXPECT_NEAR(r.kick_velocity, kHbarCgs * P / (50.0 * kAmuCgs), 1e-12);
  EXPECT_NEAR(r.displacement, 30.0 * r.kick_velocity, 1e-12);
  EXPECT_NEAR(r.width_at_zero, 0.1 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(r.width_convention_flag);
  EXPECT_DOUBLE_EQ(r.P_meas_rounded, 3e4);
}

TEST(SternGerlach, ScalingLaws) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const double f = uniform(rng, 0.1, 10.0);
    sg::Params p;
    p.mu = uniform(rng, 0.1, 5.0);
    p.B0 = uniform(rng, 0.1, 5.0);
    p.L = uniform(rng, 1.0, 100.0);
    p.B_tilde = uniform(rng, 1e9, 1e12);
    p.drift_time = uniform(rng, 1.0, 100.0);
    const double vc = sg::critical_velocity(p.mu, p.B0, p.L);
    EXPECT_NEAR(sg::critical_velocity(f * p.mu, p.B0, p.L), f * vc, 1e-12 * f * vc);
    EXPECT_NEAR(sg::critical_velocity(p.mu, f * p.B0, p.L), f * vc, 1e-12 * f * vc);
    EXPECT_NEAR(sg::critical_velocity(p.mu, p.B0, f * p.L), f * vc, 1e-12 * f * vc);

    const double P = sg::momentum_shift(p);
    sg::Params q = p;
    q.mu *= f;
    EXPECT_NEAR(sg::momentum_shift(q), f * P, 1e-12 * f * P);
    q = p;
    q.B_tilde *= f;
    EXPECT_NEAR(sg::momentum_shift(q), f * P, 1e-12 * f * P);

    const double d = sg::feasibility_report(p).displacement;
    q = p;
    q.drift_time *= f;
    EXPECT_NEAR(sg::feasibility_report(q).displacement, f * d, 1e-12 * f * d);
  }
}

TEST(SternGerlach, ProtectiveModelReproducesMomentumShift) {
  sg::Params p;
  p.n = direction(std::numbers::pi / 3.0, 0.0);
  const PointerState pointer = make_gaussian_pointer(PointerGrid(-10.0, 10.0, 1024), 0.0, 0.05);
  for (double T : {100.0, 200.0, 400.0}) {
    const RunResult r = run_protective(sg::protective_model(p, T), pointer, Eigenstate::Ground,
                                       {1000, Splitting::Strang, 0.05});
    const double predicted = sg::momentum_shift(p);
    EXPECT_NEAR(r.shift * sg::momentum_scale(p), predicted, 0.05 * std::abs(predicted)) << "T=" << T;
  }
}

TEST(SternGerlach, FieldAngleVanishesMonotonicallyWithT) {
  const sg::Params p{.n = Vec3::UnitX()};
  double previous = std::numbers::pi;
  for (double T : {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0}) {
    const auto s = sg::effective_field_state(p, 1.0, T);
    EXPECT_LT(s.theta, previous);
    previous = s.theta;
  }
  EXPECT_LT(previous, 0.05);
}

TEST(SternGerlach, SlowTransitFollowsTheField) {
  // Heavy-atom limit: the spin stays along n_tilde when the gradient term is
  // small and the transit is long on the static precession scale.
  const sg::Params p{.n = Vec3::UnitX()};
  const auto s = sg::effective_field_state(p, 0.01, 100.0);
  const double along = expectation(SpinOperator::sigma_dot(p.n_tilde), s.state);
  EXPECT_GT(along, std::cos(2.0 * s.theta) - 1e-9);
  EXPECT_NEAR(s.state.vector().norm(), 1.0, 1e-12);
}

TEST(SternGerlach, Validation) {
  sg::Params p;
  p.L = -1.0;
  EXPECT_THROW(sg::feasibility_report(p), Error);
  p = sg::Params{};
  p.n = Vec3(1.0, 1.0, 0.0);
  EXPECT_THROW(sg::feasibility_report(p), Error);
  EXPECT_THROW(sg::wavepacket_width(0.0, 1.0, 50.0), Error);
  EXPECT_THROW(sg::effective_field_state(sg::Params{}, 1.0, 0.0), Error);
}

}  // namespace

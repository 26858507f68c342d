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
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "adiabatic_pointer/constants.hpp"
#include "adiabatic_pointer/gravity/hg_cell.hpp"
#include "adiabatic_pointer/gravity/limits.hpp"
#include "adiabatic_pointer/gravity/observables.hpp"
#include "support.hpp"

namespace {

using namespace adiabatic;
using namespace adiabatic::gravity;
using testing_support::random_unit;
using testing_support::uniform;

const Constants& K() { return Constants::standard(); }

TEST(Observables, EarthSurfaceValues) {
  // g = GM/R^2 = 9.8201 m/s^2, so g/c = 3.2757e-8 rad/s.
  const Rate r = precession_rate(1.0);
  EXPECT_NEAR(r.rad_per_s, 3.986004418e14 / (6.371e6 * 6.371e6) / 299792458.0, 1e-20);
  EXPECT_NEAR(r.hz, r.rad_per_s / (2.0 * std::numbers::pi), 1e-22);
  EXPECT_NEAR(energy_splitting(1.0), r.rad_per_s * 1.054571817e-34 / 1.602176634e-19, 1e-35);
  EXPECT_NEAR(std::log10(differential_acceleration(1.0, K().m_n)), -22.0, 1.0);
  EXPECT_NEAR(std::log10(differential_acceleration(1.0, K().m_e)), -19.0, 1.0);
}

TEST(Observables, SpinPotentialTerms) {
  const BodyContext earth = BodyContext::earth();
  const Vec3 r = K().R_earth * Vec3::UnitZ();
  const Vec3 v = Vec3::Zero();
  const double half = spin_potential({1.0, 0.0, 0.0}, earth, 0.5 * Vec3::UnitZ(), r, v);
  EXPECT_NEAR(half, 0.5 * energy_splitting(1.0) * K().eV, 1e-40);
  const double full = spin_potential({1.0, 0.0, 0.0}, earth, Vec3::UnitZ(), r, v);
  EXPECT_NEAR(full, energy_splitting(1.0) * K().eV, 1e-40);
  EXPECT_THROW(spin_potential({1.0, 0.0, 0.0}, BodyContext{}, Vec3::UnitZ(), r, v), Error);
}

TEST(Observables, PrecessionIsPerpendicular) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 R = K().R_earth * random_unit(rng);
    const Vec3 S = random_unit(rng);
    const Vec3 dS = spin_precession(uniform(rng, 0.1, 10.0), R, S);
    EXPECT_NEAR(dS.dot(S), 0.0, 1e-12 * dS.norm());
    EXPECT_NEAR(dS.dot(R), 0.0, 1e-12 * dS.norm() * R.norm());
  }
}

TEST(Observables, LinearInCouplings) {
  std::mt19937_64 rng(52);
  BodyContext ctx = BodyContext::earth();
  ctx.test_mass = K().m_n;
  for (int trial = 0; trial < 20; ++trial) {
    const SpinGravityParams p{uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0)};
    const SpinGravityParams p2{2 * p.alpha, 2 * p.beta, 2 * p.gamma};
    const Vec3 S = 0.5 * random_unit(rng);
    const Vec3 r = K().R_earth * random_unit(rng);
    const Vec3 v = 1e3 * random_unit(rng);
    const double V = spin_potential(p, ctx, S, r, v);
    EXPECT_NEAR(spin_potential(p2, ctx, S, r, v), 2 * V, 1e-12 * std::abs(V) + 1e-60);
    EXPECT_DOUBLE_EQ(precession_rate(p2.alpha).hz, 2 * precession_rate(p.alpha).hz);
    EXPECT_DOUBLE_EQ(energy_splitting(p2.alpha), 2 * energy_splitting(p.alpha));
    EXPECT_DOUBLE_EQ(differential_acceleration(p2.alpha, K().m_e), 2 * differential_acceleration(p.alpha, K().m_e));
    const LeitnerOkubo a = leitner_okubo_A(p, ctx, Probe::Massive);
    const LeitnerOkubo b = leitner_okubo_A(p2, ctx, Probe::Massive);
    EXPECT_DOUBLE_EQ(b.A1, 2 * a.A1);
    EXPECT_DOUBLE_EQ(b.A2, 2 * a.A2);
    HgCellConfig hg;
    const double S1 = hg_stray_free_S(with_gravity_coupling(hg, p.alpha));
    const double S2 = hg_stray_free_S(with_gravity_coupling(hg, p2.alpha));
    // S is a difference of ~Hz line frequencies, so compare on the absolute 1e-12 Hz scale.
    EXPECT_NEAR(S2, 2 * S1, 1e-12);
  }
}

TEST(Observables, GeneralRelativityPointHasNoAnomalousSignal) {
  const SpinGravityParams gr = SpinGravityParams::general_relativity();
  BodyContext ctx = BodyContext::earth();
  ctx.test_mass = K().m_p;
  EXPECT_EQ(precession_rate(gr.alpha).hz, 0.0);
  EXPECT_EQ(energy_splitting(gr.alpha), 0.0);
  EXPECT_EQ(differential_acceleration(gr.alpha, K().m_n), 0.0);
  const LeitnerOkubo lo = leitner_okubo_A(gr, ctx, Probe::Massive);
  EXPECT_EQ(lo.A1, 0.0);
  EXPECT_EQ(lo.A2, 0.0);
  EXPECT_EQ(hg_stray_free_S(with_gravity_coupling(HgCellConfig{}, gr.alpha)), 0.0);
  // Only the gamma term survives, and it needs r x v != 0.
  const Vec3 r = K().R_earth * Vec3::UnitZ();
  EXPECT_EQ(spin_potential(gr, ctx, Vec3::UnitZ(), r, 100.0 * Vec3::UnitZ()), 0.0);
  EXPECT_NE(spin_potential(gr, ctx, Vec3::UnitY(), r, 100.0 * Vec3::UnitX()), 0.0);
}

TEST(Observables, UnitRoundTrips) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const double ev = std::pow(10.0, uniform(rng, -25.0, 3.0));
    const double joule = ev * K().eV;
    const double hz = joule / K().h;
    EXPECT_NEAR(hz * K().h / K().eV / ev, 1.0, 1e-12);
    const double a = uniform(rng, 0.1, 1e4);
    EXPECT_NEAR(harwit_conversion(harwit_conversion(a, 0.13, 7e8, Direction::FromAlpha), 0.13, 7e8,
                                  Direction::ToAlpha) / a, 1.0, 1e-12);
  }
}

TEST(Observables, CombineAndRotation) {
  EXPECT_NEAR(combine_limit(-6.4, 2.9, 6.4), 6.4 + std::sqrt(2.9 * 2.9 + 6.4 * 6.4), 1e-12);
  EXPECT_THROW(combine_limit(1.0, -1.0, 0.0), Error);
  const double om = K().Omega_E / (2.0 * std::numbers::pi);
  EXPECT_NEAR(earth_rotation_correction(1.0, 0.0, 1), 1.0 + om, 1e-15);
  EXPECT_NEAR(earth_rotation_correction(1.0, std::numbers::pi, 1), 1.0 - om, 1e-15);
  EXPECT_THROW(earth_rotation_correction(1.0, 0.0, 2), Error);
}

TEST(Observables, LeitnerOkuboContextRequirements) {
  BodyContext ctx;
  try {
    leitner_okubo_kernel(ctx, Probe::Massive);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingContext);
  }
  ctx.photon_energy = 1e7;
  ctx.impact_parameter = 3e20;
  EXPECT_NEAR(leitner_okubo_kernel(ctx, Probe::Photon),
              1.054571817e-34 * 299792458.0 / (4.0 * 1e7 * 1.602176634e-19 * 3e20), 1e-50);
}

TEST(HgCell, StrayFieldCancelsForRandomConfigs) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    HgCellConfig base = with_gravity_coupling(HgCellConfig{}, uniform(rng, -100.0, 100.0));
    base.phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double reference = hg_stray_free_S(base);
    HgCellConfig c = base;
    c.B = uniform(rng, -5e-6, 5e-6);
    c.B_ran = uniform(rng, -5e-6, 5e-6);
    c.cos_theta_ran = uniform(rng, -1.0, 1.0);
    EXPECT_NEAR(hg_stray_free_S(c), reference, 1e-12);
    const double expected = (base.A199 / base.g199 - base.A201 / base.g201) * std::cos(base.phi) / K().h;
    EXPECT_NEAR(reference, expected, 1e-12);
  }
}

TEST(HgCell, ZeroWhenGFactorsMatchSpinRatio) {
  HgCellConfig c = with_gravity_coupling(HgCellConfig{}, 70.0);
  c.g201 = 3.0 * c.g199;
  for (double b_ran : {0.0, 1e-6, 2e-6}) {
    c.B_ran = b_ran;
    c.cos_theta_ran = 0.4;
    EXPECT_NEAR(hg_stray_free_S(c), 0.0, 1e-12);
  }
  c.B = 0.0;
  c.B_ran = 0.0;
  EXPECT_NEAR(hg_stray_free_S(c), 0.0, 1e-12);
}

TEST(HgCell, RatioNeedsField) {
  HgCellConfig c;
  c.B = 0.0;
  try {
    hg_observables(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
  c.B = 1e-6;
  EXPECT_NEAR(hg_observables(c).R, c.g199 / c.g201, 1e-12);
}

TEST(Limits, BundledTableClosesWithinFactorThree) {
  const auto table = limits_table();
  ASSERT_EQ(table.size(), 9u);
  for (const auto& lim : table) {
    const double a = alpha_from_limit(lim);
    EXPECT_LE(a, 3.0 * lim.quoted_alpha_bound) << lim.name;
    EXPECT_GE(a, lim.quoted_alpha_bound / 3.0) << lim.name;
  }
  const auto sorted = sorted_by_bound(table);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    EXPECT_LE(sorted[i - 1].quoted_alpha_bound, sorted[i].quoted_alpha_bound);
}

std::string header() {
  std::string h;
  for (auto c : kLimitColumns) h += (h.empty() ? "" : ",") + std::string(c);
  return h + "\n";
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_limits_csv(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidState;
}

TEST(Limits, CorruptTablesAreRejected) {
  const std::string ok = "a,energy,1e-21,eV,1,,,,,,,,50,\n";
  EXPECT_EQ(parse_limits_csv(header() + ok).size(), 1u);
  EXPECT_EQ(kind_of("name,kind\n" + ok), ErrorKind::DatasetCorrupt);
  EXPECT_EQ(kind_of(header() + ok + ok), ErrorKind::DatasetCorrupt);
  EXPECT_EQ(kind_of(header() + "a,magic,1,eV,1,,,,,,,,50,\n"), ErrorKind::DatasetCorrupt);
  EXPECT_EQ(kind_of(header() + "a,energy,x,eV,1,,,,,,,,50,\n"), ErrorKind::DatasetCorrupt);
  EXPECT_EQ(kind_of(header() + "a,energy,1,eV,1,,,,,,,50,\n"), ErrorKind::DatasetCorrupt);
  EXPECT_EQ(kind_of(header() + "a,A1,1e-12,1,1,,,,,,,,50,\n"), ErrorKind::DatasetCorrupt);
  EXPECT_EQ(kind_of(header() + "a,frequency,1,kHz,1,,,,,,,,50,\n"), ErrorKind::DatasetCorrupt);
  EXPECT_EQ(kind_of(header() + "a,energy,1,eV,1,,,,,,,,50,\"open\n"), ErrorKind::DatasetCorrupt);
}

TEST(Limits, ConversionErrors) {
  ExperimentLimit lim{"x", "sideways", 1.0, "eV", 1.0, {}, 1.0, ""};
  try {
    alpha_from_limit(lim);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownKind);
  }
  lim.kind = "A2";
  try {
    alpha_from_limit(lim);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingContext);
  }
  try {
    load_limits("/nonexistent/limits.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoError);
  }
}

TEST(Constants, TextRoundTripAndOverride) {
  Constants k = Constants::standard();
  const Constants back = Constants::from_text(k.to_text());
  EXPECT_EQ(back.to_text(), k.to_text());
  const Constants changed = Constants::from_text("version = test-1\nc = 3e8\n");
  EXPECT_EQ(changed.version, "test-1");
  EXPECT_EQ(changed.c, 3e8);
  EXPECT_EQ(changed.hbar, k.hbar);
  EXPECT_THROW(Constants::from_text("speed_of_light = 3e8\n"), Error);
}

}  // namespace

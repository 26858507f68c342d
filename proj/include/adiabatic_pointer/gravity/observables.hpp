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
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "adiabatic_pointer/constants.hpp"
#include "adiabatic_pointer/errors.hpp"

// Long-range spin-gravity potential
//   V = alpha GM/(c r^3) S.r + beta GM/(c^2 r^2) S.v + gamma GM/(c^2 r^3) S.(r x v)
// and the observables of its alpha term. SI units throughout; spins are in
// units of hbar.

namespace adiabatic::gravity {

using Vec3 = Eigen::Vector3d;

struct SpinGravityParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  static SpinGravityParams general_relativity() { return {0.0, 0.0, 2.0}; }
};

/// Source body and probe. Conversions name the fields they need and raise
/// MissingContext when one is absent.
struct BodyContext {
  std::optional<double> source_GM;         // m^3 s^-2
  std::optional<double> source_radius;     // m
  std::optional<double> test_mass;         // kg
  std::optional<double> velocity;          // m s^-1
  std::optional<double> photon_energy;     // eV
  std::optional<double> impact_parameter;  // m
  std::optional<double> wavelength;        // m

  static BodyContext earth(const Constants& k = Constants::standard()) {
    BodyContext ctx;
    ctx.source_GM = k.GM_earth;
    ctx.source_radius = k.R_earth;
    return ctx;
  }
};

inline double require(const std::optional<double>& field, const char* name, bool positive = true) {
  if (!field) fail(ErrorKind::MissingContext, std::string("context field '") + name + "' is required");
  if (positive && !(*field > 0.0))
    fail(ErrorKind::InvalidState, std::string("context field '") + name + "' must be positive");
  return *field;
}

/// V in joules for spin S (hbar units) at separation r (m) moving with v (m/s).
inline double spin_potential(const SpinGravityParams& p, const BodyContext& ctx, const Vec3& S,
                             const Vec3& r, const Vec3& v,
                             const Constants& k = Constants::standard()) {
  const double gm = require(ctx.source_GM, "source_GM");
  const double rn = r.norm();
  if (!(rn > 0.0)) fail(ErrorKind::InvalidState, "spin_potential needs |r| > 0");
  const Vec3 spin = k.hbar * S;
  const double c = k.c;
  return p.alpha * gm / (c * rn * rn * rn) * spin.dot(r) +
         p.beta * gm / (c * c * rn * rn) * spin.dot(v) +
         p.gamma * gm / (c * c * rn * rn * rn) * spin.dot(r.cross(v));
}

/// (a+ - a-)/a = 2 alpha hbar / (m c R_earth).
inline double differential_acceleration(double alpha, double mass,
                                        const Constants& k = Constants::standard()) {
  if (!(mass > 0.0)) fail(ErrorKind::InvalidState, "mass must be positive");
  return 2.0 * alpha * k.hbar / (mass * k.c * k.R_earth);
}

struct Rate {
  double rad_per_s = 0.0;
  double hz = 0.0;
};

/// Precession of a spin about the local vertical at the earth's surface:
/// alpha GM / (c R^2).
inline Rate precession_rate(double alpha, const Constants& k = Constants::standard()) {
  const double w = alpha * k.g_earth() / k.c;
  return {w, w / (2.0 * std::numbers::pi)};
}

/// dS/dt = alpha GM/(c R^3) R x S.
inline Vec3 spin_precession(double alpha, const Vec3& R, const Vec3& S,
                            const Constants& k = Constants::standard()) {
  const double rn = R.norm();
  return alpha * k.GM_earth / (k.c * rn * rn * rn) * R.cross(S);
}

/// Energy difference (eV) of spin-1/2 particles polarized along and against
/// the local vertical: alpha GM hbar / (c R^2).
inline double energy_splitting(double alpha, const Constants& k = Constants::standard()) {
  return alpha * k.g_earth() * k.hbar / k.c / k.eV;
}

enum class Probe { Massive, Photon };

struct LeitnerOkubo {
  double A1 = 0.0;
  double A2 = 0.0;
};

/// Per-unit-coupling kernel: hbar/(m c r) for massive probes at distance
/// source_radius, hbar c/(4 E b) for photons.
inline double leitner_okubo_kernel(const BodyContext& ctx, Probe which,
                                   const Constants& k = Constants::standard()) {
  if (which == Probe::Massive) {
    const double m = require(ctx.test_mass, "test_mass");
    const double r = require(ctx.source_radius, "source_radius");
    return k.hbar / (m * k.c * r);
  }
  const double e = require(ctx.photon_energy, "photon_energy") * k.eV;
  const double b = require(ctx.impact_parameter, "impact_parameter");
  return k.hbar * k.c / (4.0 * e * b);
}

/// Context-dependent Leitner-Okubo parameters: A1 from alpha, A2 from beta.
inline LeitnerOkubo leitner_okubo_A(const SpinGravityParams& p, const BodyContext& ctx,
                                    Probe which, const Constants& k = Constants::standard()) {
  const double kernel = leitner_okubo_kernel(ctx, which, k);
  return {p.alpha * kernel, p.beta * kernel};
}

enum class Direction { ToAlpha, FromAlpha };

/// alpha' = alpha lambda / (2 r) for circular polarization states.
inline double harwit_conversion(double value, double lambda, double r, Direction dir) {
  if (!(lambda > 0.0) || !(r > 0.0))
    fail(ErrorKind::InvalidState, "harwit_conversion needs lambda, r > 0");
  return dir == Direction::ToAlpha ? value * 2.0 * r / lambda : value * lambda / (2.0 * r);
}

/// nu + sign * Omega_E cos(theta), with Omega_E expressed in Hz.
inline double earth_rotation_correction(double nu, double theta, int sign,
                                        const Constants& k = Constants::standard()) {
  if (sign != 1 && sign != -1) fail(ErrorKind::InvalidState, "sign must be +1 or -1");
  return nu + sign * k.Omega_E_hz() * std::cos(theta);
}

/// |central| + sqrt(stat^2 + syst^2)
inline double combine_limit(double central, double stat, double syst) {
  if (!(stat >= 0.0) || !(syst >= 0.0))
    fail(ErrorKind::InvalidState, "stat and syst errors must be non-negative");
  return std::abs(central) + std::hypot(stat, syst);
}

}  // namespace adiabatic::gravity

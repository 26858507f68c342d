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
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "adiabatic_pointer/constants.hpp"
#include "adiabatic_pointer/dynamics/hamiltonian.hpp"
#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/quantum/spin.hpp"

// Cold-atom Stern-Gerlach realization of a protective measurement.
//
// Units are Gaussian-cgs (cm, s, gauss, erg) unless a name says otherwise.
// The gradient parameter B_tilde is the coefficient in
//   H = P^2/2M - mu B0 sigma.n_tilde - mu g(t) B_tilde x sigma.n,   g = 1/T,
// written in natural units (hbar = c = 1), where it is a field in gauss.
// In cgs it carries an extra 1/c: mu B_tilde x / (c T) is an energy for x in
// cm and T in seconds.

namespace adiabatic::sterngerlach {

struct Params {
  double mu = 1.0;                      // nuclear magnetons
  double B0 = 1.0;                      // G
  Vec3 n_tilde = Vec3::UnitZ();         // static-field axis
  double B_tilde = 1e11;                // G (natural units)
  Vec3 n = Vec3::UnitZ();               // gradient axis
  double L = 30.0;                      // cm
  double v = 1.0;                       // cm/s
  double epsilon = 0.1;                 // cm
  double M = 50.0;                      // amu
  double x_max = 1.0;                   // cm
  double drift_time = 30.0;             // s

  void validate() const {
    auto positive = [](double x, const char* name) {
      if (!(x > 0.0) || !std::isfinite(x))
        fail(ErrorKind::InvalidState, std::string(name) + " must be positive");
    };
    positive(mu, "mu");
    positive(B0, "B0");
    positive(B_tilde, "B_tilde");
    positive(L, "L");
    positive(v, "v");
    positive(epsilon, "epsilon");
    positive(M, "M");
    positive(x_max, "x_max");
    positive(drift_time, "drift_time");
    if (std::abs(n_tilde.norm() - 1.0) > 1e-12 || std::abs(n.norm() - 1.0) > 1e-12)
      fail(ErrorKind::InvalidState, "n_tilde and n must be unit vectors");
  }
};

struct Thresholds {
  double max_weakness = 0.2;
  double min_momentum_ratio = 100.0;
};

/// mu (erg/G) for a moment given in nuclear magnetons.
inline double moment_cgs(double mu, const Constants& k = Constants::standard()) {
  return mu * k.mu_N_cgs();
}

/// Velocity at which the static-field phase mu B0 L / (hbar v) equals 1.
inline double critical_velocity(double mu, double B0, double L,
                                const Constants& k = Constants::standard()) {
  return moment_cgs(mu, k) * B0 * L / k.hbar_cgs();
}

/// mu B_tilde (n . n_tilde) / (hbar c), in cm^-1.
inline double momentum_shift(const Params& p, const Constants& k = Constants::standard()) {
  return moment_cgs(p.mu, k) * p.B_tilde * p.n.dot(p.n_tilde) / (k.hbar_cgs() * k.c_cgs());
}

/// Lab gradient B_i = B_tilde v / L with B_tilde converted to cgs; G/cm.
inline double lab_gradient(const Params& p, const Constants& k = Constants::standard()) {
  return p.B_tilde / k.c_cgs() * p.v / p.L;
}

/// The rounded form B_i = (v / v_c) 3 B_tilde 1e-7, evaluated with the
/// computed v_c. Agrees with lab_gradient only when v_c is 3e5 cm/s.
inline double lab_gradient_rounded(const Params& p, const Constants& k = Constants::standard()) {
  return p.v / critical_velocity(p.mu, p.B0, p.L, k) * 3.0 * p.B_tilde * 1e-7;
}

/// Rounded momentum 3 B_tilde 1e-7 / B0 (cm^-1), i.e. mu L / v_c = 1 / B0.
inline double momentum_shift_rounded(const Params& p) { return 3.0 * p.B_tilde * 1e-7 / p.B0; }

/// eps(T)^2 = (eps^2 + (hbar T / (M eps))^2) / 2, cm. Note eps(0) = eps / sqrt(2).
inline double wavepacket_width(double epsilon, double T, double M_amu,
                               const Constants& k = Constants::standard()) {
  if (!(epsilon > 0.0) || !(T >= 0.0) || !(M_amu > 0.0))
    fail(ErrorKind::InvalidState, "wavepacket_width needs epsilon, M > 0 and T >= 0");
  const double spread = k.hbar_cgs() * T / (M_amu * k.amu_cgs() * epsilon);
  return std::sqrt(0.5 * (epsilon * epsilon + spread * spread));
}

struct FieldState {
  double theta = 0.0;  // angle between B and n_tilde
  SpinState state;
};

/// Heavy-atom solution at position x after time T: the spin starts along
/// n_tilde and precesses about B = B0 n_tilde + (B_tilde x / (c T)) n.
inline FieldState effective_field_state(const Params& p, double x, double T,
                                        const Constants& k = Constants::standard()) {
  if (!(T > 0.0)) fail(ErrorKind::InvalidState, "T must be positive");
  const Vec3 field = p.B0 * p.n_tilde + (p.B_tilde * x / (k.c_cgs() * T)) * p.n;
  const double theta = std::atan2(field.cross(p.n_tilde).norm(), field.dot(p.n_tilde));
  // H = -mu B . sigma, in units of 1/s after dividing by hbar.
  const Vec3 rate = -(moment_cgs(p.mu, k) / k.hbar_cgs()) * field;
  const SpinState start = make_spin_state(std::acos(std::clamp(p.n_tilde.z(), -1.0, 1.0)),
                                          std::atan2(p.n_tilde.y(), p.n_tilde.x()));
  const Eigen::Vector2cd out = evolution_operator(BlochForm{0.0, rate}, T) * start.vector();
  return {theta, SpinState::from_vector(out)};
}

/// Dimensionless protective model of the same setup: energies in units of
/// mu B0, H_S = -sigma.n_tilde and Q_S = sigma.n. A pointer shift s of this
/// model corresponds to a transverse momentum s * momentum_scale(p).
inline HamiltonianSpec protective_model(const Params& p, double T) {
  return HamiltonianSpec{SpinOperator::sigma_dot(p.n_tilde).scaled(-1.0),
                         SpinOperator::sigma_dot(p.n), {}, CouplingProfile::square(T)};
}

/// mu B_tilde / (hbar c), cm^-1.
inline double momentum_scale(const Params& p, const Constants& k = Constants::standard()) {
  return moment_cgs(p.mu, k) * p.B_tilde / (k.hbar_cgs() * k.c_cgs());
}

struct FeasibilityReport {
  double v_c = 0.0;                   // cm/s
  double B_i_lab = 0.0;               // G/cm
  double B_i_rounded = 0.0;           // G/cm, (v/v_c) 3 B_tilde 1e-7
  double weakness_ratio = 0.0;        // B_i x_max / B0
  double P_meas = 0.0;                // cm^-1
  double P_meas_rounded = 0.0;        // cm^-1, 3 B_tilde 1e-7 / B0
  double width_momentum = 0.0;        // cm^-1
  double momentum_ratio = 0.0;        // P_meas * epsilon
  double kick_velocity = 0.0;         // cm/s
  double displacement = 0.0;          // cm
  double width_after_drift = 0.0;     // cm
  double width_at_zero = 0.0;         // cm, the T = 0 value of the spreading law
  bool weak = false;
  bool momentum_dominates = false;
  bool resolvable = false;
  bool feasible = false;
  /// The spreading law gives eps / sqrt(2) at T = 0 rather than eps.
  bool width_convention_flag = false;
};

inline FeasibilityReport feasibility_report(const Params& p, const Thresholds& th = {},
                                            const Constants& k = Constants::standard()) {
  p.validate();
  FeasibilityReport r;
  r.v_c = critical_velocity(p.mu, p.B0, p.L, k);
  r.B_i_lab = lab_gradient(p, k);
  r.B_i_rounded = lab_gradient_rounded(p, k);
  r.weakness_ratio = r.B_i_lab * p.x_max / p.B0;
  r.P_meas = std::abs(momentum_shift(p, k));
  r.P_meas_rounded = momentum_shift_rounded(p);
  r.width_momentum = 1.0 / p.epsilon;
  r.momentum_ratio = r.P_meas * p.epsilon;
  r.kick_velocity = k.hbar_cgs() * r.P_meas / (p.M * k.amu_cgs());
  r.displacement = r.kick_velocity * p.drift_time;
  r.width_after_drift = wavepacket_width(p.epsilon, p.drift_time, p.M, k);
  r.width_at_zero = wavepacket_width(p.epsilon, 0.0, p.M, k);
  r.weak = r.weakness_ratio <= th.max_weakness;
  r.momentum_dominates = r.momentum_ratio >= th.min_momentum_ratio;
  r.resolvable = r.displacement > p.epsilon;
  r.feasible = r.weak && r.momentum_dominates && r.resolvable;
  r.width_convention_flag = std::abs(r.width_at_zero - p.epsilon) > 1e-12 * p.epsilon;
  return r;
}

}  // namespace adiabatic::sterngerlach

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

#include "adiabatic_pointer/constants.hpp"
#include "adiabatic_pointer/errors.hpp"

// Two-isotope mercury comagnetometer. Each isotope's NMR line is
//   nu = -g mu_N (B + B_ran <cos theta_ran>) / h + A cos(phi) / h,
// and the combinations nu199/nu201 and nu199/g199 - nu201/g201 remove the
// common stray field.

namespace adiabatic::gravity {

inline constexpr double kSpin199 = 0.5;
inline constexpr double kSpin201 = 1.5;

struct HgCellConfig {
  double g199 = 1.011771;      // 199Hg nuclear g-factor
  double g201 = -0.3734838;    // 201Hg nuclear g-factor
  double mu_N = Constants::standard().mu_N;  // J/T
  double B = 1e-6;             // T
  double B_ran = 0.0;          // T
  double cos_theta_ran = 0.0;  // <cos theta_ran>
  double phi = 0.0;            // rad, applied field vs local vertical
  double A199 = 0.0;           // J
  double A201 = 0.0;           // J

  void validate() const {
    if (g199 == 0.0 || g201 == 0.0) fail(ErrorKind::InvalidState, "g-factors must be nonzero");
    if (!(std::abs(cos_theta_ran) <= 1.0))
      fail(ErrorKind::InvalidState, "|<cos theta_ran>| must not exceed 1");
    if (!(mu_N > 0.0)) fail(ErrorKind::InvalidState, "mu_N must be positive");
  }
};

struct HgFrequencies {
  double nu199 = 0.0;  // Hz
  double nu201 = 0.0;  // Hz
};

inline HgFrequencies hg_frequencies(const HgCellConfig& cfg,
                                    const Constants& k = Constants::standard()) {
  cfg.validate();
  const double field = cfg.B + cfg.B_ran * cfg.cos_theta_ran;
  const double cphi = std::cos(cfg.phi);
  return {(-cfg.g199 * cfg.mu_N * field + cfg.A199 * cphi) / k.h,
          (-cfg.g201 * cfg.mu_N * field + cfg.A201 * cphi) / k.h};
}

struct HgObservables {
  double R = 0.0;  // nu199 / nu201
  double S = 0.0;  // nu199/g199 - nu201/g201, Hz
};

/// R and S from the two line frequencies. S evaluates to
/// (A199/g199 - A201/g201) cos(phi) / h whatever the magnetic fields.
inline HgObservables hg_observables(const HgCellConfig& cfg,
                                    const Constants& k = Constants::standard()) {
  const HgFrequencies f = hg_frequencies(cfg, k);
  if (cfg.B == 0.0 || f.nu201 == 0.0)
    fail(ErrorKind::DivisionByZero, "R = nu199/nu201 is undefined when B = 0 or nu201 = 0");
  return {f.nu199 / f.nu201, f.nu199 / cfg.g199 - f.nu201 / cfg.g201};
}

/// S alone; defined for any field, including B = 0.
inline double hg_stray_free_S(const HgCellConfig& cfg, const Constants& k = Constants::standard()) {
  const HgFrequencies f = hg_frequencies(cfg, k);
  return f.nu199 / cfg.g199 - f.nu201 / cfg.g201;
}

/// Anomalous couplings A_iso = alpha (GM/(R^2 c)) hbar I_iso, in joules.
inline HgCellConfig with_gravity_coupling(HgCellConfig cfg, double alpha,
                                          const Constants& k = Constants::standard()) {
  const double unit = alpha * k.g_earth() / k.c * k.hbar;
  cfg.A199 = unit * kSpin199;
  cfg.A201 = unit * kSpin201;
  return cfg;
}

}  // namespace adiabatic::gravity

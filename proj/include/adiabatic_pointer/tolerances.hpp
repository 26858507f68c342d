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

namespace adiabatic {

/// Validation thresholds for the state and operator invariants. Defaults are
/// roughly 100x the double round-off accumulated over 1e6 grid points/steps.
struct Tolerances {
  double spin_norm = 1e-12;
  double pointer_norm = 1e-10;
  double composite_norm = 1e-9;
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double eigenvalue_floor = -1e-10;
  /// Minimum |E1 - E0| of H_S accepted for protective runs.
  double min_gap = 1e-6;
  /// Bound on ||psi(2n) - psi(n)|| when the propagator runs its convergence check.
  double convergence_bound = 1e-6;
  bool check_convergence = false;

  static Tolerances standard() { return {}; }

  /// Ten times tighter and with the propagator's step-doubling check switched on.
  static Tolerances strict() {
    Tolerances t;
    t.spin_norm = 1e-13;
    t.pointer_norm = 1e-11;
    t.composite_norm = 1e-10;
    t.hermiticity = 1e-13;
    t.trace = 1e-13;
    t.eigenvalue_floor = -1e-11;
    t.convergence_bound = 1e-7;
    t.check_convergence = true;
    return t;
  }
};

}  // namespace adiabatic

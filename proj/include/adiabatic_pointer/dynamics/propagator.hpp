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
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "adiabatic_pointer/dynamics/hamiltonian.hpp"
#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/quantum/composite.hpp"
#include "adiabatic_pointer/quantum/pointer.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace adiabatic {

enum class Splitting { FirstOrder, Strang };

inline std::string_view to_string(Splitting s) {
  return s == Splitting::Strang ? "strang" : "first_order";
}

struct PropagatorConfig {
  int n_steps = 1000;
  Splitting splitting = Splitting::Strang;
  /// Upper bound on the step length; 0 disables it. Long runs then get
  /// ceil(T / max_dt) steps when that exceeds n_steps.
  double max_dt = 0.0;

  void validate() const {
    if (n_steps < 10)
      fail(ErrorKind::InvalidState, "n_steps must be >= 10, got " + std::to_string(n_steps));
    if (!(max_dt >= 0.0)) fail(ErrorKind::InvalidState, "max_dt must be >= 0");
  }

  int effective_steps(double total_time) const {
    validate();
    if (max_dt <= 0.0) return n_steps;
    const double needed = std::ceil(total_time / max_dt);
    return static_cast<int>(std::max<double>(n_steps, std::min(needed, 1e9)));
  }
};

namespace detail {

// exp(-i (x a.sigma + a0 x + phase)) as a 2x2 matrix, closed form.
inline Eigen::Matrix2cd coupling_step(const BlochForm& q_s, double x, double phase) {
  BlochForm b{q_s.a0 * x + phase, q_s.a * x};
  return evolution_operator(b, 1.0);
}

// Evolve each momentum bin's spinor through `steps` steps. H_A and Q_A Q_S are
// diagonal in Q_A, so bins never mix; the apparatus phase rides along with the
// coupling factor.
inline std::array<Eigen::VectorXcd, 2> evolve_spectrum(std::array<Eigen::VectorXcd, 2> spec,
                                                        const PointerGrid& grid,
                                                        const HamiltonianSpec& h, int steps,
                                                        Splitting splitting) {
  const double total = h.profile.total_time();
  const double dt = total / steps;
  std::vector<double> g_int(steps);
  for (int k = 0; k < steps; ++k) g_int[k] = h.profile.integral(k * dt, (k + 1) * dt);

  const BlochForm hs = h.system.bloch();
  const BlochForm qs = h.coupling.bloch();
  const Eigen::Matrix2cd s_full = evolution_operator(hs, dt);
  const Eigen::Matrix2cd s_half = evolution_operator(hs, 0.5 * dt);

  for (int k = 0; k < grid.size(); ++k) {
    const double q = grid.wavenumber(k);
    const double apparatus_phase = h.apparatus_energy(q) * dt;
    Eigen::Vector2cd v(spec[0](k), spec[1](k));
    Eigen::Matrix2cd c = coupling_step(qs, g_int[0] * q, apparatus_phase);
    double cached = g_int[0];
    if (splitting == Splitting::Strang) v = s_half * v;
    for (int n = 0; n < steps; ++n) {
      if (g_int[n] != cached) {
        cached = g_int[n];
        c = coupling_step(qs, cached * q, apparatus_phase);
      }
      v = c * v;
      if (splitting == Splitting::Strang) {
        v = (n + 1 < steps ? s_full : s_half) * v;
      } else {
        v = s_full * v;
      }
    }
    spec[0](k) = v(0);
    spec[1](k) = v(1);
  }
  return spec;
}

inline std::array<Eigen::VectorXcd, 2> run_steps(const CompositeState& psi0,
                                                  const HamiltonianSpec& h, int steps,
                                                  Splitting splitting) {
  std::array<Eigen::VectorXcd, 2> spec{spectral::forward(psi0.component(0)),
                                       spectral::forward(psi0.component(1))};
  spec = evolve_spectrum(std::move(spec), psi0.grid(), h, steps, splitting);
  return {spectral::inverse(spec[0]), spectral::inverse(spec[1])};
}

}  // namespace detail

/// L2 distance sqrt(sum_s sum_k |a - b|^2 dr) between two states on one grid.
inline double state_distance(const CompositeState& a, const CompositeState& b) {
  if (!(a.grid() == b.grid())) fail(ErrorKind::InvalidState, "states live on different grids");
  const double d = (a.component(0) - b.component(0)).squaredNorm() +
                   (a.component(1) - b.component(1)).squaredNorm();
  return std::sqrt(d * a.grid().spacing());
}

/// |<a|b>|^2 for two composite states.
inline double state_fidelity(const CompositeState& a, const CompositeState& b) {
  const cplx o = (a.component(0).dot(b.component(0)) + a.component(1).dot(b.component(1))) *
                 a.grid().spacing();
  return std::norm(o);
}

/// Time-ordered evolution of psi0 over [0, T] by operator splitting in the Q_A
/// representation. H_S steps use the exact 2x2 exponential; the coupling step
/// uses the exact integral of g over the step, so a square profile with
/// [Q_S, H_S] = 0 is exact for any step count.
///
/// With tol.check_convergence the run is repeated at twice the steps and
/// NonConverged is raised if the two differ by more than tol.convergence_bound;
/// the finer result is returned.
inline CompositeState propagate(const CompositeState& psi0, const HamiltonianSpec& spec,
                                const PropagatorConfig& cfg, const Tolerances& tol = {}) {
  const int steps = cfg.effective_steps(spec.profile.total_time());
  auto out = detail::run_steps(psi0, spec, steps, cfg.splitting);
  CompositeState coarse(psi0.grid(), std::move(out[0]), std::move(out[1]), tol);
  if (!tol.check_convergence) return coarse;

  auto fine_amps = detail::run_steps(psi0, spec, 2 * steps, cfg.splitting);
  CompositeState fine(psi0.grid(), std::move(fine_amps[0]), std::move(fine_amps[1]), tol);
  const double change = state_distance(coarse, fine);
  if (change > tol.convergence_bound)
    fail(ErrorKind::NonConverged, "doubling n_steps from " + std::to_string(steps) +
                                      " changed the state by " + std::to_string(change));
  return fine;
}

}  // namespace adiabatic

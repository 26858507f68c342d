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
#include <cstdint>
#include <future>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adiabatic_pointer/dynamics/hamiltonian.hpp"
#include "adiabatic_pointer/dynamics/propagator.hpp"
#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/quantum/composite.hpp"
#include "adiabatic_pointer/quantum/density.hpp"
#include "adiabatic_pointer/quantum/pointer.hpp"
#include "adiabatic_pointer/quantum/spin.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace adiabatic {

/// Branches are integrated over +-kBranchWindow pointer widths.
inline constexpr double kBranchWindow = 5.0;

struct Branch {
  double center = 0.0;
  double weight = 0.0;
};

struct RunResult {
  CompositeState final_state;
  SpinState initial_spin;
  double initial_center = 0.0;
  /// pointer_center(final) - pointer_center(initial)
  double shift = 0.0;
  /// <nu|Q_S|nu>, the value the pointer is meant to record.
  double reference_shift = 0.0;
  double system_fidelity = 0.0;
  double linear_entropy = 0.0;
  std::vector<Branch> branch_weights;
  DensityMatrix ensemble_rho;
};

enum class ImpulsiveMode { Analytic, Propagated };

namespace detail {

inline RunResult summarize(CompositeState final_state, const SpinState& nu,
                           double initial_center, double reference_shift,
                           std::vector<Branch> branches) {
  DensityMatrix rho = reduced_density(final_state, Subsystem::Spin);
  const double center = pointer_center(final_state);
  RunResult out{std::move(final_state), nu, initial_center, center - initial_center,
                reference_shift, fidelity_to(rho, nu), linear_entropy(rho),
                std::move(branches), rho};
  return out;
}

}  // namespace detail

/// Strong, short coupling exp(-i Q_A Q_S): each Q_S eigenbranch s_i is
/// translated by s_i and picks up weight |<s_i|nu>|^2. Free Hamiltonians are
/// neglected. The Propagated mode runs the same coupling through propagate()
/// as a cross-check.
inline RunResult run_impulsive(const SpinState& nu, const SpinOperator& q_s,
                               const PointerState& pointer,
                               ImpulsiveMode mode = ImpulsiveMode::Analytic,
                               const Tolerances& tol = {}) {
  const auto [values, vectors] = q_s.eigen();
  const double gap = values(1) - values(0);
  const double eps = pointer_width(pointer);
  if (!(kBranchWindow * 2.0 * eps < gap))
    fail(ErrorKind::BranchOverlap, "10 * width = " + std::to_string(10.0 * eps) +
                                       " is not below the Q_S eigenvalue gap " +
                                       std::to_string(gap));
  const PointerGrid& grid = pointer.grid();
  const double r0 = pointer_center(pointer);
  const CompositeState psi0 = tensor(nu, pointer);

  CompositeState final_state = psi0;
  if (mode == ImpulsiveMode::Analytic) {
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(grid.size());
    Eigen::VectorXcd dn = Eigen::VectorXcd::Zero(grid.size());
    for (int i = 0; i < 2; ++i) {
      const Eigen::Vector2cd s_i = vectors.col(i);
      const cplx c_i = s_i.dot(nu.vector());
      const Eigen::VectorXcd moved = spectral::translate(pointer.amplitudes(), grid, values(i));
      up += (c_i * s_i(0)) * moved;
      dn += (c_i * s_i(1)) * moved;
    }
    final_state = CompositeState(grid, std::move(up), std::move(dn), tol);
  } else {
    HamiltonianSpec spec{SpinOperator::identity().scaled(0.0), q_s, {},
                         CouplingProfile::square(1.0)};
    final_state = propagate(psi0, spec, PropagatorConfig{10, Splitting::Strang, 0.0}, tol);
  }

  std::vector<Branch> branches;
  for (int i = 0; i < 2; ++i) {
    const double c = r0 + values(i);
    branches.push_back({c, window_weight(final_state, c, kBranchWindow * eps)});
  }
  return detail::summarize(std::move(final_state), nu, r0, expectation(q_s, nu),
                           std::move(branches));
}

/// Weak adiabatic coupling over [0, T] starting from the chosen H_S eigenstate.
/// The run uses nu only to build the initial product state.
inline RunResult run_protective(const HamiltonianSpec& spec, const PointerState& pointer,
                                Eigenstate which, const PropagatorConfig& cfg,
                                const Tolerances& tol = {}) {
  const SpinState nu = system_eigenstate(spec, which, tol);
  const double r0 = pointer_center(pointer);
  CompositeState final_state = propagate(tensor(nu, pointer), spec, cfg, tol);
  const double center = pointer_center(final_state);
  const double eps = pointer_width(pointer);
  std::vector<Branch> branches{{center, window_weight(final_state, center, kBranchWindow * eps)}};
  return detail::summarize(std::move(final_state), nu, r0, expectation(spec.coupling, nu),
                           std::move(branches));
}

struct Readout {
  double r = 0.0;
  int cell = 0;
  SpinState collapsed_spin;
};

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Born-rule pointer readouts. Each draw picks a grid cell from the marginal
/// |psi(r)|^2 and collapses the spin to its conditional state in that cell.
class ReadoutSampler {
 public:
  explicit ReadoutSampler(const CompositeState& psi) : psi_(psi) {
    const Eigen::VectorXd p = psi.position_probabilities();
    cumulative_.resize(p.size());
    double acc = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) cumulative_[k] = (acc += p(k));
  }

  Readout draw(std::mt19937_64& rng) const {
    const double u = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    int k = static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                                      std::ssize(cumulative_) - 1));
    // Skip empty cells that upper_bound can land on at exact ties.
    while (psi_.component(0)(k) == cplx{} && psi_.component(1)(k) == cplx{} && k > 0) --k;
    return {psi_.grid().position(k), k,
            SpinState::normalized(psi_.component(0)(k), psi_.component(1)(k))};
  }

 private:
  const CompositeState& psi_;
  std::vector<double> cumulative_;
};

/// One readout with its own seeded stream.
inline Readout sample_readout(const RunResult& result, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return ReadoutSampler(result.final_state).draw(rng);
}

/// `count` successive readouts from one seeded stream.
inline std::vector<Readout> sample_readouts(const RunResult& result, std::uint64_t seed,
                                            int count) {
  std::mt19937_64 rng(seed);
  ReadoutSampler sampler(result.final_state);
  std::vector<Readout> out;
  out.reserve(std::max(count, 0));
  for (int i = 0; i < count; ++i) out.push_back(sampler.draw(rng));
  return out;
}

struct SweepRecord {
  double T = 0.0;
  double shift_error = 0.0;
  double infidelity = 0.0;
  double linear_entropy = 0.0;
};

inline SweepRecord to_sweep_record(const RunResult& r, double total_time) {
  return {total_time, std::abs(r.shift - r.reference_shift),
          std::max(0.0, 1.0 - r.system_fidelity), std::max(0.0, r.linear_entropy)};
}

/// Protective runs of spec_template at each T, evaluated concurrently.
inline std::vector<SweepRecord> sweep_T(const HamiltonianSpec& spec_template,
                                        const std::vector<double>& T_values,
                                        const PropagatorConfig& cfg,
                                        const PointerState& pointer,
                                        Eigenstate which = Eigenstate::Ground,
                                        const Tolerances& tol = {}) {
  if (T_values.size() < 3)
    fail(ErrorKind::InvalidState, "sweep_T needs at least 3 T values");
  if (!std::is_sorted(T_values.begin(), T_values.end()) ||
      std::adjacent_find(T_values.begin(), T_values.end()) != T_values.end())
    fail(ErrorKind::InvalidState, "sweep_T needs strictly ascending T values");

  std::vector<std::future<SweepRecord>> jobs;
  for (double T : T_values) {
    jobs.push_back(std::async(std::launch::async, [&, T] {
      const RunResult r = run_protective(spec_template.with_total_time(T), pointer, which, cfg, tol);
      return to_sweep_record(r, T);
    }));
  }
  std::vector<SweepRecord> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

struct ContrastReport {
  double impulsive_purity = 0.0;
  /// sum |c_i|^4 over the Q_S eigenbasis
  double impulsive_expected = 0.0;
  double protective_purity = 0.0;
  /// 1 - 2 * linear entropy of the protective run
  double protective_floor = 0.0;
  bool impulsive_consistent = false;
  bool protective_consistent = false;
};

/// Purity of the post-measurement spin ensemble for the two protocols.
inline ContrastReport ensemble_contrast(const RunResult& impulsive, const SpinOperator& q_s,
                                        const RunResult& protective, double tolerance = 1e-6) {
  ContrastReport rep;
  rep.impulsive_purity = purity(impulsive.ensemble_rho);
  const auto [values, vectors] = q_s.eigen();
  for (int i = 0; i < 2; ++i)
    rep.impulsive_expected += std::pow(std::norm(vectors.col(i).dot(impulsive.initial_spin.vector())), 2);
  rep.protective_purity = purity(protective.ensemble_rho);
  rep.protective_floor = 1.0 - 2.0 * protective.linear_entropy;
  rep.impulsive_consistent = std::abs(rep.impulsive_purity - rep.impulsive_expected) <= tolerance;
  rep.protective_consistent = rep.protective_purity >= rep.protective_floor - tolerance;
  return rep;
}

}  // namespace adiabatic

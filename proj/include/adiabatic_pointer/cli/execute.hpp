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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "adiabatic_pointer/cli/config.hpp"
#include "adiabatic_pointer/constants.hpp"
#include "adiabatic_pointer/csv.hpp"
#include "adiabatic_pointer/dynamics/hamiltonian.hpp"
#include "adiabatic_pointer/dynamics/propagator.hpp"
#include "adiabatic_pointer/gravity/hg_cell.hpp"
#include "adiabatic_pointer/gravity/limits.hpp"
#include "adiabatic_pointer/gravity/observables.hpp"
#include "adiabatic_pointer/protocols/protocols.hpp"
#include "adiabatic_pointer/quantum/density.hpp"
#include "adiabatic_pointer/sterngerlach/sterngerlach.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace adiabatic::cli {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Named scalars plus at most one table; everything a command reports.
struct Payload {
  std::vector<std::pair<std::string, Cell>> fields;
  std::optional<Table> table;
};

struct ResultEnvelope {
  std::string command;
  RunConfig resolved;
  std::string constants_version;
  Payload payload;
  double wall_time_s = 0.0;
};

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

namespace detail {

inline Cell flag(bool b) { return std::string(b ? "true" : "false"); }

inline PointerState pointer_from(const RunConfig& cfg) {
  const PointerGrid grid(cfg.number("grid_min"), cfg.number("grid_max"), cfg.integer("grid_points"));
  return make_gaussian_pointer(grid, cfg.number("pointer_center"), cfg.number("pointer_width"));
}

inline HamiltonianSpec spec_from(const RunConfig& cfg, double total_time) {
  const SpinOperator h_s = SpinOperator::sigma_dot(cfg.number("system_theta"), cfg.number("system_phi"))
                               .scaled(cfg.number("system_scale"));
  const SpinOperator q_s = SpinOperator::sigma_dot(cfg.number("coupling_theta"), cfg.number("coupling_phi"));
  const CouplingProfile profile = cfg.word("profile") == "smooth"
                                      ? CouplingProfile::smooth(total_time, cfg.number("ramp_fraction"))
                                      : CouplingProfile::square(total_time);
  return HamiltonianSpec{h_s, q_s, cfg.list("apparatus_coeffs"), profile};
}

inline PropagatorConfig propagator_from(const RunConfig& cfg) {
  return PropagatorConfig{cfg.integer("n_steps"),
                          cfg.word("splitting") == "strang" ? Splitting::Strang : Splitting::FirstOrder,
                          cfg.number("max_dt")};
}

inline Eigenstate which_from(const RunConfig& cfg) {
  return cfg.word("which") == "excited" ? Eigenstate::Excited : Eigenstate::Ground;
}

inline RunResult impulsive_from(const RunConfig& cfg, const Tolerances& tol) {
  const SpinState nu = make_spin_state(cfg.number("spin_theta"), cfg.number("spin_phi"));
  const SpinOperator q_s =
      SpinOperator::sigma_dot(cfg.number("observable_theta"), cfg.number("observable_phi"));
  const ImpulsiveMode mode =
      cfg.word("mode") == "propagated" ? ImpulsiveMode::Propagated : ImpulsiveMode::Analytic;
  return run_impulsive(nu, q_s, pointer_from(cfg), mode, tol);
}

inline RunResult protective_from(const RunConfig& cfg, const Tolerances& tol) {
  return run_protective(spec_from(cfg, cfg.number("total_time")), pointer_from(cfg),
                        which_from(cfg), propagator_from(cfg), tol);
}

inline void add_run_fields(Payload& out, const RunResult& r) {
  out.fields.emplace_back("initial_center", r.initial_center);
  out.fields.emplace_back("shift", r.shift);
  out.fields.emplace_back("reference_shift", r.reference_shift);
  out.fields.emplace_back("shift_error", std::abs(r.shift - r.reference_shift));
  out.fields.emplace_back("system_fidelity", r.system_fidelity);
  out.fields.emplace_back("linear_entropy", r.linear_entropy);
  out.fields.emplace_back("ensemble_purity", purity(r.ensemble_rho));
  const Eigen::Vector2d w = schmidt_weights(r.final_state);
  out.fields.emplace_back("minor_schmidt_weight", w(0));
  out.fields.emplace_back("final_norm", r.final_state.norm());
  Table t{{"branch_center", "weight"}, {}};
  for (const auto& b : r.branch_weights) t.rows.push_back({b.center, b.weight});
  out.table = std::move(t);
}

inline Payload run_sweep(const RunConfig& cfg, const Tolerances& tol) {
  const auto& Ts = cfg.list("total_times");
  const auto records = sweep_T(spec_from(cfg, Ts.front()), Ts, propagator_from(cfg),
                               pointer_from(cfg), which_from(cfg), tol);
  Payload out;
  Table t{{"T", "shift_error", "infidelity", "linear_entropy"}, {}};
  for (const auto& r : records) t.rows.push_back({r.T, r.shift_error, r.infidelity, r.linear_entropy});
  out.table = std::move(t);
  return out;
}

inline Payload run_sample(const RunConfig& cfg, const Tolerances& tol) {
  const RunResult run =
      cfg.word("run") == "impulsive" ? impulsive_from(cfg, tol) : protective_from(cfg, tol);
  const int n = cfg.integer("samples");
  const auto draws = sample_readouts(run, cfg.seed, n);
  Payload out;
  int failures = 0;
  Table t{{"index", "r", "fidelity_to_initial"}, {}};
  for (int i = 0; i < n; ++i) {
    const double f = draws[i].collapsed_spin.overlap(run.initial_spin);
    if (f < 0.5) ++failures;
    t.rows.push_back({static_cast<double>(i), draws[i].r, f});
  }
  out.fields.emplace_back("samples", static_cast<double>(n));
  out.fields.emplace_back("fraction_fidelity_below_half", static_cast<double>(failures) / n);
  out.fields.emplace_back("minor_schmidt_weight", schmidt_weights(run.final_state)(0));
  out.fields.emplace_back("linear_entropy", run.linear_entropy);
  out.table = std::move(t);
  return out;
}

inline Vec3 axis(double theta, double phi) { return direction(theta, phi); }

inline Payload run_sterngerlach(const RunConfig& cfg, const Constants& k) {
  sterngerlach::Params p;
  p.mu = cfg.number("mu");
  p.B0 = cfg.number("B0");
  p.n_tilde = axis(cfg.number("n_tilde_theta"), cfg.number("n_tilde_phi"));
  p.B_tilde = cfg.number("B_tilde");
  p.n = axis(cfg.number("n_theta"), cfg.number("n_phi"));
  p.L = cfg.number("L");
  p.v = cfg.number("v");
  p.epsilon = cfg.number("epsilon");
  p.M = cfg.number("M");
  p.x_max = cfg.number("x_max");
  p.drift_time = cfg.number("drift_time");
  const sterngerlach::Thresholds th{cfg.number("max_weakness"), cfg.number("min_momentum_ratio")};
  const auto r = sterngerlach::feasibility_report(p, th, k);
  Payload out;
  out.fields = {{"v_c_cm_per_s", r.v_c},
                {"B_i_lab_G_per_cm", r.B_i_lab},
                {"B_i_rounded_G_per_cm", r.B_i_rounded},
                {"weakness_ratio", r.weakness_ratio},
                {"P_meas_per_cm", r.P_meas},
                {"P_meas_rounded_per_cm", r.P_meas_rounded},
                {"width_momentum_per_cm", r.width_momentum},
                {"momentum_ratio", r.momentum_ratio},
                {"kick_velocity_cm_per_s", r.kick_velocity},
                {"displacement_cm", r.displacement},
                {"width_after_drift_cm", r.width_after_drift},
                {"width_at_zero_cm", r.width_at_zero},
                {"weak", flag(r.weak)},
                {"momentum_dominates", flag(r.momentum_dominates)},
                {"resolvable", flag(r.resolvable)},
                {"feasible", flag(r.feasible)},
                {"width_convention_flag", flag(r.width_convention_flag)}};
  return out;
}

inline Payload run_gravity_observables(const RunConfig& cfg, const Constants& k) {
  using namespace gravity;
  const SpinGravityParams p{cfg.number("alpha"), cfg.number("beta"), cfg.number("gamma")};
  const Rate rate = precession_rate(p.alpha, k);
  BodyContext hydrogen;
  hydrogen.test_mass = k.m_e;
  hydrogen.source_radius = k.a0;
  const LeitnerOkubo lo = leitner_okubo_A(p, hydrogen, Probe::Massive, k);
  HgCellConfig hg;
  hg.mu_N = k.mu_N;
  hg.phi = cfg.number("hg_phi");
  hg.B = cfg.number("hg_B");
  hg.B_ran = cfg.number("hg_B_ran");
  hg.cos_theta_ran = cfg.number("hg_cos_theta_ran");
  hg = with_gravity_coupling(hg, p.alpha, k);
  const HgFrequencies f = hg_frequencies(hg, k);
  Payload out;
  out.fields = {{"precession_rad_per_s", rate.rad_per_s},
                {"precession_hz", rate.hz},
                {"energy_splitting_eV", energy_splitting(p.alpha, k)},
                {"differential_acceleration_neutron", differential_acceleration(p.alpha, k.m_n, k)},
                {"differential_acceleration_electron", differential_acceleration(p.alpha, k.m_e, k)},
                {"leitner_okubo_A1_hydrogen", lo.A1},
                {"leitner_okubo_A2_hydrogen", lo.A2},
                {"hg_nu199_hz", f.nu199},
                {"hg_nu201_hz", f.nu201},
                {"hg_S_hz", hg_stray_free_S(hg, k)},
                {"earth_rotation_hz", k.Omega_E_hz()}};
  if (hg.B != 0.0) out.fields.emplace_back("hg_R", hg_observables(hg, k).R);
  return out;
}

inline Payload run_gravity_limits(const RunConfig& cfg, const Constants& k) {
  using namespace gravity;
  const std::string& input = cfg.word("input");
  auto limits = sorted_by_bound(input == "bundled" ? limits_table(k) : load_limits(input, k));
  Payload out;
  Table t{{"name", "kind", "value", "units", "sensitivity_K", "alpha", "quoted_alpha_bound",
           "ratio", "within_factor_3"},
          {}};
  for (const auto& lim : limits) {
    const double a = alpha_from_limit(lim, k);
    const double ratio = a / lim.quoted_alpha_bound;
    t.rows.push_back({lim.name, lim.kind, lim.value, lim.units, lim.sensitivity_K, a,
                      lim.quoted_alpha_bound, ratio,
                      flag(ratio <= 3.0 && ratio >= 1.0 / 3.0)});
  }
  out.table = std::move(t);
  return out;
}

inline Payload run_constants(const Constants& k) {
  Payload out;
  Table t{{"name", "value"}, {}};
  k.for_each([&](const char* name, const double& v) { t.rows.push_back({std::string(name), v}); });
  out.table = std::move(t);
  return out;
}

}  // namespace detail

/// Runs one validated command.
inline ResultEnvelope execute(const RunConfig& cfg, const Tolerances& tol = {},
                              const Constants& k = Constants::from_environment()) {
  const auto start = std::chrono::steady_clock::now();
  ResultEnvelope env{cfg.command, cfg, k.version, {}, 0.0};
  const std::string& c = cfg.command;
  if (c == "impulsive-run") {
    detail::add_run_fields(env.payload, detail::impulsive_from(cfg, tol));
  } else if (c == "protective-run") {
    detail::add_run_fields(env.payload, detail::protective_from(cfg, tol));
  } else if (c == "sweep-T") {
    env.payload = detail::run_sweep(cfg, tol);
  } else if (c == "sample-readout") {
    env.payload = detail::run_sample(cfg, tol);
  } else if (c == "sterngerlach-feasibility") {
    env.payload = detail::run_sterngerlach(cfg, k);
  } else if (c == "gravity-observables") {
    env.payload = detail::run_gravity_observables(cfg, k);
  } else if (c == "gravity-limits") {
    env.payload = detail::run_gravity_limits(cfg, k);
  } else if (c == "constants") {
    env.payload = detail::run_constants(k);
  } else {
    fail(ErrorKind::ValidationError, "unknown command '" + c + "'");
  }
  env.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return env;
}

/// Text and CSV carry only deterministic content; wall time appears in JSON only.
inline std::string render(const ResultEnvelope& env, Format format) {
  const Payload& p = env.payload;
  if (format == Format::Csv) {
    std::string out;
    if (p.table) {
      out += csv::join(p.table->columns) + "\n";
      for (const auto& row : p.table->rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(format_cell(c));
        out += csv::join(cells) + "\n";
      }
    } else {
      out += "key,value\n";
      for (const auto& [k, v] : p.fields) out += csv::join({k, format_cell(v)}) + "\n";
    }
    return out;
  }
  if (format == Format::Json) {
    auto cell_json = [](const Cell& c) -> nlohmann::ordered_json {
      if (const auto* d = std::get_if<double>(&c)) return *d;
      return std::get<std::string>(c);
    };
    nlohmann::ordered_json j;
    j["command"] = env.command;
    j["constants_version"] = env.constants_version;
    j["resolved_config"] = env.resolved.to_text();
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto& [k, v] : p.fields) fields[k] = cell_json(v);
    payload["fields"] = fields;
    if (p.table) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& row : p.table->rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[p.table->columns[i]] = cell_json(row[i]);
        rows.push_back(r);
      }
      payload["table"] = rows;
    }
    j["payload"] = payload;
    j["wall_time_s"] = env.wall_time_s;
    return j.dump(2) + "\n";
  }

  std::string out = "# " + env.command + " (constants " + env.constants_version + ")\n";
  std::size_t key_width = 0;
  for (const auto& [k, v] : p.fields) key_width = std::max(key_width, k.size());
  for (const auto& [k, v] : p.fields)
    out += k + std::string(key_width - k.size() + 2, ' ') + format_cell(v) + "\n";
  if (p.table) {
    if (!p.fields.empty()) out += "\n";
    std::vector<std::size_t> width(p.table->columns.size());
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = p.table->columns[i].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : p.table->rows) {
      std::vector<std::string> r;
      for (std::size_t i = 0; i < row.size(); ++i) {
        r.push_back(format_cell(row[i]));
        width[i] = std::max(width[i], r.back().size());
      }
      cells.push_back(std::move(r));
    }
    auto emit = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        out += r[i];
        if (i + 1 < r.size()) out += std::string(width[i] - r[i].size() + 2, ' ');
      }
      out += "\n";
    };
    emit(p.table->columns);
    for (const auto& r : cells) emit(r);
  }
  return out;
}

}  // namespace adiabatic::cli

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
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/kv_text.hpp"

namespace adiabatic::cli {

enum class Format { Text, Csv, Json };

inline std::string_view to_string(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Csv: return "csv";
    case Format::Json: return "json";
  }
  return "text";
}

inline std::optional<Format> parse_format(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  return std::nullopt;
}

enum class ParamKind { Number, Integer, List, Word };

/// Returns an empty string when the value is acceptable, else the violated constraint.
using Check = std::function<std::string(const KvValue&)>;

struct ParamSpec {
  std::string name;
  ParamKind kind;
  KvValue fallback;
  std::string help;
  Check check = {};
  std::vector<std::string> choices = {};
};

struct CommandSchema {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
};

namespace checks {

inline Check positive() {
  return [](const KvValue& v) { return std::get<double>(v) > 0.0 ? "" : std::string("must be > 0"); };
}
inline Check non_negative() {
  return [](const KvValue& v) { return std::get<double>(v) >= 0.0 ? "" : std::string("must be >= 0"); };
}
inline Check at_least(double lo) {
  return [lo](const KvValue& v) {
    return std::get<double>(v) >= lo ? "" : "must be >= " + format_double(lo);
  };
}
inline Check in_range(double lo, double hi) {
  return [lo, hi](const KvValue& v) {
    const double x = std::get<double>(v);
    return x >= lo && x <= hi ? ""
                              : "must lie in [" + format_double(lo) + ", " + format_double(hi) + "]";
  };
}
inline Check power_of_two_at_least_16() {
  return [](const KvValue& v) {
    const double x = std::get<double>(v);
    const auto n = static_cast<std::int64_t>(x);
    return n >= 16 && n <= (std::int64_t{1} << 24) && (n & (n - 1)) == 0
               ? ""
               : std::string("must be a power of two in [16, 2^24]");
  };
}
inline Check ascending_positive_list(std::size_t min_size) {
  return [min_size](const KvValue& v) {
    const auto& xs = std::get<std::vector<double>>(v);
    if (xs.size() < min_size) return "needs at least " + std::to_string(min_size) + " entries";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(xs[i] > 0.0)) return std::string("entries must be > 0");
      if (i && !(xs[i] > xs[i - 1])) return std::string("entries must be strictly ascending");
    }
    return std::string();
  };
}

}  // namespace checks

namespace detail {

inline std::vector<ParamSpec> pointer_params() {
  using namespace checks;
  return {
      {"grid_min", ParamKind::Number, -10.0, "left edge of the pointer grid"},
      {"grid_max", ParamKind::Number, 10.0, "right edge of the pointer grid"},
      {"grid_points", ParamKind::Integer, 1024.0, "grid size, a power of two >= 16",
       power_of_two_at_least_16()},
      {"pointer_center", ParamKind::Number, 0.0, "initial pointer center r0"},
      {"pointer_width", ParamKind::Number, 0.05, "initial pointer width eps (std. deviation)",
       positive()},
  };
}

inline std::vector<ParamSpec> protective_params() {
  using namespace checks;
  const double pi = std::numbers::pi;
  return {
      {"system_scale", ParamKind::Number, -1.0, "H_S = system_scale * sigma.n(system_theta, system_phi)"},
      {"system_theta", ParamKind::Number, 0.0, "polar angle of the H_S axis (rad)", in_range(0.0, pi)},
      {"system_phi", ParamKind::Number, 0.0, "azimuth of the H_S axis (rad)", in_range(0.0, 2.0 * pi)},
      {"coupling_theta", ParamKind::Number, pi / 3.0, "polar angle of Q_S = sigma.n (rad)",
       in_range(0.0, pi)},
      {"coupling_phi", ParamKind::Number, 0.0, "azimuth of Q_S (rad)", in_range(0.0, 2.0 * pi)},
      {"apparatus_coeffs", ParamKind::List, std::vector<double>{},
       "H_A polynomial coefficients in Q_A, constant term first"},
      {"profile", ParamKind::Word, std::string("square"), "coupling profile", {}, {"square", "smooth"}},
      {"ramp_fraction", ParamKind::Number, 0.1, "ramp length / T for the smooth profile",
       in_range(0.0, 0.25)},
      {"which", ParamKind::Word, std::string("ground"), "H_S eigenstate to protect", {},
       {"ground", "excited"}},
      {"n_steps", ParamKind::Integer, 1000.0, "minimum number of splitting steps", at_least(10.0)},
      {"max_dt", ParamKind::Number, 0.05, "maximum step length (0 = n_steps only)", non_negative()},
      {"splitting", ParamKind::Word, std::string("strang"), "operator splitting", {},
       {"strang", "first_order"}},
  };
}

inline std::vector<ParamSpec> impulsive_params() {
  using namespace checks;
  const double pi = std::numbers::pi;
  return {
      {"spin_theta", ParamKind::Number, pi / 6.0, "initial spin (cos theta/2, e^{i phi} sin theta/2)",
       in_range(0.0, pi)},
      {"spin_phi", ParamKind::Number, 0.0, "initial spin azimuth (rad)", in_range(0.0, 2.0 * pi)},
      {"observable_theta", ParamKind::Number, 0.0, "polar angle of Q_S = sigma.n (rad)",
       in_range(0.0, pi)},
      {"observable_phi", ParamKind::Number, 0.0, "azimuth of Q_S (rad)", in_range(0.0, 2.0 * pi)},
      {"mode", ParamKind::Word, std::string("analytic"), "branch translation or full propagation",
       {}, {"analytic", "propagated"}},
  };
}

template <typename... Lists>
std::vector<ParamSpec> concat(Lists... lists) {
  std::vector<ParamSpec> out;
  (out.insert(out.end(), lists.begin(), lists.end()), ...);
  return out;
}

inline ParamSpec seed_param() {
  return {"seed", ParamKind::Integer, 0.0, "random seed", checks::in_range(0.0, 9007199254740992.0)};
}

}  // namespace detail

/// Every command with its documented defaults.
inline const std::vector<CommandSchema>& schemas() {
  using namespace checks;
  static const std::vector<CommandSchema> all = [] {
    using detail::concat;
    std::vector<CommandSchema> s;
    s.push_back({"impulsive-run", "strong coupling: Born branches of Q_S",
                 concat(detail::impulsive_params(), detail::pointer_params(),
                        std::vector<ParamSpec>{detail::seed_param()})});
    s.push_back({"protective-run", "weak adiabatic coupling over [0, T]",
                 concat(std::vector<ParamSpec>{{"total_time", ParamKind::Number, 500.0,
                                                "coupling duration T", positive()}},
                        detail::protective_params(), detail::pointer_params(),
                        std::vector<ParamSpec>{detail::seed_param()})});
    s.push_back({"sweep-T", "protective runs over a list of T",
                 concat(std::vector<ParamSpec>{{"total_times", ParamKind::List,
                                                std::vector<double>{50, 100, 200, 400, 800},
                                                "ascending coupling durations",
                                                ascending_positive_list(3)}},
                        detail::protective_params(), detail::pointer_params(),
                        std::vector<ParamSpec>{detail::seed_param()})});
    s.push_back({"sample-readout", "Born-rule pointer readouts of a run",
                 concat(std::vector<ParamSpec>{
                            {"run", ParamKind::Word, std::string("protective"), "run to sample", {},
                             {"protective", "impulsive"}},
                            {"samples", ParamKind::Integer, 1000.0, "number of readouts",
                             in_range(1.0, 1e7)},
                            {"total_time", ParamKind::Number, 100.0, "coupling duration T (protective)",
                             positive()}},
                        detail::protective_params(), detail::impulsive_params(),
                        detail::pointer_params(), std::vector<ParamSpec>{detail::seed_param()})});
    s.push_back({"sterngerlach-feasibility", "cold-atom Stern-Gerlach feasibility report",
                 {{"mu", ParamKind::Number, 1.0, "magnetic moment (nuclear magnetons)", positive()},
                  {"B0", ParamKind::Number, 1.0, "static field (G)", positive()},
                  {"n_tilde_theta", ParamKind::Number, 0.0, "static-field axis polar angle (rad)",
                   in_range(0.0, std::numbers::pi)},
                  {"n_tilde_phi", ParamKind::Number, 0.0, "static-field axis azimuth (rad)",
                   in_range(0.0, 2.0 * std::numbers::pi)},
                  {"B_tilde", ParamKind::Number, 1e11, "gradient parameter (G, natural units)",
                   positive()},
                  {"n_theta", ParamKind::Number, 0.0, "gradient axis polar angle (rad)",
                   in_range(0.0, std::numbers::pi)},
                  {"n_phi", ParamKind::Number, 0.0, "gradient axis azimuth (rad)",
                   in_range(0.0, 2.0 * std::numbers::pi)},
                  {"L", ParamKind::Number, 30.0, "field-region length (cm)", positive()},
                  {"v", ParamKind::Number, 1.0, "beam velocity (cm/s)", positive()},
                  {"epsilon", ParamKind::Number, 0.1, "beam width (cm)", positive()},
                  {"M", ParamKind::Number, 50.0, "atom mass (amu)", positive()},
                  {"x_max", ParamKind::Number, 1.0, "transverse excursion (cm)", positive()},
                  {"drift_time", ParamKind::Number, 30.0, "free drift after the field (s)", positive()},
                  {"max_weakness", ParamKind::Number, 0.2, "largest acceptable B_i x_max / B0",
                   positive()},
                  {"min_momentum_ratio", ParamKind::Number, 100.0,
                   "smallest acceptable P_meas * epsilon", positive()}}});
    s.push_back({"gravity-observables", "observables of the spin-gravity couplings",
                 {{"alpha", ParamKind::Number, 1.0, "alpha coupling"},
                  {"beta", ParamKind::Number, 0.0, "beta coupling"},
                  {"gamma", ParamKind::Number, 2.0, "gamma coupling"},
                  {"hg_phi", ParamKind::Number, 0.0, "Hg cell: applied field vs vertical (rad)",
                   in_range(0.0, std::numbers::pi)},
                  {"hg_B", ParamKind::Number, 1e-6, "Hg cell: applied field (T)"},
                  {"hg_B_ran", ParamKind::Number, 0.0, "Hg cell: stray field (T)"},
                  {"hg_cos_theta_ran", ParamKind::Number, 0.0, "Hg cell: <cos theta_ran>",
                   in_range(-1.0, 1.0)}}});
    s.push_back({"gravity-limits", "published bounds converted to alpha",
                 {{"input", ParamKind::Word, std::string("bundled"),
                   "limits CSV path, or 'bundled' for the built-in table"}}});
    s.push_back({"constants", "the physical constants table in use", {}});
    return s;
  }();
  return all;
}

inline const CommandSchema& schema_for(std::string_view command) {
  for (const auto& s : schemas())
    if (s.name == command) return s;
  fail(ErrorKind::ValidationError, "unknown command '" + std::string(command) + "'");
}

/// A fully defaulted and validated command configuration.
struct RunConfig {
  std::string command;
  std::vector<std::pair<std::string, KvValue>> params;  // schema order
  std::uint64_t seed = 0;
  Format format = Format::Text;
  std::string output_path;

  const KvValue& get(std::string_view key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    fail(ErrorKind::ValidationError, "no parameter '" + std::string(key) + "' for " + command);
  }
  double number(std::string_view key) const { return std::get<double>(get(key)); }
  int integer(std::string_view key) const { return static_cast<int>(std::get<double>(get(key))); }
  const std::vector<double>& list(std::string_view key) const {
    return std::get<std::vector<double>>(get(key));
  }
  const std::string& word(std::string_view key) const { return std::get<std::string>(get(key)); }

  /// The resolved config in the same `key = value` syntax parse_config reads.
  std::string to_text() const {
    std::string out = "command = " + command + "\n";
    for (const auto& [k, v] : params) out += k + " = " + format_kv_value(v) + "\n";
    return out;
  }

  bool operator==(const RunConfig& other) const {
    if (command != other.command || params.size() != other.params.size() || seed != other.seed)
      return false;
    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i].first != other.params[i].first || params[i].second != other.params[i].second)
        return false;
    return true;
  }
};

namespace detail {

inline void validate_value(const ParamSpec& spec, const KvValue& value, int line) {
  const std::string where =
      "'" + spec.name + "'" + (line > 0 ? " (line " + std::to_string(line) + ")" : "");
  switch (spec.kind) {
    case ParamKind::Number:
      if (!std::holds_alternative<double>(value))
        fail(ErrorKind::ValidationError, where + " must be a number");
      break;
    case ParamKind::Integer: {
      const auto* d = std::get_if<double>(&value);
      if (!d || *d != std::floor(*d)) fail(ErrorKind::ValidationError, where + " must be an integer");
      break;
    }
    case ParamKind::List:
      if (!std::holds_alternative<std::vector<double>>(value))
        fail(ErrorKind::ValidationError, where + " must be a list like [1, 2, 3]");
      break;
    case ParamKind::Word: {
      const auto* s = std::get_if<std::string>(&value);
      if (!s) fail(ErrorKind::ValidationError, where + " must be a word");
      if (!spec.choices.empty() &&
          std::find(spec.choices.begin(), spec.choices.end(), *s) == spec.choices.end()) {
        std::string opts;
        for (const auto& c : spec.choices) opts += (opts.empty() ? "" : ", ") + c;
        fail(ErrorKind::ValidationError, where + " must be one of {" + opts + "}");
      }
      break;
    }
  }
  if (spec.check) {
    const std::string problem = spec.check(value);
    if (!problem.empty()) fail(ErrorKind::ValidationError, where + " " + problem);
  }
}

}  // namespace detail

/// Parses `source` for `command`, applies `overrides` (CLI flags) on top, fills
/// defaults and validates every parameter. A `command = ...` line in the source
/// must agree with `command` when both are given.
inline RunConfig parse_config(std::string_view source, std::string command = {},
                              const std::vector<KvEntry>& overrides = {}) {
  std::vector<KvEntry> entries = parse_kv_text(source);
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    if (it->key != "command") continue;
    const auto* s = std::get_if<std::string>(&it->value);
    if (!s) fail(ErrorKind::ValidationError, "'command' must be a word");
    if (!command.empty() && *s != command)
      fail(ErrorKind::ValidationError,
           "config is for command '" + *s + "' but '" + command + "' was requested");
    command = *s;
    entries.erase(it);
    break;
  }
  if (command.empty()) fail(ErrorKind::ValidationError, "no command given");
  const CommandSchema& schema = schema_for(command);

  auto find_spec = [&](const std::string& key) -> const ParamSpec* {
    for (const auto& p : schema.params)
      if (p.name == key) return &p;
    return nullptr;
  };
  for (const auto& e : entries)
    if (!find_spec(e.key))
      fail(ErrorKind::ValidationError, "unknown key '" + e.key + "' (line " +
                                           std::to_string(e.line) + ") for command " + command);
  for (const auto& e : overrides)
    if (!find_spec(e.key))
      fail(ErrorKind::ValidationError, "unknown key '" + e.key + "' for command " + command);

  RunConfig cfg;
  cfg.command = command;
  for (const auto& spec : schema.params) {
    KvValue value = spec.fallback;
    int line = 0;
    for (const auto& e : entries)
      if (e.key == spec.name) {
        value = e.value;
        line = e.line;
      }
    for (const auto& e : overrides)
      if (e.key == spec.name) {
        value = e.value;
        line = 0;
      }
    detail::validate_value(spec, value, line);
    cfg.params.emplace_back(spec.name, std::move(value));
  }
  for (const auto& [k, v] : cfg.params)
    if (k == "seed") cfg.seed = static_cast<std::uint64_t>(std::get<double>(v));

  auto has = [&](std::string_view key) { return find_spec(std::string(key)) != nullptr; };
  if (has("grid_min") && !(cfg.number("grid_min") < cfg.number("grid_max")))
    fail(ErrorKind::ValidationError, "'grid_min' must be below 'grid_max'");
  if (has("ramp_fraction") && cfg.word("profile") == "smooth" && !(cfg.number("ramp_fraction") > 0.0))
    fail(ErrorKind::ValidationError, "'ramp_fraction' must be > 0 for the smooth profile");
  return cfg;
}

/// Usage text listing every parameter and its default.
inline std::string describe(const CommandSchema& schema) {
  std::string out = schema.summary + "\n";
  if (schema.params.empty()) return out;
  out += "config keys (default):\n";
  for (const auto& p : schema.params) {
    out += "  " + p.name + " = " + format_kv_value(p.fallback) + "\n      " + p.help;
    if (!p.choices.empty()) {
      out += " {";
      for (std::size_t i = 0; i < p.choices.size(); ++i) out += (i ? "," : "") + p.choices[i];
      out += "}";
    }
    out += "\n";
  }
  return out;
}

}  // namespace adiabatic::cli

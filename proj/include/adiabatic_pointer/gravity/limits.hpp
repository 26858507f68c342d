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
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "adiabatic_pointer/constants.hpp"
#include "adiabatic_pointer/csv.hpp"
#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/gravity/observables.hpp"
#include "adiabatic_pointer/limits_data.hpp"

namespace adiabatic::gravity {

/// A published bound. `kind` selects the kernel that turns `value` into alpha:
///   energy       value in eV, alpha = E / (K dE(1))
///   frequency    value in Hz/mHz/uHz/nHz, converted by E = h nu
///   A1, A2       Leitner-Okubo parameter, massive or photon kernel
///   alpha_prime  circular-polarization coupling, alpha = alpha' 2r / lambda
struct ExperimentLimit {
  std::string name;
  std::string kind;
  double value = 0.0;
  std::string units;
  double sensitivity_K = 1.0;
  BodyContext context;
  double quoted_alpha_bound = 0.0;
  std::string note;
};

inline constexpr std::array<std::string_view, 14> kLimitColumns = {
    "name",     "kind",          "value",            "units",      "sensitivity_K",
    "source_GM", "source_radius", "test_mass",        "velocity",   "photon_energy",
    "impact_parameter", "wavelength", "quoted_alpha_bound", "note"};

/// Scale of a frequency unit to Hz; nullopt for an unknown unit.
inline std::optional<double> frequency_scale(std::string_view units) {
  if (units == "Hz") return 1.0;
  if (units == "mHz") return 1e-3;
  if (units == "uHz") return 1e-6;
  if (units == "nHz") return 1e-9;
  return std::nullopt;
}

inline bool is_known_kind(std::string_view kind) {
  return kind == "energy" || kind == "frequency" || kind == "A1" || kind == "A2" ||
         kind == "alpha_prime";
}

/// Bound on alpha implied by `lim`.
inline double alpha_from_limit(const ExperimentLimit& lim,
                               const Constants& k = Constants::standard()) {
  if (!(lim.value > 0.0) || !(lim.sensitivity_K > 0.0))
    fail(ErrorKind::InvalidState, lim.name + ": value and sensitivity_K must be positive");
  const double K = lim.sensitivity_K;
  if (lim.kind == "energy") {
    if (lim.units != "eV") fail(ErrorKind::InvalidState, lim.name + ": energy limits use eV");
    return lim.value / (K * energy_splitting(1.0, k));
  }
  if (lim.kind == "frequency") {
    const auto scale = frequency_scale(lim.units);
    if (!scale) fail(ErrorKind::InvalidState, lim.name + ": unknown frequency unit '" + lim.units + "'");
    const double energy_ev = k.h * lim.value * *scale / k.eV;
    return energy_ev / (K * energy_splitting(1.0, k));
  }
  if (lim.kind == "A1" || lim.kind == "A2") {
    const BodyContext& ctx = lim.context;
    if (!ctx.test_mass && !ctx.photon_energy && !ctx.impact_parameter)
      fail(ErrorKind::MissingContext, lim.name + ": A-kind limits need test_mass or photon context");
    const Probe probe = ctx.test_mass ? Probe::Massive : Probe::Photon;
    return lim.value / (K * leitner_okubo_kernel(ctx, probe, k));
  }
  if (lim.kind == "alpha_prime") {
    const double lambda = require(lim.context.wavelength, "wavelength");
    const double r = require(lim.context.source_radius, "source_radius");
    return harwit_conversion(lim.value, lambda, r, Direction::ToAlpha) / K;
  }
  fail(ErrorKind::UnknownKind, lim.name + ": unknown limit kind '" + lim.kind + "'");
}

namespace detail {

inline double parse_number(const std::string& s, bool& ok) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  ok = ec == std::errc{} && ptr == end && std::isfinite(v);
  return v;
}

}  // namespace detail

/// Parses and validates a limits table. Any schema violation is DatasetCorrupt.
inline std::vector<ExperimentLimit> parse_limits_csv(std::string_view text,
                                                     const Constants& k = Constants::standard()) {
  std::vector<csv::Row> rows;
  std::string error;
  if (!csv::read(text, rows, error)) fail(ErrorKind::DatasetCorrupt, error);
  if (rows.empty()) fail(ErrorKind::DatasetCorrupt, "limits table is empty");
  const auto& header = rows.front();
  if (header.fields.size() != kLimitColumns.size() ||
      !std::equal(header.fields.begin(), header.fields.end(), kLimitColumns.begin()))
    fail(ErrorKind::DatasetCorrupt, "line " + std::to_string(header.line) +
                                        ": header does not match the limits schema");

  std::vector<ExperimentLimit> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string where = "line " + std::to_string(row.line) + ": ";
    if (row.fields.size() != kLimitColumns.size())
      fail(ErrorKind::DatasetCorrupt, where + "expected " + std::to_string(kLimitColumns.size()) +
                                          " fields, got " + std::to_string(row.fields.size()));
    auto number = [&](std::size_t col) {
      bool ok = false;
      const double v = detail::parse_number(row.fields[col], ok);
      if (!ok)
        fail(ErrorKind::DatasetCorrupt,
             where + "column '" + std::string(kLimitColumns[col]) + "' is not a number");
      return v;
    };
    auto optional_number = [&](std::size_t col) -> std::optional<double> {
      if (row.fields[col].empty()) return std::nullopt;
      const double v = number(col);
      if (!(v > 0.0))
        fail(ErrorKind::DatasetCorrupt,
             where + "column '" + std::string(kLimitColumns[col]) + "' must be positive");
      return v;
    };

    ExperimentLimit lim;
    lim.name = row.fields[0];
    lim.kind = row.fields[1];
    lim.value = number(2);
    lim.units = row.fields[3];
    lim.sensitivity_K = number(4);
    lim.context.source_GM = optional_number(5);
    lim.context.source_radius = optional_number(6);
    lim.context.test_mass = optional_number(7);
    lim.context.velocity = optional_number(8);
    lim.context.photon_energy = optional_number(9);
    lim.context.impact_parameter = optional_number(10);
    lim.context.wavelength = optional_number(11);
    lim.quoted_alpha_bound = number(12);
    lim.note = row.fields[13];

    if (lim.name.empty()) fail(ErrorKind::DatasetCorrupt, where + "empty name");
    if (!is_known_kind(lim.kind))
      fail(ErrorKind::DatasetCorrupt, where + "unknown kind '" + lim.kind + "'");
    if (!(lim.value > 0.0) || !(lim.sensitivity_K > 0.0) || !(lim.quoted_alpha_bound > 0.0))
      fail(ErrorKind::DatasetCorrupt,
           where + "value, sensitivity_K and quoted_alpha_bound must be positive");
    for (const auto& prev : out)
      if (prev.name == lim.name)
        fail(ErrorKind::DatasetCorrupt, where + "duplicate name '" + lim.name + "'");
    try {
      (void)alpha_from_limit(lim, k);
    } catch (const Error& e) {
      fail(ErrorKind::DatasetCorrupt, where + e.what());
    }
    out.push_back(std::move(lim));
  }
  return out;
}

/// The bundled table of published bounds.
inline std::vector<ExperimentLimit> limits_table(const Constants& k = Constants::standard()) {
  return parse_limits_csv(data::kLimitsCsv, k);
}

inline std::vector<ExperimentLimit> load_limits(const std::string& path,
                                                const Constants& k = Constants::standard()) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open limits table '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_limits_csv(buffer.str(), k);
}

/// Sorted by quoted bound, then name, for stable output.
inline std::vector<ExperimentLimit> sorted_by_bound(std::vector<ExperimentLimit> limits) {
  std::stable_sort(limits.begin(), limits.end(), [](const auto& a, const auto& b) {
    if (a.quoted_alpha_bound != b.quoted_alpha_bound)
      return a.quoted_alpha_bound < b.quoted_alpha_bound;
    return a.name < b.name;
  });
  return limits;
}

}  // namespace adiabatic::gravity

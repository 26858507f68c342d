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

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/kv_text.hpp"

namespace adiabatic {

/// The one table of physical constants used anywhere in the library. All
/// values are SI; the Stern-Gerlach code converts to Gaussian-cgs through the
/// helpers at the bottom of this struct.
///
/// Standard values: CODATA 2018 for fundamental constants, IERS for the earth's
/// rotation rate, IAU 2015 nominal values for GM and the solar radius.
struct Constants {
  std::string version = "CODATA2018-IAU2015-v1";

  double G = 6.67430e-11;                 // m^3 kg^-1 s^-2
  double GM_earth = 3.986004418e14;       // m^3 s^-2
  double R_earth = 6.371e6;               // m, mean radius
  double GM_sun = 1.3271244e20;           // m^3 s^-2
  double R_sun = 6.957e8;                 // m
  double c = 299792458.0;                 // m s^-1
  double hbar = 1.054571817e-34;          // J s
  double h = 6.62607015e-34;              // J s
  double eV = 1.602176634e-19;            // J
  double mu_N = 5.0507837461e-27;         // J T^-1
  double m_e = 9.1093837015e-31;          // kg
  double m_n = 1.67492749804e-27;         // kg
  double m_p = 1.67262192369e-27;         // kg
  double amu = 1.66053906660e-27;         // kg
  double a0 = 5.29177210903e-11;          // m
  double Omega_E = 7.2921150e-5;          // rad s^-1

  /// Local gravitational acceleration GM/R^2 at the earth's surface.
  double g_earth() const { return GM_earth / (R_earth * R_earth); }
  /// Earth's rotation expressed as a frequency (Hz).
  double Omega_E_hz() const { return Omega_E / (2.0 * std::numbers::pi); }

  // Gaussian-cgs views.
  double c_cgs() const { return c * 1e2; }            // cm s^-1
  double hbar_cgs() const { return hbar * 1e7; }      // erg s
  double mu_N_cgs() const { return mu_N * 1e3; }      // erg G^-1
  double amu_cgs() const { return amu * 1e3; }        // g

  static const Constants& standard() {
    static const Constants table{};
    return table;
  }

  /// Named access used for (de)serialization and the `constants` command.
  template <typename Fn>
  void for_each(Fn&& fn) { visit(*this, fn); }
  template <typename Fn>
  void for_each(Fn&& fn) const { visit(*this, fn); }

  /// Reads a `key = value` table. Keys not listed keep their standard value;
  /// `version` is mandatory so envelopes always identify the table in use.
  static Constants from_text(std::string_view text) {
    Constants table;
    bool have_version = false;
    for (const auto& entry : parse_kv_text(text)) {
      if (entry.key == "version") {
        if (const auto* s = std::get_if<std::string>(&entry.value)) {
          table.version = *s;
        } else {
          table.version = format_kv_value(entry.value);
        }
        have_version = true;
        continue;
      }
      bool matched = false;
      table.for_each([&](const char* name, double& slot) {
        if (entry.key != name) return;
        matched = true;
        const auto* v = std::get_if<double>(&entry.value);
        if (!v || !(*v > 0.0))
          fail(ErrorKind::ValidationError,
               "constants table: '" + entry.key + "' must be a positive number");
        slot = *v;
      });
      if (!matched)
        fail(ErrorKind::ValidationError, "constants table: unknown key '" + entry.key + "'");
    }
    if (!have_version) fail(ErrorKind::ValidationError, "constants table: missing 'version'");
    return table;
  }

  static Constants from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::IoError, "cannot open constants table '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
  }

  /// Standard table unless ADIABATIC_POINTER_CONSTANTS names an alternate file.
  static Constants from_environment() {
    if (const char* path = std::getenv("ADIABATIC_POINTER_CONSTANTS"); path && *path)
      return from_file(path);
    return standard();
  }

  std::string to_text() const {
    std::string out = "version = " + version + "\n";
    for_each([&](const char* name, const double& value) {
      out += std::string(name) + " = " + format_double(value) + "\n";
    });
    return out;
  }

 private:
  template <typename Self, typename Fn>
  static void visit(Self& self, Fn& fn) {
    fn("G", self.G);
    fn("GM_earth", self.GM_earth);
    fn("R_earth", self.R_earth);
    fn("GM_sun", self.GM_sun);
    fn("R_sun", self.R_sun);
    fn("c", self.c);
    fn("hbar", self.hbar);
    fn("h", self.h);
    fn("eV", self.eV);
    fn("mu_N", self.mu_N);
    fn("m_e", self.m_e);
    fn("m_n", self.m_n);
    fn("m_p", self.m_p);
    fn("amu", self.amu);
    fn("a0", self.a0);
    fn("Omega_E", self.Omega_E);
  }
};

}  // namespace adiabatic

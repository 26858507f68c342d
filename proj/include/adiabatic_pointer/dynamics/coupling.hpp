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
#include <string_view>

#include "adiabatic_pointer/errors.hpp"

namespace adiabatic {

enum class ProfileKind { Square, Smooth };

inline std::string_view to_string(ProfileKind k) {
  return k == ProfileKind::Square ? "square" : "smooth";
}

/// Time dependence g(t) of the system-apparatus coupling on [0, T], normalized
/// so that its integral over the window is 1.
///
///  - square: g = 1/T throughout.
///  - smooth: sin^2 ramps of duration ramp_fraction * T at both ends around a
///    flat plateau; g(0) = g(T) = 0.
class CouplingProfile {
 public:
  CouplingProfile(ProfileKind kind, double total_time, double ramp_fraction = 0.0)
      : kind_(kind), total_time_(total_time), ramp_fraction_(ramp_fraction) {
    if (!(total_time > 0.0) || !std::isfinite(total_time))
      fail(ErrorKind::InvalidState, "coupling total_time must be positive");
    if (!(ramp_fraction >= 0.0 && ramp_fraction <= 0.25))
      fail(ErrorKind::InvalidState, "ramp_fraction must lie in [0, 0.25]");
    if (kind == ProfileKind::Smooth && !(ramp_fraction > 0.0))
      fail(ErrorKind::InvalidState, "a smooth profile needs ramp_fraction > 0");
  }

  static CouplingProfile square(double total_time) {
    return CouplingProfile(ProfileKind::Square, total_time, 0.0);
  }
  static CouplingProfile smooth(double total_time, double ramp_fraction) {
    return CouplingProfile(ProfileKind::Smooth, total_time, ramp_fraction);
  }

  ProfileKind kind() const { return kind_; }
  double total_time() const { return total_time_; }
  double ramp_fraction() const { return ramp_fraction_; }

  CouplingProfile with_total_time(double total_time) const {
    return CouplingProfile(kind_, total_time, ramp_fraction_);
  }

  /// g(t); OutOfWindow outside [0, T].
  double value(double t) const {
    if (!(t >= 0.0 && t <= total_time_))
      fail(ErrorKind::OutOfWindow,
           "t = " + std::to_string(t) + " outside [0, " + std::to_string(total_time_) + "]");
    if (kind_ == ProfileKind::Square) return 1.0 / total_time_;
    const double ramp = ramp_time();
    double shape = 1.0;
    if (t < ramp) {
      shape = std::pow(std::sin(std::numbers::pi * t / (2.0 * ramp)), 2);
    } else if (t > total_time_ - ramp) {
      shape = std::pow(std::sin(std::numbers::pi * (total_time_ - t) / (2.0 * ramp)), 2);
    }
    return shape / plateau_equivalent();
  }

  /// Closed-form integral of g over [t0, t1] (clamped to the window).
  double integral(double t0, double t1) const { return cumulative(t1) - cumulative(t0); }

 private:
  double ramp_time() const { return ramp_fraction_ * total_time_; }
  // Integral of the unnormalized shape: each sin^2 ramp contributes half its length.
  double plateau_equivalent() const { return total_time_ - ramp_time(); }

  double cumulative(double t) const {
    t = std::clamp(t, 0.0, total_time_);
    if (kind_ == ProfileKind::Square) return t / total_time_;
    const double ramp = ramp_time();
    const double pi = std::numbers::pi;
    // Antiderivative of sin^2(pi u / (2 ramp)) is u/2 - ramp/(2 pi) sin(pi u / ramp).
    auto ramp_area = [&](double u) { return 0.5 * u - ramp / (2.0 * pi) * std::sin(pi * u / ramp); };
    double area = 0.0;
    if (t <= ramp) {
      area = ramp_area(t);
    } else if (t <= total_time_ - ramp) {
      area = 0.5 * ramp + (t - ramp);
    } else {
      const double remaining = total_time_ - t;
      area = 0.5 * ramp + (total_time_ - 2.0 * ramp) + (0.5 * ramp - ramp_area(remaining));
    }
    return area / plateau_equivalent();
  }

  ProfileKind kind_;
  double total_time_;
  double ramp_fraction_;
};

/// g(t) for a profile; the free-function form used by the CLI and tests.
inline double coupling_value(const CouplingProfile& p, double t) { return p.value(t); }

}  // namespace adiabatic

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
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "adiabatic_pointer/errors.hpp"
#include "adiabatic_pointer/quantum/spin.hpp"
#include "adiabatic_pointer/tolerances.hpp"

namespace adiabatic {

/// Periodic grid on the pointer coordinate R_A. Points sit at
/// r_min + k * dr for k = 0 .. n_points - 1, with dr = (r_max - r_min) / n_points.
class PointerGrid {
 public:
  PointerGrid(double r_min, double r_max, int n_points)
      : r_min_(r_min), r_max_(r_max), n_points_(n_points) {
    if (!(r_min < r_max))
      fail(ErrorKind::InvalidState, "pointer grid requires r_min < r_max");
    if (n_points < 16 || (n_points & (n_points - 1)) != 0)
      fail(ErrorKind::InvalidState, "pointer grid size must be a power of two >= 16, got " +
                                        std::to_string(n_points));
  }

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  int size() const { return n_points_; }
  double length() const { return r_max_ - r_min_; }
  double spacing() const { return length() / n_points_; }
  double position(int k) const { return r_min_ + k * spacing(); }

  /// Eigenvalue of Q_A (conjugate to R_A) carried by FFT bin k.
  double wavenumber(int k) const {
    const int signed_k = k < n_points_ / 2 ? k : k - n_points_;
    return 2.0 * std::numbers::pi * signed_k / length();
  }

  Eigen::VectorXd positions() const {
    Eigen::VectorXd r(n_points_);
    for (int k = 0; k < n_points_; ++k) r(k) = position(k);
    return r;
  }
  Eigen::VectorXd wavenumbers() const {
    Eigen::VectorXd q(n_points_);
    for (int k = 0; k < n_points_; ++k) q(k) = wavenumber(k);
    return q;
  }

  bool operator==(const PointerGrid& other) const {
    return r_min_ == other.r_min_ && r_max_ == other.r_max_ && n_points_ == other.n_points_;
  }

 private:
  double r_min_;
  double r_max_;
  int n_points_;
};

namespace spectral {

// Eigen's FFT object is cheap to build; one per call keeps these functions pure.
inline Eigen::VectorXcd forward(const Eigen::VectorXcd& psi) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out(psi.size());
  fft.fwd(out, psi);
  return out;
}

inline Eigen::VectorXcd inverse(const Eigen::VectorXcd& spectrum) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out(spectrum.size());
  fft.inv(out, spectrum);
  return out;
}

/// psi(r) -> psi(r - shift), i.e. exp(-i shift Q_A) applied spectrally.
inline Eigen::VectorXcd translate(const Eigen::VectorXcd& psi, const PointerGrid& grid,
                                  double shift) {
  Eigen::VectorXcd spec = forward(psi);
  for (int k = 0; k < grid.size(); ++k) spec(k) *= std::polar(1.0, -grid.wavenumber(k) * shift);
  return inverse(spec);
}

}  // namespace spectral

inline double discrete_norm(const Eigen::VectorXcd& amps, const PointerGrid& grid) {
  return amps.squaredNorm() * grid.spacing();
}

/// Pointer wavefunction sampled on a PointerGrid; sum |psi_k|^2 dr = 1.
class PointerState {
 public:
  PointerState(PointerGrid grid, Eigen::VectorXcd amps, const Tolerances& tol = {})
      : grid_(grid), amps_(std::move(amps)) {
    if (amps_.size() != grid_.size())
      fail(ErrorKind::InvalidState, "pointer amplitudes do not match the grid size");
    const double n = discrete_norm(amps_, grid_);
    if (!(std::abs(n - 1.0) <= tol.pointer_norm))
      fail(ErrorKind::InvalidState, "pointer state norm " + std::to_string(n) + " differs from 1");
  }

  static PointerState normalized(PointerGrid grid, Eigen::VectorXcd amps) {
    const double n = std::sqrt(discrete_norm(amps, grid));
    if (!(n > 0.0)) fail(ErrorKind::InvalidState, "cannot normalize a zero pointer state");
    amps /= n;
    return PointerState(grid, std::move(amps));
  }

  const PointerGrid& grid() const { return grid_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

  PointerState translated(double shift) const {
    return PointerState(grid_, spectral::translate(amps_, grid_, shift));
  }

 private:
  PointerGrid grid_;
  Eigen::VectorXcd amps_;
};

/// Gaussian packet psi(r) ~ exp(-(r - center)^2 / (4 width^2)), so that the
/// position variance is width^2. The 5-width support must fit inside the grid.
inline PointerState make_gaussian_pointer(const PointerGrid& grid, double center, double width) {
  if (!(width > 0.0)) fail(ErrorKind::InvalidState, "pointer width must be positive");
  if (center - 5.0 * width < grid.r_min() || center + 5.0 * width > grid.r_max())
    fail(ErrorKind::GridTooNarrow,
         "support [" + std::to_string(center - 5.0 * width) + ", " +
             std::to_string(center + 5.0 * width) + "] leaves the grid [" +
             std::to_string(grid.r_min()) + ", " + std::to_string(grid.r_max()) + "]");
  Eigen::VectorXcd amps(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const double d = grid.position(k) - center;
    amps(k) = std::exp(-d * d / (4.0 * width * width));
  }
  return PointerState::normalized(grid, std::move(amps));
}

/// <R_A> = sum r_k |psi_k|^2 dr
inline double pointer_center(const PointerState& p) {
  const auto& g = p.grid();
  double acc = 0.0;
  for (int k = 0; k < g.size(); ++k) acc += g.position(k) * std::norm(p.amplitudes()(k));
  return acc * g.spacing();
}

inline double pointer_variance(const PointerState& p) {
  const auto& g = p.grid();
  const double mean = pointer_center(p);
  double acc = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    const double d = g.position(k) - mean;
    acc += d * d * std::norm(p.amplitudes()(k));
  }
  return acc * g.spacing();
}

inline double pointer_width(const PointerState& p) { return std::sqrt(pointer_variance(p)); }

}  // namespace adiabatic

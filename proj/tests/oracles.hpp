// SPDX-License-Identifier: Apache-2.0
//
// ris-select: RIS type selection and sum-rate analysis
// Copyright (C) 2026 The ris-select Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Independent reference computations for the test suites. Nothing here calls
// into the closed-form or selection code it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "ris_select/scenario.hpp"

namespace oracle {

// L, one factor at a time from the raw deployment parameters.
inline double big_l(const ris_select::ScenarioConfig& c) {
  const double pi = std::numbers::pi;
  const double dh = c.bs_height_m - c.ris_height_m;
  const double sin_theta = dh / c.bs_ris_distance_m;
  const double cos_sq = 1.0 - sin_theta * sin_theta;
  const double num = 64.0 * pi * pi * pi * std::pow(c.bs_ris_distance_m * c.ris_ue_distance_m, c.pathloss_exponent) *
                     c.noise_variance_w;
  const double den = c.transmit_power_w * c.wavelength_m * c.wavelength_m * c.antenna_gain *
                     c.panel.element_width_m * c.panel.element_height_m * c.panel.element_gain * cos_sq *
                     c.bs_antennas * c.panel.rows * c.panel.cols;
  return num / den;
}

// Closed-form rates written out directly.
inline double rate_reflective(double l, double eps_r, double s, double s_t) {
  const double s_r = s - s_t;
  return s_r > 0 ? s_r * std::log2(1.0 + eps_r / (l * s_r)) : 0.0;
}

inline double rate_transmissive(double l, double eps_t, double s_t) {
  return s_t > 0 ? s_t * std::log2(1.0 + eps_t / (l * s_t)) : 0.0;
}

inline double rate_hybrid(double l, double eps_r, double eps_t, double s, double s_t) {
  const double s_r = s - s_t;
  double lam = l * (2.0 * s_t / s) * (1.0 / eps_t - 1.0 / eps_r) + 1.0 / s;
  lam = std::min(std::max(lam, 0.0), 1.0 / s_r);
  const double lam_t = (1.0 - s_r * lam) / s_t;
  return s_r * std::log2(1.0 + eps_r * lam / (2.0 * l)) + s_t * std::log2(1.0 + eps_t * lam_t / (2.0 * l));
}

// Midpoint of the first step of a uniform scan over which f changes sign.
inline std::optional<double> dense_root(const std::function<double(double)>& f, double lo, double hi, double step) {
  double x0 = lo, f0 = f(lo);
  for (double x1 = lo + step; x1 <= hi + 0.5 * step; x1 += step) {
    const double f1 = f(x1);
    if ((f0 < 0) != (f1 < 0)) return 0.5 * (x0 + x1);
    x0 = x1;
    f0 = f1;
  }
  return std::nullopt;
}

// Richardson-extrapolated central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-4) {
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

inline double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace oracle

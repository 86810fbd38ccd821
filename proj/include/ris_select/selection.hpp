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

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "channel.hpp"
#include "errors.hpp"
#include "regime.hpp"
#include "scenario.hpp"

namespace ris_select {

inline constexpr double kRootTolerance = 1e-9;
inline constexpr int kMaxBisectionSteps = 200;

// ------------------------------------------------------------------------
// Crossover thresholds
// ------------------------------------------------------------------------

/// UE splits (continuous S_T) where two closed-form rates coincide.
struct SelectionThresholds {
  std::optional<double> s_t_c;  // C_T == C_R
  std::optional<double> s_t_a;  // C_R == C_H
  std::optional<double> s_t_b;  // C_T == C_H
  std::optional<double> c_eq;   // C_R(s_t_c)
};

namespace detail {

enum class Trend { kIncreasing, kDecreasing };

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Checks that `diff` changes sign at most once on [lo, hi], in the direction
// its trend allows. Throws RegimeViolationError otherwise.
inline void check_sign_pattern(const std::function<double(double)>& diff, double lo, double hi, Trend trend,
                               const char* name, const ScenarioConfig& cfg) {
  constexpr int kSamples = 100;
  int previous = 0;
  int changes = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = kSamples == 1 ? lo : lo + (hi - lo) * i / (kSamples - 1);
    const int sign = sign_of(diff(x));
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) {
      ++changes;
      const bool allowed = trend == Trend::kIncreasing ? sign > 0 : sign < 0;
      if (!allowed || changes > 1)
        throw RegimeViolationError(std::string(name) + " is not monotone on [1, S-1] (sign flips near S_T = " +
                                       format_double(x, 6) + ")",
                                   validate_approximation_regime(cfg));
    }
    previous = sign;
  }
}

// Root of a sign-changing difference on [lo, hi]; nullopt when the sign is constant.
inline std::optional<double> bisect(const std::function<double(double)>& diff, double lo, double hi) {
  double f_lo = diff(lo);
  const double f_hi = diff(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  for (int i = 0; i < kMaxBisectionSteps && hi - lo > kRootTolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = diff(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Bisection for the three crossovers on the relaxation S_T in [1, S-1].
/// C_T - C_R and C_T - C_H must increase and C_R - C_H decrease; a sign
/// pattern that contradicts this raises RegimeViolationError.
inline SelectionThresholds find_thresholds(const ScenarioConfig& cfg, const LinkBudget& budget) {
  if (cfg.users_total < 2) throw ValidationError("users_total", "thresholds need at least 2 UEs");
  const RateCurves c = RateCurves::from(cfg, budget);
  const double lo = 1.0;
  const double hi = c.users_total - 1.0;

  const std::function<double(double)> t_minus_r = [&](double x) { return c.transmissive(x) - c.reflective(x); };
  const std::function<double(double)> r_minus_h = [&](double x) { return c.reflective(x) - c.hybrid(x); };
  const std::function<double(double)> t_minus_h = [&](double x) { return c.transmissive(x) - c.hybrid(x); };

  detail::check_sign_pattern(t_minus_r, lo, hi, detail::Trend::kIncreasing, "C_T - C_R", cfg);
  detail::check_sign_pattern(r_minus_h, lo, hi, detail::Trend::kDecreasing, "C_R - C_H", cfg);
  detail::check_sign_pattern(t_minus_h, lo, hi, detail::Trend::kIncreasing, "C_T - C_H", cfg);

  SelectionThresholds t;
  t.s_t_c = detail::bisect(t_minus_r, lo, hi);
  t.s_t_a = detail::bisect(r_minus_h, lo, hi);
  t.s_t_b = detail::bisect(t_minus_h, lo, hi);
  if (t.s_t_c) t.c_eq = c.reflective(*t.s_t_c);
  return t;
}

// ------------------------------------------------------------------------
// Decision table
// ------------------------------------------------------------------------

/// The conditions that select a row of the optimality table.
struct TableRow {
  int hybrid_vs_eq = 0;          // sign of C_H(S_T^(c)) - C_eq
  int hybrid_vs_reflect_1 = 0;   // sign of C_H(1) - C_R(1)
  int hybrid_vs_transmit_s1 = 0; // sign of C_H(S-1) - C_T(S-1)
  std::string position;          // where S_T falls relative to the thresholds
  bool advisory = false;         // approximations do not hold; brute force is authoritative
};

struct SelectionDecision {
  RisType optimal = RisType::kReflective;  // table verdict
  TableRow table_row;
  SelectionThresholds thresholds;
  RegimeReport regime;
  RisType brute_force_optimal = RisType::kReflective;
  bool agrees = false;
};

/// Argmax of the exact closed forms at the configured split.
/// Ties go to reflective, then transmissive, then hybrid.
inline RisType brute_force_type(const RateCurves& c, double s_t) {
  const double r = c.reflective(s_t), t = c.transmissive(s_t), h = c.hybrid(s_t);
  if (r >= t && r >= h) return RisType::kReflective;
  if (t >= h) return RisType::kTransmissive;
  return RisType::kHybrid;
}

/// Table verdict for integer split `s_t` in [1, S-1].
///
/// A threshold that does not exist on [1, S-1] is placed at 0 or S according to
/// which side wins everywhere, which keeps every table row well defined.
inline RisType table_verdict(const RateCurves& c, const SelectionThresholds& th, double s_t, TableRow& row) {
  const double s = c.users_total;
  const auto t_minus_r = [&](double x) { return c.transmissive(x) - c.reflective(x); };
  const auto r_minus_h = [&](double x) { return c.reflective(x) - c.hybrid(x); };
  const auto t_minus_h = [&](double x) { return c.transmissive(x) - c.hybrid(x); };

  const double eff_c = th.s_t_c.value_or(t_minus_r(1.0) > 0.0 ? 0.0 : s);
  const double eff_a = th.s_t_a.value_or(r_minus_h(1.0) < 0.0 ? 0.0 : s);
  const double eff_b = th.s_t_b.value_or(t_minus_h(1.0) >= 0.0 ? 0.0 : s);

  const double probe = std::clamp(eff_c, 1.0, s - 1.0);
  const double c_eq = th.c_eq.value_or(std::max(c.reflective(probe), c.transmissive(probe)));
  row.hybrid_vs_eq = detail::sign_of(c.hybrid(probe) - c_eq);
  row.hybrid_vs_reflect_1 = detail::sign_of(c.hybrid(1.0) - c.reflective(1.0));
  row.hybrid_vs_transmit_s1 = detail::sign_of(c.hybrid(s - 1.0) - c.transmissive(s - 1.0));

  if (row.hybrid_vs_eq <= 0) {
    if (s_t > eff_c) {
      row.position = "S_T > S_T^(c)";
      return RisType::kTransmissive;
    }
    row.position = "S_T <= S_T^(c)";
    return RisType::kReflective;
  }

  const bool beats_r = row.hybrid_vs_reflect_1 > 0;
  const bool beats_t = row.hybrid_vs_transmit_s1 > 0;
  if (beats_r && beats_t) {
    row.position = "any";
    return RisType::kHybrid;
  }
  if (beats_r) {
    if (s_t >= eff_b) {
      row.position = "S_T >= S_T^(b)";
      return RisType::kTransmissive;
    }
    row.position = "S_T < S_T^(b)";
    return RisType::kHybrid;
  }
  if (beats_t) {
    if (s_t <= eff_a) {
      row.position = "S_T <= S_T^(a)";
      return RisType::kReflective;
    }
    row.position = "S_T > S_T^(a)";
    return RisType::kHybrid;
  }
  if (s_t <= eff_a) {
    row.position = "S_T <= S_T^(a)";
    return RisType::kReflective;
  }
  if (s_t >= eff_b) {
    row.position = "S_T >= S_T^(b)";
    return RisType::kTransmissive;
  }
  row.position = "S_T^(a) < S_T < S_T^(b)";
  return RisType::kHybrid;
}

/// Optimal RIS type from the optimality table, alongside the exact argmax.
/// Throws RegimeViolationError (from find_thresholds) when the difference
/// curves are not monotone.
inline SelectionDecision decide_type(const ScenarioConfig& cfg, const LinkBudget& budget) {
  if (cfg.users_total < 2) throw ValidationError("users_total", "type selection needs at least 2 UEs");
  const RateCurves c = RateCurves::from(cfg, budget);
  const double s_t = cfg.users_transmission;

  SelectionDecision d;
  d.regime = validate_approximation_regime(cfg);
  d.brute_force_optimal = brute_force_type(c, s_t);
  d.table_row.advisory = !d.regime.holds();

  if (cfg.users_transmission == 0 || cfg.users_transmission == cfg.users_total) {
    d.optimal = cfg.users_transmission == 0 ? RisType::kReflective : RisType::kTransmissive;
    d.table_row.position = cfg.users_transmission == 0 ? "S_T = 0" : "S_T = S";
  } else {
    d.thresholds = find_thresholds(cfg, budget);
    d.optimal = table_verdict(c, d.thresholds, s_t, d.table_row);
  }
  d.agrees = d.optimal == d.brute_force_optimal;
  return d;
}

// ------------------------------------------------------------------------
// Monotonicity of C_T and C_R in S_T
// ------------------------------------------------------------------------

/// f(x) = x (ln2 log2 x - 1) + 1, positive on (1, inf). Evaluated around x = 1
/// without cancellation.
inline double monotonicity_lemma(double x) {
  const double u = x - 1.0;
  return x * std::log1p(u) - u;
}

/// dC_T/dS_T in closed form.
inline double transmissive_rate_derivative(const RateCurves& c, double s_t) {
  const double x = 1.0 + c.eps_transmit / (c.big_l * s_t);
  return monotonicity_lemma(x) / (std::numbers::ln2 * x);
}

/// dC_R/dS_T in closed form (S_R = S - S_T).
inline double reflective_rate_derivative(const RateCurves& c, double s_t) {
  const double y = 1.0 + c.eps_reflect / (c.big_l * (c.users_total - s_t));
  return -monotonicity_lemma(y) / (std::numbers::ln2 * y);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct MonotonicityCertificate {
  bool passed = true;
  std::string failure;  // first violation, naming the grid point
  std::size_t points_checked = 0;
  double max_relative_error = 0.0;  // analytic vs finite-difference derivative
  double min_lemma_value = 0.0;     // over the sampled x in (1, 1e6]
};

/// Certifies C_T' > 0 and C_R' < 0 on a grid over (1, S-1), the analytic
/// derivatives against central differences (step 1e-6, relative error <= 1e-6),
/// and f(x) > 0 on samples of (1, 1e6].
inline MonotonicityCertificate monotonicity_certificate(const ScenarioConfig& cfg, const LinkBudget& budget) {
  if (cfg.users_total < 3) throw ValidationError("users_total", "monotonicity certificate needs at least 3 UEs");
  constexpr double kStep = 1e-6;
  constexpr double kTolerance = 1e-6;
  const RateCurves c = RateCurves::from(cfg, budget);
  const double lo = 1.0, hi = c.users_total - 1.0;

  MonotonicityCertificate cert;
  const auto fail = [&](const std::string& what) {
    if (cert.passed) cert.failure = what;
    cert.passed = false;
  };

  std::vector<double> grid;
  constexpr int kGrid = 200;
  for (int i = 0; i < kGrid; ++i) grid.push_back(lo + (hi - lo) * (i + 0.5) / kGrid);
  for (int k = 2; k < cfg.users_total - 1; ++k) grid.push_back(k);

  const std::function<double(double)> ct = [&](double x) { return c.transmissive(x); };
  const std::function<double(double)> cr = [&](double x) { return c.reflective(x); };
  for (double x : grid) {
    const double dt = transmissive_rate_derivative(c, x);
    const double dr = reflective_rate_derivative(c, x);
    const double dt_fd = central_difference(ct, x, kStep);
    const double dr_fd = central_difference(cr, x, kStep);
    const double et = std::abs(dt - dt_fd) / std::abs(dt);
    const double er = std::abs(dr - dr_fd) / std::abs(dr);
    cert.max_relative_error = std::max({cert.max_relative_error, et, er});
    const std::string at = " at S_T = " + detail::format_double(x, 10);
    if (!(dt > 0.0)) fail("C_T' is not positive" + at);
    if (!(dr < 0.0)) fail("C_R' is not negative" + at);
    if (!(et <= kTolerance)) fail("C_T' differs from its finite difference by " + detail::format_double(et, 3) + at);
    if (!(er <= kTolerance)) fail("C_R' differs from its finite difference by " + detail::format_double(er, 3) + at);
    ++cert.points_checked;
  }

  cert.min_lemma_value = std::numeric_limits<double>::infinity();
  constexpr int kLemmaSamples = 600;
  for (int i = 0; i <= kLemmaSamples; ++i) {
    // 1 + 1e-6 ... 1 + 1e6 on a log scale of (x - 1), then clipped to 1e6.
    const double x = std::min(1.0 + std::pow(10.0, -6.0 + 12.0 * i / kLemmaSamples), 1e6);
    const double f = monotonicity_lemma(x);
    cert.min_lemma_value = std::min(cert.min_lemma_value, f);
    if (!(f > 0.0)) fail("f(x) is not positive at x = " + detail::format_double(x, 10));
  }
  return cert;
}

// ------------------------------------------------------------------------
// Derivative dominance and asymptotic diagnostics
// ------------------------------------------------------------------------

/// Decomposition of C_H' into a log-difference term (E1) and an
/// allocation-sensitivity term (E2), with the unclamped hybrid allocation.
struct DominanceReport {
  double a1 = 0.0;  // eps_r/eps_t - 1
  double a2 = 0.0;  // 1 - eps_t/eps_r
  double e1 = 0.0;  // high-SNR limit log2(eps_t/eps_r)
  double e1_exact = 0.0;
  double e2 = 0.0;
  double hybrid_derivative = 0.0;             // central difference
  double hybrid_derivative_decomposed = 0.0;  // e1_exact + e2
  double reflective_derivative = 0.0;
  double transmissive_derivative = 0.0;
  double ratio = 0.0;  // |C_R'| / |C_H'|
  double dominance_floor = 0.0;
  bool dominant = false;  // ratio > floor in the high-SNR regime
};

namespace detail {

struct HybridTerms {
  double a1, a2, reflect_arg, transmit_arg;  // 1 + eps_r Lambda/(2L), 1 + eps_t (1 - S_R Lambda)/(2 L S_T)
};

inline HybridTerms hybrid_terms(const RateCurves& c, double s_t, double lambda) {
  const double s_r = c.users_total - s_t;
  return {c.eps_reflect / c.eps_transmit - 1.0, 1.0 - c.eps_transmit / c.eps_reflect,
          1.0 + c.eps_reflect * lambda / (2.0 * c.big_l),
          1.0 + c.eps_transmit / (2.0 * c.big_l) * (1.0 - s_r * lambda) / s_t};
}

// E2 with the unclamped allocation. Both terms carry the 1/ln2 of d/dx log2.
inline double allocation_term(const RateCurves& c, double s_t, const HybridTerms& h) {
  const double s = c.users_total, s_r = s - s_t;
  return (s_r / s) * h.a1 / (std::numbers::ln2 * h.reflect_arg) +
         (s_t / s) * h.a2 / (std::numbers::ln2 * h.transmit_arg);
}

}  // namespace detail

inline DominanceReport derivative_dominance(const ScenarioConfig& cfg, const LinkBudget& budget) {
  const int s_t_int = cfg.users_transmission;
  if (s_t_int < 1 || s_t_int > cfg.users_total - 1)
    throw DiagnosticError("decomposition not applicable: needs 1 <= S_T <= S-1");
  const RateCurves c = RateCurves::from(cfg, budget);
  const double s_t = s_t_int;
  const double raw = c.lambda_star_raw(s_t);
  const double upper = 1.0 / (c.users_total - s_t);
  if (!(raw > 0.0 && raw < upper))
    throw DiagnosticError("decomposition not applicable: hybrid allocation is clamped (Lambda* = " +
                          detail::format_double(raw, 6) + ")");

  const auto h = detail::hybrid_terms(c, s_t, raw);
  DominanceReport r;
  r.a1 = h.a1;
  r.a2 = h.a2;
  r.e1 = std::log2(c.eps_transmit / c.eps_reflect);
  r.e1_exact = std::log2(h.transmit_arg) - std::log2(h.reflect_arg);
  r.e2 = detail::allocation_term(c, s_t, h);
  r.hybrid_derivative_decomposed = r.e1_exact + r.e2;

  constexpr double kStep = 1e-6;
  r.hybrid_derivative = central_difference([&](double x) { return c.hybrid(x); }, s_t, kStep);
  r.reflective_derivative = reflective_rate_derivative(c, s_t);
  r.transmissive_derivative = transmissive_rate_derivative(c, s_t);
  r.ratio = std::abs(r.reflective_derivative) / std::abs(r.hybrid_derivative);
  r.dominance_floor = cfg.dominance_floor;
  r.dominant = r.ratio > cfg.dominance_floor && validate_approximation_regime(cfg).high_snr;
  return r;
}

/// Element-count threshold above which hybrid beats both single-function
/// types, and the high-SNR approximation of C_H - C_T.
struct AsymptoticDiagnostics {
  double e0 = 0.0;
  double e_r = 0.0;
  double e_t = 0.0;
  double mn_threshold = 0.0;  // e0 * 2^max(e_r, e_t)
  bool hybrid_favorable = false;  // MN > mn_threshold
  double e1 = 0.0;
  std::optional<double> e2;  // absent when the unclamped allocation leaves the log domain
  double a1 = 0.0;
  double a2 = 0.0;
  double ch_minus_ct_approx = 0.0;
  double ch_minus_ct_exact = 0.0;
};

inline AsymptoticDiagnostics asymptotic_checks(const ScenarioConfig& cfg, const LinkBudget& budget) {
  const int s_t_int = cfg.users_transmission;
  if (s_t_int < 1 || s_t_int > cfg.users_total - 1)
    throw ValidationError("users_transmission", "asymptotic checks need 1 <= S_T <= S-1");
  const RateCurves c = RateCurves::from(cfg, budget);
  const double s = cfg.users_total, s_t = s_t_int, s_r = s - s_t;
  const double eps_r = cfg.panel.radiation_reflect, eps_t = cfg.panel.radiation_transmit;

  AsymptoticDiagnostics d;
  const double pi3_64 = 64.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;
  d.e0 = pi3_64 * std::pow(cfg.bs_ris_distance_m * cfg.ris_ue_distance_m, cfg.pathloss_exponent) *
         cfg.noise_variance_w /
         (cfg.transmit_power_w * cfg.wavelength_m * cfg.wavelength_m * cfg.antenna_gain *
          cfg.panel.element_width_m * cfg.panel.element_height_m * cfg.panel.element_gain * budget.cos_sq_theta *
          cfg.bs_antennas);
  const double s_log_s = s * std::log2(s);
  d.e_r = (s - s_t * std::log2(eps_r) + s_log_s - s_r * std::log2(s_r)) / s_t;
  d.e_t = (s - s_r * std::log2(eps_t) + s_log_s - s_t * std::log2(s_t)) / s_r;
  d.mn_threshold = d.e0 * std::exp2(std::max(d.e_r, d.e_t));
  d.hybrid_favorable = static_cast<double>(cfg.panel.elements()) > d.mn_threshold;

  const auto h = detail::hybrid_terms(c, s_t, c.lambda_star_raw(s_t));
  d.a1 = h.a1;
  d.a2 = h.a2;
  d.e1 = std::log2(eps_t / eps_r);
  if (h.reflect_arg > 0.0 && h.transmit_arg > 0.0) d.e2 = detail::allocation_term(c, s_t, h);

  d.ch_minus_ct_approx = -s + s_r * std::log2(eps_t) - s_log_s + s_t * std::log2(s_t) - s_r * std::log2(c.big_l);
  d.ch_minus_ct_exact = c.hybrid(s_t) - c.transmissive(s_t);
  return d;
}

}  // namespace ris_select

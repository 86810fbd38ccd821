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
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "channel.hpp"
#include "detail/parallel.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace ris_select {

/// Closed-form sum-rates as functions of a continuous transmission-zone UE count.
///
/// Everything depends on the deployment only through L, the two radiation
/// constants and S. Empty zones contribute zero (the limit of x log2(1 + c/x)).
struct RateCurves {
  double big_l;
  double eps_reflect;
  double eps_transmit;
  double users_total;

  static RateCurves from(const ScenarioConfig& cfg, const LinkBudget& budget) {
    return {budget.big_l, cfg.panel.radiation_reflect, cfg.panel.radiation_transmit,
            static_cast<double>(cfg.users_total)};
  }

  static double zone_rate(double users, double snr_total) {
    return users > 0.0 ? users * std::log2(1.0 + snr_total / users) : 0.0;
  }

  double reflective(double s_t) const { return zone_rate(users_total - s_t, eps_reflect / big_l); }

  double transmissive(double s_t) const { return zone_rate(s_t, eps_transmit / big_l); }

  // L (2 S_T / S)(1/eps_t - 1/eps_r) + 1/S, before clamping.
  double lambda_star_raw(double s_t) const {
    return big_l * (2.0 * s_t / users_total) * (1.0 / eps_transmit - 1.0 / eps_reflect) + 1.0 / users_total;
  }

  double lambda_star(double s_t) const {
    const double s_r = users_total - s_t;
    const double upper = s_r > 0.0 ? 1.0 / s_r : std::numeric_limits<double>::infinity();
    return std::clamp(lambda_star_raw(s_t), 0.0, upper);
  }

  double hybrid_with(double s_t, double lambda_r) const {
    const double s_r = users_total - s_t;
    if (s_r <= 0.0) return zone_rate(s_t, eps_transmit / (2.0 * big_l));
    if (s_t <= 0.0) return zone_rate(s_r, eps_reflect / (2.0 * big_l));
    const double share_t = (1.0 - s_r * lambda_r) / s_t;
    return s_t * std::log2(1.0 + eps_transmit / (2.0 * big_l) * share_t) +
           s_r * std::log2(1.0 + eps_reflect * lambda_r / (2.0 * big_l));
  }

  double hybrid(double s_t) const { return hybrid_with(s_t, lambda_star(s_t)); }

  // Hybrid rate with the unclamped (near-isotropic) allocation.
  double hybrid_simplified(double s_t) const { return hybrid_with(s_t, lambda_star_raw(s_t)); }

  double rate(RisType type, double s_t) const {
    switch (type) {
      case RisType::kReflective: return reflective(s_t);
      case RisType::kTransmissive: return transmissive(s_t);
      case RisType::kHybrid: return hybrid(s_t);
    }
    return 0.0;
  }
};

/// Long-term (pathloss-based, fading-ignorant) power split.
struct PowerAllocation {
  std::vector<double> per_ue;         // Lambda_s, indexed like the channel rows
  std::optional<double> lambda_star;  // hybrid with both zones populated
  RisType scheme = RisType::kReflective;

  bool served() const {
    return std::any_of(per_ue.begin(), per_ue.end(), [](double v) { return v > 0.0; });
  }
};

inline PowerAllocation allocate_power(const ScenarioConfig& cfg, RisType type, const LinkBudget& budget) {
  const int s_total = cfg.users_total;
  const int s_r = cfg.users_reflection();
  const int s_t = cfg.users_transmission;

  PowerAllocation a;
  a.scheme = type;
  a.per_ue.assign(static_cast<std::size_t>(s_total), 0.0);

  double share_r = 0.0, share_t = 0.0;
  switch (type) {
    case RisType::kReflective:
      share_r = s_r > 0 ? 1.0 / s_r : 0.0;
      break;
    case RisType::kTransmissive:
      share_t = s_t > 0 ? 1.0 / s_t : 0.0;
      break;
    case RisType::kHybrid:
      if (s_r == 0) {
        share_t = 1.0 / s_t;
      } else if (s_t == 0) {
        share_r = 1.0 / s_r;
      } else {
        const double lambda = RateCurves::from(cfg, budget).lambda_star(s_t);
        a.lambda_star = lambda;
        share_r = lambda;
        share_t = std::max(0.0, (1.0 - s_r * lambda) / s_t);
      }
      break;
  }
  for (int s = 0; s < s_total; ++s)
    a.per_ue[static_cast<std::size_t>(s)] = cfg.zone_of(s) == Zone::kReflection ? share_r : share_t;
  return a;
}

/// C_R, C_T or C_H at the configured integer split, in bits/s/Hz.
inline double closed_form_rate(const ScenarioConfig& cfg, RisType type, const LinkBudget& budget) {
  return RateCurves::from(cfg, budget).rate(type, cfg.users_transmission);
}

/// Jensen bound sum_s log2(1 + P_T/sigma^2 Lambda_s beta_hat K_t MN |Gamma|^2).
inline double upper_bound(const ScenarioConfig& cfg, RisType type, const PowerAllocation& alloc,
                          const LinkBudget& budget) {
  if (alloc.per_ue.size() != static_cast<std::size_t>(cfg.users_total))
    throw ValidationError("allocation", "size differs from users_total");
  const double gain = cfg.transmit_power_w / cfg.noise_variance_w * cfg.bs_antennas *
                      static_cast<double>(cfg.panel.elements());
  double total = 0.0;
  for (int s = 0; s < cfg.users_total; ++s) {
    const Zone zone = cfg.zone_of(s);
    total += std::log2(1.0 + gain * alloc.per_ue[static_cast<std::size_t>(s)] * budget.avg_pathloss(zone) *
                                 power_fraction(type, zone));
  }
  return total;
}

struct CapacityReport {
  RisType type = RisType::kReflective;
  double closed_form = 0.0;
  double upper_bound = 0.0;
  double monte_carlo_mean = 0.0;
  double monte_carlo_stderr = 0.0;
  std::size_t trials = 0;
};

/// Seed of Monte Carlo trial `trial` under `base_seed`.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) { return derive_seed(base_seed, trial); }

/// Sum-rate of one channel realisation under a fixed allocation.
inline double instantaneous_sum_rate(const ScenarioConfig& cfg, const PowerAllocation& alloc, const ChannelMatrix& h) {
  const double snr = cfg.transmit_power_w / cfg.noise_variance_w;
  double total = 0.0;
  for (int s = 0; s < h.rows; ++s) total += std::log2(1.0 + snr * alloc.per_ue[static_cast<std::size_t>(s)] * h.row_energy(s));
  return total;
}

/// Ergodic sum-rate by averaging `trials` channel draws.
///
/// Trial t uses the channel sample_channel(cfg, type, trial_seed(base_seed, t)).
/// Rows with zero allocated power add nothing and are not sampled. Each trial
/// result is stored by index and reduced pairwise, so the report is the same
/// for any thread count.
inline CapacityReport monte_carlo_capacity(const ScenarioConfig& cfg, RisType type, const PowerAllocation& alloc,
                                           std::size_t trials, std::uint64_t base_seed,
                                           FadingLaw fading = FadingLaw::kComplexGaussian) {
  if (trials < 1) throw ValidationError("trials", "must be >= 1");
  if (alloc.per_ue.size() != static_cast<std::size_t>(cfg.users_total))
    throw ValidationError("allocation", "size differs from users_total");
  const LinkBudget budget = link_budget(cfg);

  CapacityReport report;
  report.type = type;
  report.trials = trials;
  report.closed_form = closed_form_rate(cfg, type, budget);
  report.upper_bound = upper_bound(cfg, type, alloc, budget);

  const auto reflect = element_response(cfg.panel, type, Zone::kReflection);
  const auto transmit = element_response(cfg.panel, type, Zone::kTransmission);
  const double snr = cfg.transmit_power_w / cfg.noise_variance_w;

  std::vector<double> rates(trials, 0.0);
  detail::parallel_for(trials, [&](std::size_t t) {
    const CounterRng rng(trial_seed(base_seed, t));
    double total = 0.0;
    for (int s = 0; s < cfg.users_total; ++s) {
      const double share = alloc.per_ue[static_cast<std::size_t>(s)];
      if (share <= 0.0) continue;
      const Zone zone = cfg.zone_of(s);
      if (power_fraction(type, zone) == 0.0) continue;
      const auto& response = zone == Zone::kReflection ? reflect : transmit;
      double energy = 0.0;
      for (int k = 0; k < cfg.bs_antennas; ++k)
        energy += std::norm(detail::aggregate_gain(fading, rng, detail::entry_stream_offset(cfg, s, k), response));
      total += std::log2(1.0 + snr * share * budget.avg_pathloss(zone) * energy);
    }
    rates[t] = total;
  });

  const double n = static_cast<double>(trials);
  const double mean = detail::pairwise_sum(rates) / n;
  std::vector<double> dev(trials);
  for (std::size_t t = 0; t < trials; ++t) dev[t] = (rates[t] - mean) * (rates[t] - mean);
  report.monte_carlo_mean = mean;
  report.monte_carlo_stderr = trials > 1 ? std::sqrt(detail::pairwise_sum(dev) / (n - 1.0) / n) : 0.0;
  return report;
}

/// Convenience: closed form, bound and Monte Carlo estimate with the type's own allocation.
inline CapacityReport evaluate_capacity(const ScenarioConfig& cfg, RisType type, std::size_t trials,
                                        std::uint64_t base_seed, FadingLaw fading = FadingLaw::kComplexGaussian) {
  const LinkBudget budget = link_budget(cfg);
  return monte_carlo_capacity(cfg, type, allocate_power(cfg, type, budget), trials, base_seed, fading);
}

}  // namespace ris_select

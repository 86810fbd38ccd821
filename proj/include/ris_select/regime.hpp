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
#include <limits>
#include <string>

#include "capacity.hpp"
#include "channel.hpp"
#include "errors.hpp"
#include "scenario.hpp"

namespace ris_select {

/// Whether the near-isotropic and high-SNR approximations behind the
/// type-selection table hold for a deployment. Advisory only.
struct RegimeReport {
  double isotropy_ratio = 0.0;  // |eps_r - eps_t| / eps_r
  double iso_tol = 0.0;
  bool isotropic = false;
  double min_received_snr = 0.0;  // smallest per-UE SNR under the hybrid allocation
  double snr_floor = 0.0;
  bool high_snr = false;

  bool holds() const { return isotropic && high_snr; }

  std::string summary() const {
    return "isotropy ratio " + detail::format_double(isotropy_ratio, 6) + (isotropic ? " <= " : " > ") +
           detail::format_double(iso_tol, 6) + ", min received SNR " + detail::format_double(min_received_snr, 6) +
           (high_snr ? " > " : " <= ") + detail::format_double(snr_floor, 6);
  }
};

inline RegimeReport validate_approximation_regime(const ScenarioConfig& cfg) {
  const LinkBudget budget = link_budget(cfg);
  const RisPanel& p = cfg.panel;

  RegimeReport r;
  r.iso_tol = cfg.iso_tol;
  r.snr_floor = cfg.snr_floor;
  r.isotropy_ratio = std::abs(p.radiation_reflect - p.radiation_transmit) / p.radiation_reflect;
  r.isotropic = r.isotropy_ratio <= cfg.iso_tol;

  const PowerAllocation alloc = allocate_power(cfg, RisType::kHybrid, budget);
  const double gain = cfg.transmit_power_w / cfg.noise_variance_w * cfg.bs_antennas *
                      static_cast<double>(p.elements());
  double min_snr = std::numeric_limits<double>::infinity();
  for (int s = 0; s < cfg.users_total; ++s) {
    const Zone zone = cfg.zone_of(s);
    const double snr = gain * alloc.per_ue[static_cast<std::size_t>(s)] * budget.avg_pathloss(zone) *
                       power_fraction(RisType::kHybrid, zone);
    min_snr = std::min(min_snr, snr);
  }
  r.min_received_snr = min_snr;
  r.high_snr = min_snr > cfg.snr_floor;
  return r;
}

/// A selection diagnostic found a pattern the approximations rule out.
class RegimeViolationError : public DiagnosticError {
 public:
  RegimeViolationError(const std::string& what, RegimeReport report)
      : DiagnosticError("approximation regime violated: " + what + " (" + report.summary() + ")"),
        report_(report) {}

  const RegimeReport& report() const noexcept { return report_; }

 private:
  RegimeReport report_;
};

}  // namespace ris_select

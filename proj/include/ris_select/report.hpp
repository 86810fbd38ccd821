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

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "capacity.hpp"
#include "scenario.hpp"
#include "selection.hpp"

namespace ris_select {

/// Everything `evaluate` computes for one deployment.
struct EvaluationReport {
  std::uint64_t config_hash = 0;
  LinkBudget budget;
  std::vector<CapacityReport> capacities;  // R, T, H
  std::optional<SelectionDecision> decision;
  std::optional<std::string> decision_error;  // why the table could not be evaluated
  RisType brute_force_optimal = RisType::kReflective;
  RegimeReport regime;
  std::optional<AsymptoticDiagnostics> asymptotic;
  std::optional<DominanceReport> dominance;
  std::optional<std::string> dominance_error;
};

inline EvaluationReport evaluate_scenario(const ScenarioConfig& cfg, std::size_t trials, std::uint64_t base_seed) {
  EvaluationReport r;
  r.config_hash = config_hash(cfg);
  r.budget = link_budget(cfg);
  r.regime = validate_approximation_regime(cfg);
  std::uint64_t cell = 0;
  for (RisType type : kAllRisTypes) {
    const auto alloc = allocate_power(cfg, type, r.budget);
    r.capacities.push_back(monte_carlo_capacity(cfg, type, alloc, trials, base_seed ^ cell++));
  }
  const RateCurves curves = RateCurves::from(cfg, r.budget);
  r.brute_force_optimal = brute_force_type(curves, cfg.users_transmission);
  if (cfg.users_total >= 2) {
    try {
      r.decision = decide_type(cfg, r.budget);
    } catch (const RegimeViolationError& e) {
      r.decision_error = e.what();
    }
  }
  if (cfg.users_transmission >= 1 && cfg.users_transmission <= cfg.users_total - 1) {
    r.asymptotic = asymptotic_checks(cfg, r.budget);
    try {
      r.dominance = derivative_dominance(cfg, r.budget);
    } catch (const DiagnosticError& e) {
      r.dominance_error = e.what();
    }
  }
  return r;
}

namespace detail {

inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json to_json(const RegimeReport& r) {
  return {{"isotropy_ratio", r.isotropy_ratio}, {"iso_tol", r.iso_tol},     {"isotropic", r.isotropic},
          {"min_received_snr", r.min_received_snr}, {"snr_floor", r.snr_floor}, {"high_snr", r.high_snr}};
}

inline nlohmann::json to_json(const CapacityReport& c) {
  return {{"type", to_string(c.type)},
          {"closed_form", c.closed_form},
          {"upper_bound", c.upper_bound},
          {"monte_carlo_mean", c.monte_carlo_mean},
          {"monte_carlo_stderr", c.monte_carlo_stderr},
          {"trials", c.trials}};
}

inline nlohmann::json to_json(const SelectionThresholds& t) {
  return {{"s_t_c", detail::optional_json(t.s_t_c)},
          {"s_t_a", detail::optional_json(t.s_t_a)},
          {"s_t_b", detail::optional_json(t.s_t_b)},
          {"c_eq", detail::optional_json(t.c_eq)}};
}

inline nlohmann::json to_json(const SelectionDecision& d) {
  return {{"optimal", to_string(d.optimal)},
          {"brute_force_optimal", to_string(d.brute_force_optimal)},
          {"agrees", d.agrees},
          {"table_row",
           {{"hybrid_vs_eq", d.table_row.hybrid_vs_eq},
            {"hybrid_vs_reflect_at_1", d.table_row.hybrid_vs_reflect_1},
            {"hybrid_vs_transmit_at_s_minus_1", d.table_row.hybrid_vs_transmit_s1},
            {"position", d.table_row.position},
            {"advisory", d.table_row.advisory}}},
          {"thresholds", to_json(d.thresholds)},
          {"regime", to_json(d.regime)}};
}

inline nlohmann::json to_json(const AsymptoticDiagnostics& a) {
  return {{"e0", a.e0},
          {"e_r", a.e_r},
          {"e_t", a.e_t},
          {"mn_threshold", a.mn_threshold},
          {"hybrid_favorable", a.hybrid_favorable},
          {"e1", a.e1},
          {"e2", detail::optional_json(a.e2)},
          {"a1", a.a1},
          {"a2", a.a2},
          {"ch_minus_ct_approx", a.ch_minus_ct_approx},
          {"ch_minus_ct_exact", a.ch_minus_ct_exact}};
}

inline nlohmann::json to_json(const DominanceReport& d) {
  return {{"e1", d.e1},
          {"e1_exact", d.e1_exact},
          {"e2", d.e2},
          {"hybrid_derivative", d.hybrid_derivative},
          {"hybrid_derivative_decomposed", d.hybrid_derivative_decomposed},
          {"reflective_derivative", d.reflective_derivative},
          {"transmissive_derivative", d.transmissive_derivative},
          {"ratio", d.ratio},
          {"dominance_floor", d.dominance_floor},
          {"dominant", d.dominant}};
}

inline nlohmann::json to_json(const EvaluationReport& r) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.config_hash));
  nlohmann::json j;
  j["config_hash"] = hash;
  j["link_budget"] = {{"avg_pathloss_reflect", r.budget.avg_pathloss_reflect},
                      {"avg_pathloss_transmit", r.budget.avg_pathloss_transmit},
                      {"big_l", r.budget.big_l},
                      {"cos_sq_theta", r.budget.cos_sq_theta}};
  j["capacity"] = nlohmann::json::array();
  for (const auto& c : r.capacities) j["capacity"].push_back(to_json(c));
  j["brute_force_optimal"] = to_string(r.brute_force_optimal);
  j["decision"] = r.decision ? to_json(*r.decision) : nlohmann::json(nullptr);
  if (r.decision_error) j["decision_error"] = *r.decision_error;
  j["regime"] = to_json(r.regime);
  j["asymptotic"] = r.asymptotic ? to_json(*r.asymptotic) : nlohmann::json(nullptr);
  j["dominance"] = r.dominance ? to_json(*r.dominance) : nlohmann::json(nullptr);
  if (r.dominance_error) j["dominance_error"] = *r.dominance_error;
  return j;
}

/// One-line human summary; the brute-force optimum is the headline verdict.
inline std::string summary_line(const EvaluationReport& r) {
  const auto num = [](double v) { return detail::format_double(v, 6); };
  const auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string("none"); };
  std::string s = "optimal: " + std::string(to_string(r.brute_force_optimal));
  if (r.decision) {
    s += " (table: " + std::string(to_string(r.decision->optimal)) + (r.decision->agrees ? ", agrees" : ", disagrees") +
         (r.decision->table_row.advisory ? ", advisory" : "") + ")";
    const auto& t = r.decision->thresholds;
    s += " | S_T^(c)=" + opt(t.s_t_c) + " S_T^(a)=" + opt(t.s_t_a) + " S_T^(b)=" + opt(t.s_t_b);
  } else {
    s += " (table unavailable)";
  }
  s += " |";
  for (const auto& c : r.capacities)
    s += " C_" + std::string(1, static_cast<char>(std::toupper(to_string(c.type)[0]))) + "=" + num(c.closed_form);
  s += " bits/s/Hz";
  return s;
}

}  // namespace ris_select

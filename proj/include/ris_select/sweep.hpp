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
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "capacity.hpp"
#include "detail/keyvalue.hpp"
#include "errors.hpp"
#include "scenario.hpp"
#include "selection.hpp"

namespace ris_select {

enum class SweepAxis { kTransmitPowerDbm, kUsersTransmission, kRisRowsCols, kDistances };

enum class SweepOutput { kClosedForm, kUpperBound, kMonteCarlo, kDecision, kDiagnostics };

inline std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kTransmitPowerDbm: return "transmit_power_dbm";
    case SweepAxis::kUsersTransmission: return "users_transmission";
    case SweepAxis::kRisRowsCols: return "ris_rows_cols";
    case SweepAxis::kDistances: return "distances";
  }
  return "unknown";
}

inline SweepAxis parse_sweep_axis(std::string_view name) {
  for (auto a : {SweepAxis::kTransmitPowerDbm, SweepAxis::kUsersTransmission, SweepAxis::kRisRowsCols,
                 SweepAxis::kDistances})
    if (to_string(a) == name) return a;
  throw ValidationError("axis", "unknown sweep axis '" + std::string(name) + "'");
}

inline std::string_view to_string(SweepOutput out) {
  switch (out) {
    case SweepOutput::kClosedForm: return "closed_form";
    case SweepOutput::kUpperBound: return "upper_bound";
    case SweepOutput::kMonteCarlo: return "monte_carlo";
    case SweepOutput::kDecision: return "decision";
    case SweepOutput::kDiagnostics: return "diagnostics";
  }
  return "unknown";
}

inline SweepOutput parse_sweep_output(std::string_view name) {
  for (auto o : {SweepOutput::kClosedForm, SweepOutput::kUpperBound, SweepOutput::kMonteCarlo,
                 SweepOutput::kDecision, SweepOutput::kDiagnostics})
    if (to_string(o) == name) return o;
  throw ValidationError("outputs", "unknown sweep output '" + std::string(name) + "'");
}

/// One-dimensional sweep over `axis`, optionally repeated for each value of a
/// second `series_axis` (one CSV per series value).
struct SweepSpec {
  std::string name = "sweep";
  SweepAxis axis = SweepAxis::kTransmitPowerDbm;
  std::vector<double> values;
  std::optional<SweepAxis> series_axis;
  std::vector<double> series_values;
  std::size_t trials = 100;
  std::uint64_t base_seed = 0;
  std::vector<SweepOutput> outputs = {SweepOutput::kClosedForm, SweepOutput::kUpperBound, SweepOutput::kMonteCarlo,
                                      SweepOutput::kDecision};
  // Scenario overrides applied before the sweep (presets pin the figure setups).
  std::optional<int> users_total;
  std::optional<int> users_transmission;
  std::optional<int> ris_rows_cols;
  std::optional<double> distance_m;

  bool wants(SweepOutput o) const { return std::find(outputs.begin(), outputs.end(), o) != outputs.end(); }
};

namespace detail {

inline void check_axis_values(SweepAxis axis, const std::vector<double>& values, const char* field) {
  if (values.empty()) throw ValidationError(field, "needs at least one value");
  const bool up = std::adjacent_find(values.begin(), values.end(), std::greater_equal<>{}) == values.end();
  const bool down = std::adjacent_find(values.begin(), values.end(), std::less_equal<>{}) == values.end();
  if (!up && !down) throw ValidationError(field, "values must be strictly ordered");
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError(field, "values must be finite");
    if ((axis == SweepAxis::kUsersTransmission || axis == SweepAxis::kRisRowsCols) && v != std::floor(v))
      throw ValidationError(field, "values must be integers for axis " + std::string(to_string(axis)));
  }
}

}  // namespace detail

inline void validate(const SweepSpec& spec) {
  detail::check_axis_values(spec.axis, spec.values, "values");
  if (spec.series_axis) {
    if (*spec.series_axis == spec.axis) throw ValidationError("series_axis", "must differ from axis");
    detail::check_axis_values(*spec.series_axis, spec.series_values, "series_values");
  } else if (!spec.series_values.empty()) {
    throw ValidationError("series_values", "given without series_axis");
  }
  if (spec.outputs.empty()) throw ValidationError("outputs", "needs at least one output");
  if (spec.wants(SweepOutput::kMonteCarlo) && spec.trials < 1) throw ValidationError("trials", "must be >= 1");
}

/// Parses a sweep description in the scenario key/value format:
/// `name`, `axis`, `values`, `series_axis`, `series_values`, `trials`,
/// `base_seed`, `outputs`.
inline SweepSpec load_sweep_spec(std::string_view text) {
  SweepSpec spec;
  bool have_axis = false, have_values = false;
  std::set<std::string> seen;
  for (const auto& kv : detail::parse_key_values(text)) {
    if (!seen.insert(kv.key).second) throw SyntaxError(kv.line, "'" + kv.key + "' given more than once");
    if (kv.key == "name") {
      spec.name = kv.value;
    } else if (kv.key == "axis") {
      spec.axis = parse_sweep_axis(kv.value);
      have_axis = true;
    } else if (kv.key == "values") {
      spec.values = detail::parse_double_list(kv);
      have_values = true;
    } else if (kv.key == "series_axis") {
      spec.series_axis = parse_sweep_axis(kv.value);
    } else if (kv.key == "series_values") {
      spec.series_values = detail::parse_double_list(kv);
    } else if (kv.key == "trials") {
      spec.trials = detail::parse_unsigned(kv);
    } else if (kv.key == "base_seed") {
      spec.base_seed = detail::parse_unsigned(kv);
    } else if (kv.key == "outputs") {
      spec.outputs.clear();
      for (const auto& token : detail::split_list(kv.value)) spec.outputs.push_back(parse_sweep_output(token));
    } else {
      throw SyntaxError(kv.line, "unknown key '" + kv.key + "'");
    }
  }
  if (!have_axis) throw ValidationError("axis", "missing");
  if (!have_values) throw ValidationError("values", "missing");
  for (char c : spec.name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      throw ValidationError("name", "may only contain letters, digits, '_' and '-'");
  validate(spec);
  return spec;
}

inline SweepSpec load_sweep_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("sweep", "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_sweep_spec(buf.str());
}

/// Figure presets: capacity vs transmit power (`fig2a`), vs S_T for three
/// distances (`fig2b`), vs S_T for three panel sizes (`fig2c`).
inline SweepSpec preset_sweep(std::string_view name) {
  SweepSpec spec;
  spec.name = std::string(name);
  spec.users_total = 10;
  if (name == "fig2a") {
    spec.axis = SweepAxis::kTransmitPowerDbm;
    for (int p = 20; p <= 50; p += 2) spec.values.push_back(p);
    spec.users_transmission = 7;
    spec.ris_rows_cols = 50;
    spec.distance_m = 50.0;
  } else if (name == "fig2b") {
    spec.axis = SweepAxis::kUsersTransmission;
    for (int s = 1; s <= 9; ++s) spec.values.push_back(s);
    spec.series_axis = SweepAxis::kDistances;
    spec.series_values = {50.0, 100.0, 200.0};
    spec.ris_rows_cols = 100;
  } else if (name == "fig2c") {
    spec.axis = SweepAxis::kUsersTransmission;
    for (int s = 1; s <= 9; ++s) spec.values.push_back(s);
    spec.series_axis = SweepAxis::kRisRowsCols;
    spec.series_values = {50.0, 100.0, 150.0};
    spec.distance_m = 100.0;
  } else {
    throw ValidationError("preset", "unknown preset '" + std::string(name) + "' (expected fig2a, fig2b or fig2c)");
  }
  spec.outputs.push_back(SweepOutput::kDiagnostics);
  return spec;
}

/// Copy of `cfg` with one sweep coordinate set.
inline ScenarioConfig apply_axis(ScenarioConfig cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kTransmitPowerDbm:
      cfg.transmit_power_w = dbm_to_watts(value);
      break;
    case SweepAxis::kUsersTransmission:
      cfg.users_transmission = static_cast<int>(value);
      break;
    case SweepAxis::kRisRowsCols:
      resize_panel(cfg, static_cast<int>(value), static_cast<int>(value));
      break;
    case SweepAxis::kDistances:
      cfg.bs_ris_distance_m = value;
      cfg.ris_ue_distance_m = value;
      break;
  }
  validate(cfg);
  return cfg;
}

inline ScenarioConfig apply_overrides(ScenarioConfig cfg, const SweepSpec& spec) {
  if (spec.users_total) cfg.users_total = *spec.users_total;
  if (spec.users_transmission) cfg.users_transmission = *spec.users_transmission;
  if (spec.ris_rows_cols) resize_panel(cfg, *spec.ris_rows_cols, *spec.ris_rows_cols);
  if (spec.distance_m) cfg.bs_ris_distance_m = cfg.ris_ue_distance_m = *spec.distance_m;
  cfg.users_transmission = std::min(cfg.users_transmission, cfg.users_total);
  validate(cfg);
  return cfg;
}

struct SweepRow {
  double axis_value = 0.0;
  RisType type = RisType::kReflective;
  std::optional<double> closed_form;
  std::optional<double> upper_bound;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  std::optional<RisType> decision;  // brute-force optimum at this axis value
  std::optional<bool> agrees;       // table verdict == brute force
};

struct DiagnosticsRow {
  double axis_value = 0.0;
  std::optional<AsymptoticDiagnostics> asymptotic;
  RegimeReport regime;
};

struct SweepSeries {
  std::string label;  // file stem
  std::vector<SweepRow> rows;
  std::vector<DiagnosticsRow> diagnostics;
  bool regime_violation = false;  // some decision fell back to brute force
};

/// Evaluates every series of a sweep. Cell i (series-major, then axis value,
/// then type R, T, H) draws its Monte Carlo trials from base_seed XOR i.
inline std::vector<SweepSeries> evaluate_sweep(const ScenarioConfig& base, const SweepSpec& spec) {
  validate(spec);
  const ScenarioConfig cfg0 = apply_overrides(base, spec);
  std::vector<std::optional<double>> series = {std::nullopt};
  if (spec.series_axis) series.assign(spec.series_values.begin(), spec.series_values.end());

  std::vector<SweepSeries> out;
  std::uint64_t cell = 0;
  for (const auto& series_value : series) {
    SweepSeries s;
    s.label = spec.name;
    ScenarioConfig cfg_series = cfg0;
    if (series_value) {
      s.label += "_" + std::string(to_string(*spec.series_axis)) + "_" + detail::format_double(*series_value, 12);
      cfg_series = apply_axis(cfg0, *spec.series_axis, *series_value);
    }

    for (double v : spec.values) {
      const ScenarioConfig cfg = apply_axis(cfg_series, spec.axis, v);
      const LinkBudget budget = link_budget(cfg);

      std::optional<RisType> decision;
      std::optional<bool> agrees;
      if (spec.wants(SweepOutput::kDecision) && cfg.users_total >= 2) {
        try {
          const auto d = decide_type(cfg, budget);
          decision = d.brute_force_optimal;
          agrees = d.agrees;
        } catch (const RegimeViolationError&) {
          decision = brute_force_type(RateCurves::from(cfg, budget), cfg.users_transmission);
          s.regime_violation = true;
        }
      }

      for (RisType type : kAllRisTypes) {
        SweepRow row;
        row.axis_value = v;
        row.type = type;
        const PowerAllocation alloc = allocate_power(cfg, type, budget);
        if (spec.wants(SweepOutput::kClosedForm)) row.closed_form = closed_form_rate(cfg, type, budget);
        if (spec.wants(SweepOutput::kUpperBound)) row.upper_bound = upper_bound(cfg, type, alloc, budget);
        if (spec.wants(SweepOutput::kMonteCarlo)) {
          const auto mc = monte_carlo_capacity(cfg, type, alloc, spec.trials, spec.base_seed ^ cell);
          row.mc_mean = mc.monte_carlo_mean;
          row.mc_stderr = mc.monte_carlo_stderr;
        }
        row.decision = decision;
        row.agrees = agrees;
        s.rows.push_back(row);
        ++cell;
      }

      if (spec.wants(SweepOutput::kDiagnostics)) {
        DiagnosticsRow d;
        d.axis_value = v;
        d.regime = validate_approximation_regime(cfg);
        if (cfg.users_transmission >= 1 && cfg.users_transmission <= cfg.users_total - 1)
          d.asymptotic = asymptotic_checks(cfg, budget);
        s.diagnostics.push_back(d);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

inline std::string csv_number(const std::optional<double>& v) { return v ? format_double(*v, 12) : std::string{}; }

}  // namespace detail

inline constexpr std::string_view kSweepCsvHeader =
    "axis_value,type,closed_form,upper_bound,mc_mean,mc_stderr,decision,agrees";

inline constexpr std::string_view kDiagnosticsCsvHeader =
    "axis_value,e0,e_r,e_t,mn_threshold,hybrid_favorable,e1,e2,a1,a2,ch_minus_ct_approx,ch_minus_ct_exact,"
    "isotropic,high_snr";

/// Rates CSV: 12 significant digits, '.' decimal point, empty cell when an
/// output was not requested.
inline std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += detail::format_double(r.axis_value, 12);
    out += ',';
    out += to_string(r.type);
    out += ',' + detail::csv_number(r.closed_form);
    out += ',' + detail::csv_number(r.upper_bound);
    out += ',' + detail::csv_number(r.mc_mean);
    out += ',' + detail::csv_number(r.mc_stderr);
    out += ',';
    if (r.decision) out += to_string(*r.decision);
    out += ',';
    if (r.agrees) out += *r.agrees ? "true" : "false";
    out += '\n';
  }
  return out;
}

inline std::string format_diagnostics_csv(const std::vector<DiagnosticsRow>& rows) {
  std::string out(kDiagnosticsCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += detail::format_double(r.axis_value, 12);
    if (r.asymptotic) {
      const auto& a = *r.asymptotic;
      for (double v : {a.e0, a.e_r, a.e_t, a.mn_threshold}) out += ',' + detail::format_double(v, 12);
      out += a.hybrid_favorable ? ",true" : ",false";
      out += ',' + detail::format_double(a.e1, 12);
      out += ',' + detail::csv_number(a.e2);
      for (double v : {a.a1, a.a2, a.ch_minus_ct_approx, a.ch_minus_ct_exact}) out += ',' + detail::format_double(v, 12);
    } else {
      out += ",,,,,,,,,,,";
    }
    out += r.regime.isotropic ? ",true" : ",false";
    out += r.regime.high_snr ? ",true" : ",false";
    out += '\n';
  }
  return out;
}

struct SweepResult {
  std::vector<std::filesystem::path> files;
  bool regime_violation = false;
};

/// Evaluates a sweep and writes `<label>.csv` (and `<label>_diagnostics.csv`)
/// per series into `out_dir`, creating it if needed.
inline SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir))
    throw ValidationError("out", "cannot create output directory '" + out_dir.string() + "'");

  SweepResult result;
  const auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    if (!f) throw ValidationError("out", "cannot write '" + path.string() + "'");
    result.files.push_back(path);
  };

  for (const auto& series : evaluate_sweep(cfg, spec)) {
    write(out_dir / (series.label + ".csv"), format_sweep_csv(series.rows));
    if (spec.wants(SweepOutput::kDiagnostics))
      write(out_dir / (series.label + "_diagnostics.csv"), format_diagnostics_csv(series.diagnostics));
    result.regime_violation = result.regime_violation || series.regime_violation;
  }
  return result;
}

}  // namespace ris_select

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

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "detail/keyvalue.hpp"
#include "errors.hpp"
#include "units.hpp"

namespace ris_select {

// ------------------------------------------------------------------------
// RIS types and zones
// ------------------------------------------------------------------------

enum class RisType { kReflective, kTransmissive, kHybrid };

// Row order used by every report and CSV.
inline constexpr std::array<RisType, 3> kAllRisTypes = {RisType::kReflective, RisType::kTransmissive,
                                                       RisType::kHybrid};

inline std::string_view to_string(RisType type) {
  switch (type) {
    case RisType::kReflective: return "reflective";
    case RisType::kTransmissive: return "transmissive";
    case RisType::kHybrid: return "hybrid";
  }
  return "unknown";
}

inline RisType parse_ris_type(std::string_view name) {
  if (name == "reflective" || name == "R") return RisType::kReflective;
  if (name == "transmissive" || name == "T") return RisType::kTransmissive;
  if (name == "hybrid" || name == "H") return RisType::kHybrid;
  throw ValidationError("type", "unknown RIS type '" + std::string(name) + "'");
}

// Reflection zone is the BS side of the RIS plane, transmission zone the far side.
enum class Zone { kReflection, kTransmission };

// Lossless amplitude pair (Gamma^r, Gamma^t) of one element.
struct Amplitudes {
  double reflect;
  double transmit;
};

inline Amplitudes amplitudes(RisType type) {
  switch (type) {
    case RisType::kReflective: return {1.0, 0.0};
    case RisType::kTransmissive: return {0.0, 1.0};
    case RisType::kHybrid: return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
  }
  return {0.0, 0.0};
}

// |Gamma|^2 toward a zone. Exact 1/2 for hybrid (not the square of a rounded sqrt).
inline double power_fraction(RisType type, Zone zone) {
  switch (type) {
    case RisType::kReflective: return zone == Zone::kReflection ? 1.0 : 0.0;
    case RisType::kTransmissive: return zone == Zone::kTransmission ? 1.0 : 0.0;
    case RisType::kHybrid: return 0.5;
  }
  return 0.0;
}

// ------------------------------------------------------------------------
// Deployment description
// ------------------------------------------------------------------------

struct RisPanel {
  int rows = 1;
  int cols = 1;
  double element_width_m = 0.0;
  double element_height_m = 0.0;
  double element_gain = 1.0;
  double radiation_reflect = 1.0;   // epsilon_r
  double radiation_transmit = 1.0;  // epsilon_t
  // Row-major rows x cols grids.
  std::vector<double> phase_reflect_rad;
  std::vector<double> phase_transmit_rad;

  std::size_t elements() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
};

/// Full single-RIS downlink deployment in linear SI units.
///
/// All UEs are at the same distance from the RIS; only the zone split enters
/// the model. UE indices [0, S_R) sit in the reflection zone and [S_R, S) in
/// the transmission zone. Treat as immutable: copy and re-validate to vary.
struct ScenarioConfig {
  int bs_antennas = 1;
  double bs_ris_distance_m = 0.0;
  double ris_ue_distance_m = 0.0;
  double bs_height_m = 0.0;
  double ris_height_m = 0.0;
  int users_total = 1;
  int users_transmission = 0;
  double transmit_power_w = 0.0;
  double noise_variance_w = 0.0;
  double wavelength_m = 0.0;
  double antenna_gain = 1.0;
  double pathloss_exponent = 2.0;
  RisPanel panel;

  // Thresholds for the approximation-regime report and derivative dominance.
  double iso_tol = 0.1;
  double snr_floor = 10.0;
  double dominance_floor = 10.0;

  int users_reflection() const { return users_total - users_transmission; }

  Zone zone_of(int ue) const { return ue < users_reflection() ? Zone::kReflection : Zone::kTransmission; }
};

inline void validate(const ScenarioConfig& cfg) {
  const auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(field, what);
  };
  const auto finite = [](double v) { return std::isfinite(v); };

  require(cfg.bs_antennas >= 1, "bs_antennas", "must be a positive integer");
  require(finite(cfg.bs_ris_distance_m) && cfg.bs_ris_distance_m > 0, "bs_ris_distance_m", "must be > 0");
  require(finite(cfg.ris_ue_distance_m) && cfg.ris_ue_distance_m > 0, "ris_ue_distance_m", "must be > 0");
  require(finite(cfg.bs_height_m), "bs_height_m", "must be finite");
  require(finite(cfg.ris_height_m), "ris_height_m", "must be finite");
  require(cfg.users_total >= 1, "users_total", "must be a positive integer");
  require(cfg.users_transmission >= 0, "users_transmission", "must be >= 0");
  require(cfg.users_transmission <= cfg.users_total, "users_transmission", "users_transmission exceeds users_total");
  require(finite(cfg.transmit_power_w) && cfg.transmit_power_w > 0, "transmit_power", "must be > 0 W");
  require(finite(cfg.noise_variance_w) && cfg.noise_variance_w > 0, "noise", "must be > 0 W");
  require(finite(cfg.wavelength_m) && cfg.wavelength_m > 0, "wavelength_m", "must be > 0");
  require(finite(cfg.antenna_gain) && cfg.antenna_gain > 0, "antenna_gain", "must be > 0");
  require(finite(cfg.pathloss_exponent) && cfg.pathloss_exponent >= 1, "pathloss_exponent", "must be >= 1");
  require(cfg.bs_ris_distance_m >= std::abs(cfg.bs_height_m - cfg.ris_height_m), "bs_ris_distance_m",
          "shorter than the BS/RIS height difference");

  const RisPanel& p = cfg.panel;
  require(p.rows >= 1, "ris_rows", "must be a positive integer");
  require(p.cols >= 1, "ris_cols", "must be a positive integer");
  require(finite(p.element_width_m) && p.element_width_m > 0, "element_width_m", "must be > 0");
  require(finite(p.element_height_m) && p.element_height_m > 0, "element_height_m", "must be > 0");
  require(finite(p.element_gain) && p.element_gain > 0, "element_gain", "must be > 0");
  require(p.radiation_reflect > 0 && p.radiation_reflect <= 1, "radiation_reflect", "must be in (0, 1]");
  require(p.radiation_transmit > 0 && p.radiation_transmit <= 1, "radiation_transmit", "must be in (0, 1]");
  require(p.phase_reflect_rad.size() == p.elements(), "phase_reflect", "needs exactly rows*cols entries");
  require(p.phase_transmit_rad.size() == p.elements(), "phase_transmit", "needs exactly rows*cols entries");
  for (double v : p.phase_reflect_rad) require(finite(v), "phase_reflect", "entries must be finite");
  for (double v : p.phase_transmit_rad) require(finite(v), "phase_transmit", "entries must be finite");

  require(finite(cfg.iso_tol) && cfg.iso_tol >= 0, "iso_tol", "must be >= 0");
  require(finite(cfg.snr_floor) && cfg.snr_floor > 0, "snr_floor", "must be > 0");
  require(finite(cfg.dominance_floor) && cfg.dominance_floor > 0, "dominance_floor", "must be > 0");
}

/// Changes the element grid. Only allowed while both phase grids are all zero.
inline void resize_panel(ScenarioConfig& cfg, int rows, int cols) {
  const auto all_zero = [](const std::vector<double>& v) {
    for (double x : v)
      if (x != 0.0) return false;
    return true;
  };
  if (!all_zero(cfg.panel.phase_reflect_rad) || !all_zero(cfg.panel.phase_transmit_rad))
    throw ValidationError("ris_rows", "cannot resize a panel with explicit phase grids");
  if (rows < 1 || cols < 1) throw ValidationError("ris_rows", "must be a positive integer");
  cfg.panel.rows = rows;
  cfg.panel.cols = cols;
  cfg.panel.phase_reflect_rad.assign(cfg.panel.elements(), 0.0);
  cfg.panel.phase_transmit_rad.assign(cfg.panel.elements(), 0.0);
}

/// Downlink reference deployment: 12-antenna BS at 43 dBm, 10 UEs with 7 in
/// the transmission zone, 50x50 panel of 2 cm elements, 50 m links.
inline ScenarioConfig reference_scenario() {
  ScenarioConfig cfg;
  cfg.bs_antennas = 12;
  cfg.bs_ris_distance_m = 50.0;
  cfg.ris_ue_distance_m = 50.0;
  cfg.bs_height_m = 30.0;
  cfg.ris_height_m = 15.0;
  cfg.users_total = 10;
  cfg.users_transmission = 7;
  cfg.transmit_power_w = dbm_to_watts(43.0);
  cfg.noise_variance_w = dbm_to_watts(-96.0);
  cfg.wavelength_m = 0.1;
  cfg.antenna_gain = 1.0;
  cfg.pathloss_exponent = 2.0;
  cfg.panel.element_width_m = 0.02;
  cfg.panel.element_height_m = 0.02;
  cfg.panel.element_gain = 1.0;
  cfg.panel.radiation_reflect = 1.0;
  cfg.panel.radiation_transmit = 0.95;
  resize_panel(cfg, 50, 50);
  return cfg;
}

// ------------------------------------------------------------------------
// Configuration text
// ------------------------------------------------------------------------

/// Parses flat `key = value` scenario text. Units are carried in key suffixes;
/// power and noise accept exactly one of `_dbm` / `_w`, phases one of `_rad` /
/// `_deg` (optional, zero when absent). Unknown or duplicate keys are errors.
inline ScenarioConfig load_scenario(std::string_view text) {
  using detail::KeyValue;
  const auto entries = detail::parse_key_values(text);

  ScenarioConfig cfg;
  std::vector<double> phase_reflect, phase_transmit;
  bool have_phase_reflect = false, have_phase_transmit = false;

  const auto to_int = [](const KeyValue& kv) {
    const long long v = detail::parse_integer(kv);
    if (v < -2147483647LL || v > 2147483647LL) throw SyntaxError(kv.line, kv.key + ": integer out of range");
    return static_cast<int>(v);
  };
  const auto deg_list = [](const KeyValue& kv) {
    auto v = detail::parse_double_list(kv);
    for (double& x : v) x = degrees_to_radians(x);
    return v;
  };

  using Setter = std::function<void(const KeyValue&)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"bs_antennas", [&](const KeyValue& kv) { cfg.bs_antennas = to_int(kv); }},
      {"bs_ris_distance_m", [&](const KeyValue& kv) { cfg.bs_ris_distance_m = detail::parse_double(kv); }},
      {"ris_ue_distance_m", [&](const KeyValue& kv) { cfg.ris_ue_distance_m = detail::parse_double(kv); }},
      {"bs_height_m", [&](const KeyValue& kv) { cfg.bs_height_m = detail::parse_double(kv); }},
      {"ris_height_m", [&](const KeyValue& kv) { cfg.ris_height_m = detail::parse_double(kv); }},
      {"users_total", [&](const KeyValue& kv) { cfg.users_total = to_int(kv); }},
      {"users_transmission", [&](const KeyValue& kv) { cfg.users_transmission = to_int(kv); }},
      {"transmit_power_dbm", [&](const KeyValue& kv) { cfg.transmit_power_w = dbm_to_watts(detail::parse_double(kv)); }},
      {"transmit_power_w", [&](const KeyValue& kv) { cfg.transmit_power_w = detail::parse_double(kv); }},
      {"noise_dbm", [&](const KeyValue& kv) { cfg.noise_variance_w = dbm_to_watts(detail::parse_double(kv)); }},
      {"noise_w", [&](const KeyValue& kv) { cfg.noise_variance_w = detail::parse_double(kv); }},
      {"wavelength_m", [&](const KeyValue& kv) { cfg.wavelength_m = detail::parse_double(kv); }},
      {"antenna_gain", [&](const KeyValue& kv) { cfg.antenna_gain = detail::parse_double(kv); }},
      {"pathloss_exponent", [&](const KeyValue& kv) { cfg.pathloss_exponent = detail::parse_double(kv); }},
      {"ris_rows", [&](const KeyValue& kv) { cfg.panel.rows = to_int(kv); }},
      {"ris_cols", [&](const KeyValue& kv) { cfg.panel.cols = to_int(kv); }},
      {"element_width_m", [&](const KeyValue& kv) { cfg.panel.element_width_m = detail::parse_double(kv); }},
      {"element_height_m", [&](const KeyValue& kv) { cfg.panel.element_height_m = detail::parse_double(kv); }},
      {"element_gain", [&](const KeyValue& kv) { cfg.panel.element_gain = detail::parse_double(kv); }},
      {"radiation_reflect", [&](const KeyValue& kv) { cfg.panel.radiation_reflect = detail::parse_double(kv); }},
      {"radiation_transmit", [&](const KeyValue& kv) { cfg.panel.radiation_transmit = detail::parse_double(kv); }},
      {"phase_reflect_rad",
       [&](const KeyValue& kv) {
         phase_reflect = detail::parse_double_list(kv);
         have_phase_reflect = true;
       }},
      {"phase_reflect_deg", [&](const KeyValue& kv) {
         phase_reflect = deg_list(kv);
         have_phase_reflect = true;
       }},
      {"phase_transmit_rad",
       [&](const KeyValue& kv) {
         phase_transmit = detail::parse_double_list(kv);
         have_phase_transmit = true;
       }},
      {"phase_transmit_deg", [&](const KeyValue& kv) {
         phase_transmit = deg_list(kv);
         have_phase_transmit = true;
       }},
      {"iso_tol", [&](const KeyValue& kv) { cfg.iso_tol = detail::parse_double(kv); }},
      {"snr_floor", [&](const KeyValue& kv) { cfg.snr_floor = detail::parse_double(kv); }},
      {"dominance_floor", [&](const KeyValue& kv) { cfg.dominance_floor = detail::parse_double(kv); }},
  };
  // Keys that name the same quantity in different units.
  const std::map<std::string, std::string, std::less<>> quantity = {
      {"transmit_power_dbm", "transmit_power"}, {"transmit_power_w", "transmit_power"},
      {"noise_dbm", "noise"},                   {"noise_w", "noise"},
      {"phase_reflect_rad", "phase_reflect"},   {"phase_reflect_deg", "phase_reflect"},
      {"phase_transmit_rad", "phase_transmit"}, {"phase_transmit_deg", "phase_transmit"},
  };

  std::set<std::string, std::less<>> seen;
  for (const auto& kv : entries) {
    const auto it = setters.find(kv.key);
    if (it == setters.end()) throw SyntaxError(kv.line, "unknown key '" + kv.key + "'");
    const auto q = quantity.find(kv.key);
    const std::string name = q == quantity.end() ? kv.key : q->second;
    if (!seen.insert(name).second) throw SyntaxError(kv.line, "'" + name + "' given more than once");
    it->second(kv);
  }

  for (const char* required :
       {"bs_antennas", "bs_ris_distance_m", "ris_ue_distance_m", "bs_height_m", "ris_height_m", "users_total",
        "users_transmission", "transmit_power", "noise", "wavelength_m", "antenna_gain", "pathloss_exponent",
        "ris_rows", "ris_cols", "element_width_m", "element_height_m", "element_gain", "radiation_reflect",
        "radiation_transmit"}) {
    if (!seen.contains(required)) throw ValidationError(required, "missing");
  }

  if (cfg.panel.rows >= 1 && cfg.panel.cols >= 1) {
    cfg.panel.phase_reflect_rad =
        have_phase_reflect ? std::move(phase_reflect) : std::vector<double>(cfg.panel.elements(), 0.0);
    cfg.panel.phase_transmit_rad =
        have_phase_transmit ? std::move(phase_transmit) : std::vector<double>(cfg.panel.elements(), 0.0);
  }
  validate(cfg);
  return cfg;
}

inline ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("scenario", "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

/// Canonical text form; load_scenario(to_config_text(cfg)) reproduces cfg exactly.
inline std::string to_config_text(const ScenarioConfig& cfg) {
  using detail::format_double;
  std::ostringstream out;
  const auto line = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
  const auto grid = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
  };
  const auto nonzero = [](const std::vector<double>& v) {
    for (double x : v)
      if (x != 0.0) return true;
    return false;
  };

  line("bs_antennas", std::to_string(cfg.bs_antennas));
  line("bs_ris_distance_m", format_double(cfg.bs_ris_distance_m));
  line("ris_ue_distance_m", format_double(cfg.ris_ue_distance_m));
  line("bs_height_m", format_double(cfg.bs_height_m));
  line("ris_height_m", format_double(cfg.ris_height_m));
  line("users_total", std::to_string(cfg.users_total));
  line("users_transmission", std::to_string(cfg.users_transmission));
  line("transmit_power_w", format_double(cfg.transmit_power_w));
  line("noise_w", format_double(cfg.noise_variance_w));
  line("wavelength_m", format_double(cfg.wavelength_m));
  line("antenna_gain", format_double(cfg.antenna_gain));
  line("pathloss_exponent", format_double(cfg.pathloss_exponent));
  line("ris_rows", std::to_string(cfg.panel.rows));
  line("ris_cols", std::to_string(cfg.panel.cols));
  line("element_width_m", format_double(cfg.panel.element_width_m));
  line("element_height_m", format_double(cfg.panel.element_height_m));
  line("element_gain", format_double(cfg.panel.element_gain));
  line("radiation_reflect", format_double(cfg.panel.radiation_reflect));
  line("radiation_transmit", format_double(cfg.panel.radiation_transmit));
  if (nonzero(cfg.panel.phase_reflect_rad)) line("phase_reflect_rad", grid(cfg.panel.phase_reflect_rad));
  if (nonzero(cfg.panel.phase_transmit_rad)) line("phase_transmit_rad", grid(cfg.panel.phase_transmit_rad));
  line("iso_tol", format_double(cfg.iso_tol));
  line("snr_floor", format_double(cfg.snr_floor));
  line("dominance_floor", format_double(cfg.dominance_floor));
  return out.str();
}

// FNV-1a over the canonical text.
inline std::uint64_t config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_config_text(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ------------------------------------------------------------------------
// Geometry
// ------------------------------------------------------------------------

/// cos^2 of the angle between the BS->RIS-centre ray and the RIS normal.
///
/// The BS sits at zero azimuth on the reflection side, offset from the RIS
/// centre only along the normal and vertically, so cos(theta) =
/// sqrt(D^2 - dh^2) / D. Returns 0 at grazing incidence (D == |dh|).
inline double incident_angle_factor(const ScenarioConfig& cfg) {
  const double d = cfg.bs_ris_distance_m;
  const double dh = std::abs(cfg.bs_height_m - cfg.ris_height_m);
  const double cos_sq = (d - dh) * (d + dh) / (d * d);
  return cos_sq > 0.0 ? cos_sq : 0.0;
}

}  // namespace ris_select

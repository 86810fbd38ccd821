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

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "ris_select/ris_select.hpp"

using namespace ris_select;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::string kReferenceText = R"(# reference deployment
bs_antennas = 12
bs_ris_distance_m = 50
ris_ue_distance_m = 50
bs_height_m = 30
ris_height_m = 15
users_total = 10
users_transmission = 7
transmit_power_dbm = 43
noise_dbm = -96
wavelength_m = 0.1
antenna_gain = 1
pathloss_exponent = 2
ris_rows = 50
ris_cols = 50
element_width_m = 0.02
element_height_m = 0.02
element_gain = 1
radiation_reflect = 1
radiation_transmit = 0.95
)";

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
  const auto pos = text.find(key + " =");
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos);
  return text.replace(pos, end - pos, line);
}

}  // namespace

TEST_CASE("dBm conversion", "[scenario]") {
  CHECK_THAT(dbm_to_watts(43.0), WithinRel(19.952623149688797, 1e-14));
  CHECK_THAT(dbm_to_watts(-96.0), WithinRel(2.5118864315095801e-13, 1e-14));
  CHECK_THAT(dbm_to_watts(30.0), WithinRel(1.0, 1e-15));
  CHECK_THAT(degrees_to_radians(180.0), WithinRel(std::numbers::pi, 1e-15));
}

TEST_CASE("dBm and watts round trip", "[scenario]") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> exponent(-15.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = std::pow(10.0, exponent(gen));
    CHECK_THAT(dbm_to_watts(watts_to_dbm(w)), WithinRel(w, 1e-12));
  }
}

TEST_CASE("reference text loads to the reference deployment", "[scenario]") {
  const ScenarioConfig cfg = load_scenario(kReferenceText);
  CHECK(to_config_text(cfg) == to_config_text(reference_scenario()));
  CHECK(cfg.users_reflection() == 3);
  CHECK(cfg.zone_of(2) == Zone::kReflection);
  CHECK(cfg.zone_of(3) == Zone::kTransmission);
  CHECK(cfg.panel.elements() == 2500);
  CHECK(cfg.panel.phase_reflect_rad.size() == 2500);
}

TEST_CASE("shipped reference config matches the built-in deployment", "[scenario]") {
  const auto cfg = load_scenario_file(std::string(RIS_SELECT_SOURCE_DIR) + "/configs/reference.cfg");
  CHECK(config_hash(cfg) == config_hash(reference_scenario()));
}

TEST_CASE("canonical text reloads to an identical scenario", "[scenario]") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    ScenarioConfig cfg = reference_scenario();
    cfg.bs_ris_distance_m = 20.0 + 300.0 * u(gen);
    cfg.ris_ue_distance_m = 1.0 + 300.0 * u(gen);
    cfg.transmit_power_w = std::pow(10.0, -3.0 + 5.0 * u(gen));
    cfg.noise_variance_w = std::pow(10.0, -15.0 + 4.0 * u(gen));
    cfg.panel.radiation_transmit = 0.05 + 0.95 * u(gen);
    cfg.users_total = 2 + static_cast<int>(20 * u(gen));
    cfg.users_transmission = static_cast<int>((cfg.users_total + 1) * u(gen));
    resize_panel(cfg, 1 + static_cast<int>(4 * u(gen)), 1 + static_cast<int>(4 * u(gen)));
    for (auto& p : cfg.panel.phase_transmit_rad) p = 6.0 * u(gen);
    const std::string text = to_config_text(cfg);
    const ScenarioConfig back = load_scenario(text);
    CHECK(to_config_text(back) == text);
    CHECK(back.transmit_power_w == cfg.transmit_power_w);
    CHECK(back.panel.phase_transmit_rad == cfg.panel.phase_transmit_rad);
  }
}

TEST_CASE("transmission users beyond the total are rejected", "[scenario]") {
  const std::string text = replace_line(kReferenceText, "users_transmission", "users_transmission = 11");
  try {
    (void)load_scenario(text);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "users_transmission");
    CHECK_THAT(e.what(), ContainsSubstring("users_transmission exceeds users_total"));
  }
}

TEST_CASE("invariant violations name the offending field", "[scenario]") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"bs_antennas", "bs_antennas = 0"},
      {"bs_ris_distance_m", "bs_ris_distance_m = -1"},
      {"ris_ue_distance_m", "ris_ue_distance_m = 0"},
      {"users_total", "users_total = 0"},
      {"users_transmission", "users_transmission = -1"},
      {"wavelength_m", "wavelength_m = 0"},
      {"antenna_gain", "antenna_gain = -2"},
      {"pathloss_exponent", "pathloss_exponent = 0.5"},
      {"ris_rows", "ris_rows = 0"},
      {"element_width_m", "element_width_m = 0"},
      {"element_gain", "element_gain = 0"},
      {"radiation_reflect", "radiation_reflect = 1.5"},
      {"radiation_transmit", "radiation_transmit = 0"},
  };
  for (const auto& [field, line] : cases) {
    INFO(line);
    try {
      (void)load_scenario(replace_line(kReferenceText, field, line));
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field() == field);
    }
  }
  ScenarioConfig cfg = reference_scenario();
  cfg.bs_ris_distance_m = 10.0;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  cfg = reference_scenario();
  cfg.transmit_power_w = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate(cfg), ValidationError);
}

TEST_CASE("malformed scenario text is a syntax error with a line number", "[scenario]") {
  try {
    (void)load_scenario("bs_antennas = 12\nnot a pair\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_scenario(kReferenceText + "colour = blue\n"), SyntaxError);
  CHECK_THROWS_AS(load_scenario(kReferenceText + "bs_antennas = 4\n"), SyntaxError);
  CHECK_THROWS_AS(load_scenario(replace_line(kReferenceText, "bs_antennas", "bs_antennas = 12.5")), SyntaxError);
  CHECK_THROWS_AS(load_scenario(replace_line(kReferenceText, "wavelength_m", "wavelength_m = 0.1m")), SyntaxError);
}

TEST_CASE("power and noise take exactly one unit", "[scenario]") {
  CHECK_THROWS_AS(load_scenario(kReferenceText + "transmit_power_w = 20\n"), SyntaxError);
  const std::string watts = replace_line(kReferenceText, "noise_dbm", "noise_w = 2.5e-13");
  CHECK(load_scenario(watts).noise_variance_w == 2.5e-13);
  const std::string none = replace_line(kReferenceText, "noise_dbm", "# no noise");
  try {
    (void)load_scenario(none);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "noise");
  }
}

TEST_CASE("phase grids in degrees and radians", "[scenario]") {
  std::string text = replace_line(kReferenceText, "ris_rows", "ris_rows = 1");
  text = replace_line(text, "ris_cols", "ris_cols = 2");
  const auto deg = load_scenario(text + "phase_reflect_deg = 90, 180\n");
  CHECK_THAT(deg.panel.phase_reflect_rad[0], WithinRel(std::numbers::pi / 2, 1e-15));
  CHECK_THAT(deg.panel.phase_reflect_rad[1], WithinRel(std::numbers::pi, 1e-15));
  CHECK(deg.panel.phase_transmit_rad == std::vector<double>{0.0, 0.0});
  const auto rad = load_scenario(text + "phase_transmit_rad = 0.5 1.5\n");
  CHECK(rad.panel.phase_transmit_rad == std::vector<double>{0.5, 1.5});
  CHECK_THROWS_AS(load_scenario(text + "phase_reflect_rad = 1, 2, 3\n"), ValidationError);
  CHECK_THROWS_AS(load_scenario(text + "phase_reflect_rad = 1, 2\nphase_reflect_deg = 1, 2\n"), SyntaxError);
}

TEST_CASE("incident angle factor", "[scenario]") {
  ScenarioConfig cfg = reference_scenario();
  CHECK_THAT(incident_angle_factor(cfg), WithinRel(0.91, 1e-14));
  cfg.ris_height_m = cfg.bs_height_m;
  CHECK(incident_angle_factor(cfg) == 1.0);
  cfg = reference_scenario();
  cfg.bs_ris_distance_m = 15.0;
  CHECK(incident_angle_factor(cfg) == 0.0);

  cfg = reference_scenario();
  double previous = 0.0;
  for (double d = 15.0; d < 1000.0; d *= 1.1) {
    cfg.bs_ris_distance_m = d;
    const double f = incident_angle_factor(cfg);
    CHECK(f >= previous);
    CHECK(f <= 1.0);
    previous = f;
  }
}

TEST_CASE("hybrid elements split power evenly", "[scenario]") {
  CHECK(power_fraction(RisType::kHybrid, Zone::kReflection) == 0.5);
  CHECK(power_fraction(RisType::kHybrid, Zone::kTransmission) == 0.5);
  CHECK(power_fraction(RisType::kReflective, Zone::kTransmission) == 0.0);
  CHECK(power_fraction(RisType::kTransmissive, Zone::kTransmission) == 1.0);
  CHECK(parse_ris_type("H") == RisType::kHybrid);
  CHECK_THROWS_AS(parse_ris_type("diffractive"), ValidationError);
}

TEST_CASE("config hash tracks content", "[scenario]") {
  ScenarioConfig a = reference_scenario();
  ScenarioConfig b = reference_scenario();
  CHECK(config_hash(a) == config_hash(b));
  b.panel.phase_reflect_rad[17] = 0.25;
  CHECK(config_hash(a) != config_hash(b));
}

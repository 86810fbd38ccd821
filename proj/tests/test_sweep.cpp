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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ris_select/ris_select.hpp"

using namespace ris_select;
using Catch::Matchers::ContainsSubstring;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t columns(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ris_select_test_" + name);
  fs::remove_all(dir);
  return dir;
}

SweepSpec closed_form_only(SweepSpec spec) {
  spec.outputs = {SweepOutput::kClosedForm, SweepOutput::kUpperBound, SweepOutput::kDecision};
  return spec;
}

}  // namespace

TEST_CASE("sweep description parsing", "[sweep]") {
  const SweepSpec spec = load_sweep_spec(
      "name = demo\naxis = users_transmission\nvalues = 1, 2, 3\nseries_axis = distances\n"
      "series_values = 50 100\ntrials = 20\nbase_seed = 9\noutputs = closed_form, decision\n");
  CHECK(spec.name == "demo");
  CHECK(spec.axis == SweepAxis::kUsersTransmission);
  CHECK(spec.values == std::vector<double>{1, 2, 3});
  CHECK(spec.series_axis == SweepAxis::kDistances);
  CHECK(spec.series_values == std::vector<double>{50, 100});
  CHECK(spec.trials == 20);
  CHECK(spec.base_seed == 9);
  CHECK(spec.wants(SweepOutput::kDecision));
  CHECK_FALSE(spec.wants(SweepOutput::kMonteCarlo));

  const auto file = load_sweep_spec_file(std::string(RIS_SELECT_SOURCE_DIR) + "/configs/power_sweep.sweep");
  CHECK(file.values.size() == 4);
}

TEST_CASE("malformed sweep descriptions", "[sweep]") {
  CHECK_THROWS_AS(load_sweep_spec("axis = colour\nvalues = 1\n"), ValidationError);
  CHECK_THROWS_AS(load_sweep_spec("values = 1\n"), ValidationError);
  CHECK_THROWS_AS(load_sweep_spec("axis = distances\nvalues = 50, 40, 60\n"), ValidationError);
  CHECK_THROWS_AS(load_sweep_spec("axis = distances\nvalues = 50, 50\n"), ValidationError);
  CHECK_THROWS_AS(load_sweep_spec("axis = users_transmission\nvalues = 1.5\n"), ValidationError);
  CHECK_THROWS_AS(load_sweep_spec("axis = distances\nvalues = 50\nspeed = 3\n"), SyntaxError);
  CHECK_THROWS_AS(load_sweep_spec("axis = distances\nvalues = 50\nname = ../up\n"), ValidationError);
  CHECK_THROWS_AS(load_sweep_spec("axis = distances\nvalues = 50\nseries_values = 1\n"), ValidationError);
  CHECK_THROWS_AS(load_sweep_spec("axis = distances\nvalues = 50\noutputs = plots\n"), ValidationError);
  CHECK_THROWS_AS(preset_sweep("fig3"), ValidationError);
}

TEST_CASE("figure presets", "[sweep]") {
  const auto a = preset_sweep("fig2a");
  CHECK(a.values.size() == 16);
  CHECK(a.values.front() == 20.0);
  CHECK(a.values.back() == 50.0);
  CHECK(a.trials == 100);
  const auto b = preset_sweep("fig2b");
  CHECK(b.series_values == std::vector<double>{50, 100, 200});
  const auto c = preset_sweep("fig2c");
  CHECK(c.series_values == std::vector<double>{50, 100, 150});
}

TEST_CASE("power sweep rows and Jensen ordering", "[sweep]") {
  SweepSpec spec = preset_sweep("fig2a");
  spec.trials = 20;
  const auto series = evaluate_sweep(reference_scenario(), spec);
  REQUIRE(series.size() == 1);
  CHECK(series[0].label == "fig2a");
  REQUIRE(series[0].rows.size() == 48);
  CHECK(series[0].diagnostics.size() == 16);
  for (const auto& row : series[0].rows) {
    CHECK(*row.mc_mean <= *row.upper_bound + 2.0 * *row.mc_stderr);
    CHECK(std::abs(*row.closed_form - *row.upper_bound) <= 1e-10 * std::max(1.0, *row.closed_form));
    CHECK(*row.agrees);
  }
  // Rates grow with power.
  for (std::size_t i = 3; i < 48; ++i) CHECK(*series[0].rows[i].closed_form > *series[0].rows[i - 3].closed_form);
}

TEST_CASE("distance series: hybrid never wins at 200 m", "[sweep]") {
  const auto series = evaluate_sweep(reference_scenario(), closed_form_only(preset_sweep("fig2b")));
  REQUIRE(series.size() == 3);
  CHECK(series[2].label == "fig2b_distances_200");
  bool hybrid_at_50 = false;
  for (const auto& row : series[0].rows) hybrid_at_50 = hybrid_at_50 || row.decision == RisType::kHybrid;
  CHECK(hybrid_at_50);
  for (const auto& row : series[2].rows) CHECK(row.decision != RisType::kHybrid);
}

TEST_CASE("panel series: the largest panel favours hybrid", "[sweep]") {
  const auto series = evaluate_sweep(reference_scenario(), closed_form_only(preset_sweep("fig2c")));
  REQUIRE(series.size() == 3);
  CHECK(series[0].label == "fig2c_ris_rows_cols_50");
  int hybrid_small = 0, hybrid_large = 0;
  for (const auto& row : series[0].rows) hybrid_small += row.decision == RisType::kHybrid;
  for (const auto& row : series[2].rows) hybrid_large += row.decision == RisType::kHybrid;
  CHECK(hybrid_large > hybrid_small);
  for (const auto& d : series[2].diagnostics) {
    REQUIRE(d.asymptotic);
    if (d.asymptotic->hybrid_favorable) {
      const auto it = std::find_if(series[2].rows.begin(), series[2].rows.end(),
                                   [&](const SweepRow& r) { return r.axis_value == d.axis_value; });
      CHECK(it->decision == RisType::kHybrid);
    }
  }
}

TEST_CASE("CSV layout", "[sweep]") {
  SweepSpec spec = preset_sweep("fig2a");
  spec.trials = 5;
  const auto series = evaluate_sweep(reference_scenario(), spec);
  const auto rates = lines_of(format_sweep_csv(series[0].rows));
  REQUIRE(rates.size() == 49);
  CHECK(rates[0] == kSweepCsvHeader);
  for (const auto& line : rates) CHECK(columns(line) == 8);
  CHECK_THAT(rates[1], ContainsSubstring("20,reflective,"));
  CHECK_THAT(rates[3], ContainsSubstring(",hybrid,"));
  const auto diag = lines_of(format_diagnostics_csv(series[0].diagnostics));
  REQUIRE(diag.size() == 17);
  CHECK(diag[0] == kDiagnosticsCsvHeader);
  for (const auto& line : diag) CHECK(columns(line) == 14);

  SweepRow sparse;
  sparse.axis_value = 0.5;
  CHECK(lines_of(format_sweep_csv({sparse}))[1] == "0.5,reflective,,,,,,");
}

TEST_CASE("run_sweep writes one file pair per series", "[sweep]") {
  const fs::path dir = scratch_dir("files");
  const auto result = run_sweep(reference_scenario(), closed_form_only(preset_sweep("fig2b")), dir / "nested");
  CHECK(result.files.size() == 3);
  CHECK(fs::exists(dir / "nested" / "fig2b_distances_100.csv"));
  CHECK_FALSE(fs::exists(dir / "nested" / "fig2b_distances_100_diagnostics.csv"));
  CHECK_FALSE(result.regime_violation);
  fs::remove_all(dir);
}

TEST_CASE("sweeps are reproducible for a fixed seed", "[sweep]") {
  SweepSpec spec = preset_sweep("fig2a");
  spec.trials = 10;
  spec.base_seed = 7;
  const fs::path dir = scratch_dir("repro");
  run_sweep(reference_scenario(), spec, dir / "one");
  run_sweep(reference_scenario(), spec, dir / "two");
  CHECK(slurp(dir / "one" / "fig2a.csv") == slurp(dir / "two" / "fig2a.csv"));
  CHECK(slurp(dir / "one" / "fig2a_diagnostics.csv") == slurp(dir / "two" / "fig2a_diagnostics.csv"));
  spec.base_seed = 8;
  run_sweep(reference_scenario(), spec, dir / "three");
  CHECK(slurp(dir / "one" / "fig2a.csv") != slurp(dir / "three" / "fig2a.csv"));
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory", "[sweep]") {
  const fs::path dir = scratch_dir("blocked");
  fs::create_directories(dir);
  std::ofstream(dir / "plain_file") << "x";
  CHECK_THROWS_AS(run_sweep(reference_scenario(), closed_form_only(preset_sweep("fig2a")), dir / "plain_file" / "out"),
                  ValidationError);
  fs::remove_all(dir);
}

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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ris_select/channel.hpp"
#include "ris_select/report.hpp"
#include "ris_select/ris_select.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ris_select;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDiagnostic = 2;

// --seed, then RIS_SELECT_SEED, then the fallback.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RIS_SELECT_SEED")) {
    try {
      return detail::parse_unsigned({"RIS_SELECT_SEED", env, 0});
    } catch (const SyntaxError&) {
      throw ValidationError("RIS_SELECT_SEED", std::string("not a non-negative integer: '") + env + "'");
    }
  }
  return fallback;
}

struct Options {
  std::string scenario;
  std::string sweep;
  std::string preset;
  std::string out = ".";
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::string type = "hybrid";
  std::string fading = "gaussian";
  std::size_t count = 1;
};

int run_evaluate(const Options& opt) {
  const ScenarioConfig cfg = load_scenario_file(opt.scenario);
  const auto report = evaluate_scenario(cfg, opt.trials.value_or(100), resolve_seed(opt.seed, 0));

  fs::create_directories(opt.out);
  const fs::path path = fs::path(opt.out) / "evaluation.json";
  std::ofstream f(path);
  f << to_json(report).dump(2) << '\n';
  if (!f) throw ValidationError("out", "cannot write '" + path.string() + "'");

  std::cout << summary_line(report) << std::endl;
  if (opt.strict) {
    if (report.decision_error) {
      std::cerr << "strict: " << *report.decision_error << '\n';
      return kExitDiagnostic;
    }
    if (!report.regime.holds()) {
      std::cerr << "strict: approximation regime violated (" << report.regime.summary() << ")\n";
      return kExitDiagnostic;
    }
  }
  return kExitOk;
}

int run_sweep_command(const Options& opt) {
  if (opt.sweep.empty() == opt.preset.empty()) throw ValidationError("sweep", "give exactly one of --sweep or --preset");
  const ScenarioConfig cfg = opt.scenario.empty() ? reference_scenario() : load_scenario_file(opt.scenario);
  SweepSpec spec = opt.preset.empty() ? load_sweep_spec_file(opt.sweep) : preset_sweep(opt.preset);
  if (opt.trials) spec.trials = *opt.trials;
  spec.base_seed = resolve_seed(opt.seed, spec.base_seed);

  const SweepResult result = run_sweep(cfg, spec, opt.out);
  for (const auto& file : result.files) std::cout << file.string() << '\n';
  if (opt.strict && result.regime_violation) {
    std::cerr << "strict: the decision table was not applicable in at least one cell\n";
    return kExitDiagnostic;
  }
  return kExitOk;
}

int run_dump(const Options& opt) {
  const ScenarioConfig cfg = load_scenario_file(opt.scenario);
  const RisType type = parse_ris_type(opt.type);
  const FadingLaw law = parse_fading_law(opt.fading);
  const std::uint64_t base = resolve_seed(opt.seed, 0);
  const std::uint64_t hash = config_hash(cfg);
  fs::create_directories(opt.out);
  for (std::size_t i = 0; i < opt.count; ++i) {
    const std::uint64_t seed = base + i;
    const ChannelMatrix h = sample_channel(cfg, type, seed, law);
    if (h.warning && i == 0) std::cerr << "warning: " << *h.warning << '\n';
    const fs::path path = fs::path(opt.out) / ("channel_seed_" + std::to_string(seed) + ".txt");
    std::ofstream f(path);
    write_channel_dump(f, h, hash);
    if (!f) throw ValidationError("out", "cannot write '" + path.string() + "'");
    std::cout << path.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS type selection: sum-rate bounds, Monte Carlo capacity and optimal-type decisions"};
  app.require_subcommand(1);
  Options opt;

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate all three RIS types for one scenario");
  evaluate->add_option("--scenario", opt.scenario, "Scenario file")->required();
  evaluate->add_option("--out", opt.out, "Directory for evaluation.json");
  evaluate->add_option("--trials", opt.trials, "Monte Carlo trials (default 100)")->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", opt.seed, "Base seed (falls back to RIS_SELECT_SEED, then 0)");
  evaluate->add_flag("--strict", opt.strict, "Exit 2 when the approximation regime or decision table fails");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV datasets");
  sweep->add_option("--scenario", opt.scenario, "Scenario file (default: built-in reference deployment)");
  auto* spec_opt = sweep->add_option("--sweep", opt.sweep, "Sweep description file");
  sweep->add_option("--preset", opt.preset, "Figure preset")
      ->check(CLI::IsMember({"fig2a", "fig2b", "fig2c"}))
      ->excludes(spec_opt);
  sweep->add_option("--out", opt.out, "Output directory")->required();
  sweep->add_option("--trials", opt.trials, "Monte Carlo trials per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", opt.seed, "Base seed (falls back to RIS_SELECT_SEED)");
  sweep->add_flag("--strict", opt.strict, "Exit 2 when a cell falls outside the decision table's regime");

  auto* dump = app.add_subcommand("dump-channels", "Write sampled channel matrices, one file per seed");
  dump->add_option("--scenario", opt.scenario, "Scenario file")->required();
  dump->add_option("--type", opt.type, "reflective, transmissive or hybrid");
  dump->add_option("--fading", opt.fading, "gaussian, uniform_phase or quadrature_phase");
  dump->add_option("--seed", opt.seed, "First seed (falls back to RIS_SELECT_SEED, then 0)");
  dump->add_option("--count", opt.count, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  dump->add_option("--out", opt.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*evaluate) return run_evaluate(opt);
    if (*sweep) return run_sweep_command(opt);
    return run_dump(opt);
  } catch (const DegenerateGeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return opt.strict ? kExitDiagnostic : kExitValidation;
  } catch (const DiagnosticError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return opt.strict ? kExitDiagnostic : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

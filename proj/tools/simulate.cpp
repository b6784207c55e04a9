// Copyright 2026 The oqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "criteria.hpp"
#include "oqsim/runner.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

int run(const fs::path& config, const std::optional<fs::path>& out,
        const std::optional<std::uint64_t>& seed) {
  oqsim::ExperimentConfig cfg;
  try {
    cfg = oqsim::load_config(config);
  } catch (const oqsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  if (seed) oqsim::override_seed(cfg, *seed);
  const fs::path dir = out.value_or(fs::path("out") / cfg.name);

  const oqsim::ResultBundle b = oqsim::run_experiment(cfg);
  oqsim::write_bundle(b, dir);
  for (const auto& t : b.training) {
    std::cout << t.stage << ": final cost " << t.final_cost;
    if (t.fidelity) std::cout << ", fidelity " << *t.fidelity;
    std::cout << " (" << t.iterations << " iterations, " << t.starts << " starts)\n";
  }
  if (b.failed_stage) {
    std::cerr << "stage '" << *b.failed_stage << "' failed: " << b.error << "\n";
    return *b.failed_stage == "model" ? kConfigError : kNumericalError;
  }
  if (!b.trace.cumulative_prob.empty()) {
    std::cout << cfg.num_steps << " steps, cumulative success probability "
              << b.trace.cumulative_prob.back() << "\n";
  }
  std::cout << "wrote " << dir.string() << "\n";
  return 0;
}

int list_presets(const fs::path& dir) {
  std::vector<fs::path> files;
  if (fs::is_directory(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
  }
  if (files.empty()) {
    std::cerr << "no presets in " << dir.string() << "\n";
    return kConfigError;
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    const nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    std::string about = doc.is_object() ? doc.value("description", "") : "(unreadable)";
    std::cout << f.string() << (about.empty() ? "" : "\n    " + about) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-system dynamics on simulated LCU circuits"};
  app.require_subcommand(1);

  fs::path config;
  std::optional<fs::path> out;
  std::optional<std::uint64_t> seed;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment config");
  run_cmd->add_option("config", config, "Experiment JSON file")->required();
  run_cmd->add_option("--out", out, "Output directory (default out/<name>)");
  run_cmd->add_option("--seed", seed, "Override every stage seed");

  fs::path presets = OQSIM_CONFIG_DIR;
  auto* list_cmd = app.add_subcommand("list-presets", "List bundled configs");
  list_cmd->add_option("--dir", presets, "Preset directory");

  std::vector<int> ids;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria");
  verify_cmd->add_option("ids", ids, "Criterion numbers (default all)")
      ->check(CLI::Range(1, oqsim::acceptance::kCriteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  try {
    if (*run_cmd) return run(config, out, seed);
    if (*list_cmd) return list_presets(presets);
    if (*verify_cmd) return oqsim::acceptance::run_and_print(ids) == 0 ? 0 : kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  return 0;
}

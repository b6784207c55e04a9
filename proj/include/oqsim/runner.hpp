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


#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oqsim/ansatz.hpp"
#include "oqsim/evolve.hpp"

namespace oqsim {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  std::string name;  // "amplitude_damping" or "dtfim"
  double delta = 1.0;
  double omega = 1.0;
  double gamma = 1.0;
  double coupling = 1.0;  // V of the Ising model
  /// "grouped" selects the eight-term damped-qubit step, "generic" the padded
  /// generator; only the damped qubit supports "grouped".
  std::string step = "generic";
};

struct CircuitStage {
  std::string mode = "exact";  // exact | trained
  AnsatzSpec ansatz{};
  OptOptions opt{};
  std::uint64_t seed = 1;
  double init_scale = 0.1;
};

struct ExperimentConfig {
  std::string name;
  ModelSpec model;
  double dt = 0.01;
  double total_time = 1.0;
  int num_steps = 0;  // derived from dt and total_time
  Algorithm algorithm = Algorithm::ExactLcu;
  std::size_t initial_basis = 0;
  CircuitStage ancilla;
  CircuitStage select;
  std::vector<std::string> observables;
  bool compare_reference = true;
  std::vector<std::string> plots;
  nlohmann::json source;  // the parsed document, echoed into the bundle
};

/// Throws ConfigError with the offending key on malformed input.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Replaces every stage seed with `seed` and `seed + 1`.
void override_seed(ExperimentConfig& cfg, std::uint64_t seed);

struct TrainingRecord {
  std::string stage;
  std::vector<double> cost_history;
  double final_cost = 0.0;
  std::optional<double> fidelity;
  int iterations = 0;
  int starts = 0;
};

struct ResultBundle {
  ExperimentConfig config;
  EvolutionTrace trace;
  std::optional<EvolutionTrace> reference;
  std::vector<TrainingRecord> training;
  std::optional<std::string> failed_stage;
  std::string error;

  nlohmann::json to_json() const;
};

/// Runs the stages named by the config: ancilla preparation, select
/// compilation, evolution and the optional reference. On failure the bundle
/// keeps completed stages and names the failing one; the original exception
/// is rethrown by run_experiment_or_throw.
ResultBundle run_experiment(const ExperimentConfig& cfg);
ResultBundle run_experiment_or_throw(const ExperimentConfig& cfg);

/// Writes `<which>.csv` into `dir`: fig5c (t, <obs>_exact, <obs>_<alg> ...),
/// fig5h (steps, samples_vqa, samples_ours) or training (stage, iteration,
/// cost, best_so_far). Throws std::invalid_argument for other names.
std::filesystem::path emit_plot_data(const ResultBundle& bundle, const std::string& which,
                                     const std::filesystem::path& dir);

/// manifest.json plus every CSV listed in the config.
void write_bundle(const ResultBundle& bundle, const std::filesystem::path& dir);

}  // namespace oqsim

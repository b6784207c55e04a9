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


#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oqsim/runner.hpp"

using namespace oqsim;
using nlohmann::json;

namespace {

json base_config() {
  return json::parse(R"({
    "name": "unit",
    "model": {"name": "amplitude_damping", "delta": 1.0, "omega": 1.0, "gamma": 1.0, "step": "grouped"},
    "dt": 0.01,
    "total_time": 0.2,
    "algorithm": "alg3",
    "observables": ["sx", "sz"],
    "plots": ["fig5c", "fig5h", "training"]
  })");
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("oqsim_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<std::string> lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("parse_config reads a full document") {
  const ExperimentConfig c = parse_config(base_config());
  CHECK(c.name == "unit");
  CHECK(c.model.step == "grouped");
  CHECK(c.num_steps == 20);
  CHECK(c.algorithm == Algorithm::Alg3);
  CHECK(c.ancilla.mode == "exact");
  CHECK(c.select.mode == "exact");
  CHECK(c.compare_reference);

  json d = base_config();
  d["ancilla"] = {{"mode", "trained"},
                  {"seed", 4},
                  {"ansatz", {{"depth", 4}, {"rotation", "ry"}, {"entangler", "cnot"}}},
                  {"optimizer", {{"max_iter", 50}, {"restarts", 2}}}};
  d["select"] = {{"mode", "compiled"},
                 {"ansatz", {{"depth", 3}, {"rotation", "rzryrz"}, {"entangler", "cry"}}}};
  const ExperimentConfig t = parse_config(d);
  CHECK(t.ancilla.mode == "trained");
  CHECK(t.ancilla.seed == 4);
  CHECK(t.ancilla.ansatz.depth == 4);
  CHECK(t.ancilla.opt.max_iter == 50);
  CHECK(t.ancilla.opt.restarts == 2);
  CHECK(t.select.ansatz.rotation == RotationKind::RzRyRz);
  CHECK(t.select.ansatz.entangler == EntanglerKind::Cry);
}

TEST_CASE("parse_config rejects malformed input") {
  auto with = [](const std::string& key, const json& value) {
    json d = base_config();
    d[key] = value;
    return d;
  };
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK_THROWS_AS(parse_config(with("dt", 0.03)), ConfigError);
  CHECK_THROWS_AS(parse_config(with("dt", -0.01)), ConfigError);
  CHECK_THROWS_AS(parse_config(with("dt", "fast")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("algorithm", "alg5")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("observables", json{"sq"})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("observables", json{"sz1"})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("plots", json{"fig9"})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("model", json{{"name", "ising3d"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("ancilla", json{{"mode", "guess"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("ancilla", json{{"mode", "degraded"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("initial_basis", 4)), ConfigError);
  json missing = base_config();
  missing.erase("total_time");
  CHECK_THROWS_AS(parse_config(missing), ConfigError);

  CHECK_NOTHROW(parse_config(with("model", json{{"name", "dtfim"}, {"V", 1.0}, {"gamma", 0.1}})));
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("override_seed") {
  ExperimentConfig c = parse_config(base_config());
  override_seed(c, 40);
  CHECK(c.ancilla.seed == 40);
  CHECK(c.select.seed == 41);
  CHECK(c.source["select"]["seed"] == 41);
}

TEST_CASE("run_experiment with exact circuits") {
  const ExperimentConfig c = parse_config(base_config());
  const ResultBundle b = run_experiment_or_throw(c);
  CHECK(!b.failed_stage);
  REQUIRE(b.reference);
  CHECK(b.trace.times.size() == 21);
  CHECK(b.trace.series("sz").size() == 21);
  CHECK(std::abs(b.trace.series("sz").back() - b.reference->series("sz").back()) < 5e-3);

  const json j = b.to_json();
  CHECK(j["trace"]["algorithm"] == "alg3");
  CHECK(j["trace"]["observables"]["sx"].size() == 21);
  CHECK(j["config"]["name"] == "unit");

  const auto dir = scratch("exact");
  write_bundle(b, dir);
  CHECK(std::filesystem::exists(dir / "manifest.json"));
  const auto c5 = lines(dir / "fig5c.csv");
  REQUIRE(c5.size() == 23);
  CHECK(c5[0].rfind("# columns:", 0) == 0);
  CHECK(c5[1] == "t,sx_exact,sx_alg3,sz_exact,sz_alg3");
  const auto h = lines(dir / "fig5h.csv");
  REQUIRE(h.size() == 22);
  CHECK(h[1] == "steps,samples_vqa,samples_ours");
  CHECK(h[2].rfind("1,10000,", 0) == 0);
  CHECK(lines(dir / "training.csv").size() == 2);
  std::ifstream mf(dir / "manifest.json");
  const json round = json::parse(mf);
  CHECK(round["num_steps"] == 20);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run_experiment trains the ancilla and compiles the select") {
  json d = base_config();
  d["total_time"] = 0.05;
  d["ancilla"] = {{"mode", "trained"},
                  {"ansatz", {{"depth", 2}, {"rotation", "ry"}, {"entangler", "cnot"}}},
                  {"optimizer", {{"max_iter", 100}, {"restarts", 1}}}};
  d["select"] = {{"mode", "compiled"},
                 {"ansatz", {{"depth", 1}, {"rotation", "rzryrz"}, {"entangler", "cry"}}},
                 {"optimizer", {{"max_iter", 20}, {"restarts", 1}}}};
  const ResultBundle b = run_experiment(parse_config(d));
  REQUIRE(!b.failed_stage);
  REQUIRE(b.training.size() == 2);
  CHECK(b.training[0].stage == "ancilla");
  CHECK(b.training[0].fidelity);
  CHECK(b.training[1].stage == "select");
  CHECK(b.training[1].cost_history.size() >= 2);
  CHECK(b.trace.times.size() == 6);

  const auto dir = scratch("trained");
  const auto p = emit_plot_data(b, "training", dir);
  const auto t = lines(p);
  CHECK(t[1] == "stage,iteration,cost,best_so_far");
  CHECK(t.size() == 2 + b.training[0].cost_history.size() + b.training[1].cost_history.size());
  CHECK_THROWS_AS(emit_plot_data(b, "fig9", dir), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("degraded ancilla records its fidelity") {
  json d = base_config();
  d["ancilla"] = {{"mode", "degraded"}, {"fidelity", 0.999}, {"seed", 3}};
  const ResultBundle b = run_experiment_or_throw(parse_config(d));
  REQUIRE(b.training.size() == 1);
  CHECK(*b.training[0].fidelity == 0.999);
}

TEST_CASE("failures name their stage") {
  json d = base_config();
  d["model"]["omega"] = 2.0;  // grouped step needs delta == omega
  const ExperimentConfig c = parse_config(d);
  const ResultBundle b = run_experiment(c);
  REQUIRE(b.failed_stage);
  CHECK(*b.failed_stage == "model");
  CHECK(b.to_json()["error"]["stage"] == "model");
  CHECK_THROWS_AS(run_experiment_or_throw(c), ConfigError);

  // A degraded ancilla orthogonal enough to kill the projection fails in evolve.
  json e = base_config();
  e["ancilla"] = {{"mode", "degraded"}, {"fidelity", 0.0}, {"seed", 1}};
  const ResultBundle be = run_experiment(parse_config(e));
  if (be.failed_stage) {
    CHECK(*be.failed_stage == "evolve");
    CHECK_THROWS_AS(run_experiment_or_throw(parse_config(e)), NumericalError);
  }
}

TEST_CASE("bundled presets parse") {
  int count = 0;
  for (const auto& e : std::filesystem::directory_iterator(OQSIM_CONFIG_DIR)) {
    if (e.path().extension() != ".json") continue;
    CAPTURE(e.path().string());
    const ExperimentConfig c = load_config(e.path());
    CHECK(c.name == e.path().stem().string());
    ++count;
  }
  CHECK(count >= 8);
}

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


#include "oqsim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "oqsim/compile.hpp"
#include "oqsim/models.hpp"
#include "oqsim/vqsp.hpp"

namespace oqsim {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

template <typename T>
T require(const json& obj, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("config is missing required key '" + key + "'");
  return get_or<T>(obj, key, T{});
}

OptOptions parse_opt(const json& j, OptOptions o) {
  if (!j.is_object()) return o;
  o.gtol = get_or(j, "gtol", o.gtol);
  o.max_iter = get_or(j, "max_iter", o.max_iter);
  o.fd_step = get_or(j, "fd_step", o.fd_step);
  o.restarts = get_or(j, "restarts", o.restarts);
  o.seed = get_or(j, "seed", o.seed);
  o.restart_scale = get_or(j, "restart_scale", o.restart_scale);
  o.restart_around_init = get_or(j, "restart_around_init", o.restart_around_init);
  o.ftol = get_or(j, "ftol", o.ftol);
  if (j.contains("target_cost")) o.target_cost = get_or(j, "target_cost", 0.0);
  if (o.max_iter < 0 || o.restarts < 1 || !(o.fd_step > 0.0)) {
    throw ConfigError("optimizer options out of range");
  }
  return o;
}

CircuitStage parse_stage(const json& j, const std::string& which, const OptOptions& base) {
  CircuitStage s;
  s.opt = base;
  if (j.is_null()) return s;
  if (!j.is_object()) throw ConfigError("'" + which + "' must be an object");
  s.mode = get_or<std::string>(j, "mode", "exact");
  s.seed = get_or<std::uint64_t>(j, "seed", s.seed);
  s.init_scale = get_or(j, "init_scale", s.init_scale);
  if (j.contains("ansatz")) {
    const json& a = j.at("ansatz");
    s.ansatz.depth = get_or(a, "depth", 1);
    try {
      s.ansatz.rotation = rotation_from_string(get_or<std::string>(a, "rotation", "ry"));
      s.ansatz.entangler = entangler_from_string(get_or<std::string>(a, "entangler", "cnot"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(which + ".ansatz: " + e.what());
    }
    if (s.ansatz.depth < 0) throw ConfigError(which + ".ansatz.depth must be nonnegative");
  }
  if (j.contains("optimizer")) s.opt = parse_opt(j.at("optimizer"), base);
  return s;
}

void check_mode(const CircuitStage& s, const std::string& which,
                std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (s.mode == a) return;
  }
  throw ConfigError("unknown " + which + ".mode '" + s.mode + "'");
}

LindbladModel make_model(const ModelSpec& m) {
  if (m.name == "amplitude_damping") return amplitude_damping_model(m.delta, m.omega, m.gamma);
  if (m.name == "dtfim") return dtfim_model(m.coupling, m.omega, m.gamma);
  throw ConfigError("unknown model '" + m.name + "'");
}

StepOperator make_step_for(const ModelSpec& m, const LindbladModel& model, double dt) {
  if (m.step == "grouped") {
    if (m.name != "amplitude_damping") throw ConfigError("step 'grouped' needs amplitude_damping");
    return amplitude_damping_step(m.delta, m.omega, m.gamma, dt);
  }
  if (m.step != "generic") throw ConfigError("unknown step kind '" + m.step + "'");
  return build_step(build_generator(model), dt);
}

Observable make_observable(const std::string& name, int n) {
  if (name == "magnetization") return average_magnetization(n);
  if (name.size() >= 2 && name[0] == 's') {
    const char axis = name[1];
    int site = 0;
    if (name.size() > 2) {
      try {
        site = std::stoi(name.substr(2));
      } catch (const std::exception&) {
        throw ConfigError("bad observable name '" + name + "'");
      }
    }
    if ((axis == 'x' || axis == 'y' || axis == 'z') && site >= 0 && site < n) {
      return pauli_observable(n, site, pauli_from_char(static_cast<char>(axis - 'a' + 'A')));
    }
  }
  throw ConfigError("unknown observable '" + name + "' for " + std::to_string(n) + " qubits");
}

json trace_json(const EvolutionTrace& tr, const std::string& algorithm) {
  json j;
  j["algorithm"] = algorithm;
  j["times"] = tr.times;
  j["step_probs"] = tr.step_probs;
  j["cumulative_prob"] = tr.cumulative_prob;
  json obs = json::object();
  for (const auto& [name, values] : tr.observables) obs[name] = values;
  j["observables"] = obs;
  const StateVector& last = tr.states.back();
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < last.dim(); ++i) {
    re.push_back(last[i].real());
    im.push_back(last[i].imag());
  }
  j["final_state"] = {{"re", re}, {"im", im}};
  return j;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  c.source = doc;
  c.name = get_or<std::string>(doc, "name", "experiment");

  const json model = require<json>(doc, "model");
  c.model.name = require<std::string>(model, "name");
  c.model.delta = get_or(model, "delta", c.model.delta);
  c.model.omega = get_or(model, "omega", c.model.omega);
  c.model.gamma = get_or(model, "gamma", c.model.gamma);
  c.model.coupling = get_or(model, "V", c.model.coupling);
  c.model.step = get_or<std::string>(model, "step", "generic");
  if (c.model.name != "amplitude_damping" && c.model.name != "dtfim") {
    throw ConfigError("unknown model '" + c.model.name + "'");
  }

  c.dt = require<double>(doc, "dt");
  c.total_time = require<double>(doc, "total_time");
  if (!(c.dt > 0.0) || !(c.total_time > 0.0)) throw ConfigError("dt and total_time must be positive");
  const double steps = c.total_time / c.dt;
  c.num_steps = static_cast<int>(std::llround(steps));
  if (c.num_steps < 1 || std::abs(c.num_steps * c.dt - c.total_time) > 1e-12 * std::max(1.0, c.total_time)) {
    throw ConfigError("total_time must be an integer multiple of dt");
  }

  try {
    c.algorithm = algorithm_from_string(get_or<std::string>(doc, "algorithm", "exact_lcu"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.initial_basis = get_or<std::size_t>(doc, "initial_basis", 0);
  c.ancilla = parse_stage(doc.value("ancilla", json()), "ancilla", VqspOptions{}.opt);
  c.select = parse_stage(doc.value("select", json()), "select", OptOptions{});
  check_mode(c.ancilla, "ancilla", {"exact", "trained", "degraded"});
  check_mode(c.select, "select", {"exact", "compiled"});
  if (c.ancilla.mode == "degraded") {
    const json& a = doc.at("ancilla");
    if (!a.contains("fidelity")) throw ConfigError("ancilla.mode 'degraded' needs 'fidelity'");
  }
  c.observables = get_or<std::vector<std::string>>(doc, "observables", {});
  c.compare_reference = get_or(doc, "compare_reference", true);
  c.plots = get_or<std::vector<std::string>>(doc, "plots", {});
  for (const auto& p : c.plots) {
    if (p != "fig5c" && p != "fig5h" && p != "training") {
      throw ConfigError("unknown plot '" + p + "'");
    }
  }
  const int n = c.model.name == "dtfim" ? 2 : 1;
  for (const auto& o : c.observables) make_observable(o, n);
  if (c.initial_basis >= (std::size_t{1} << (2 * n))) {
    throw ConfigError("initial_basis out of range");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

void override_seed(ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.ancilla.seed = seed;
  cfg.ancilla.opt.seed = seed;
  cfg.select.seed = seed + 1;
  cfg.select.opt.seed = seed + 1;
  for (const char* key : {"ancilla", "select"}) {
    const std::uint64_t s = std::string(key) == "ancilla" ? seed : seed + 1;
    if (!cfg.source.contains(key) || !cfg.source[key].is_object()) cfg.source[key] = json::object();
    cfg.source[key]["seed"] = s;
    cfg.source[key]["optimizer"]["seed"] = s;
  }
}

ResultBundle run_experiment(const ExperimentConfig& cfg) {
  ResultBundle b;
  b.config = cfg;
  std::string stage = "model";
  try {
    const LindbladModel model = make_model(cfg.model);
    const StepOperator step = make_step_for(cfg.model, model, cfg.dt);
    const int n = model.num_system_qubits;
    std::vector<NamedObservable> obs;
    for (const auto& name : cfg.observables) obs.push_back({name, make_observable(name, n)});
    const StateVector initial = StateVector::basis(2 * n, cfg.initial_basis);

    EvolveOptions eo;
    eo.algorithm = cfg.algorithm;
    eo.num_steps = cfg.num_steps;
    eo.observables = obs;

    const bool lcu_circuit = cfg.algorithm == Algorithm::Alg3 || cfg.algorithm == Algorithm::Alg4;
    if (lcu_circuit && cfg.ancilla.mode != "exact") {
      stage = "ancilla";
      const DenseOperator exact = cfg.algorithm == Algorithm::Alg3
                                      ? exact_ancilla_unitary(step)
                                      : exact_ancilla_unitary_prime(step);
      const StateVector target(exact.matrix().col(0));
      if (cfg.ancilla.mode == "degraded") {
        const double f = cfg.source.at("ancilla").at("fidelity").get<double>();
        eo.ancilla = unitary_with_first_column(degrade_state(target, f, cfg.ancilla.seed).amplitudes());
        b.training.push_back({"ancilla", {}, 0.0, f, 0, 0});
      } else {
        AnsatzSpec spec = cfg.ancilla.ansatz;
        spec.num_qubits = step.m;
        const ParameterizedCircuit circuit(spec);
        VqspOptions vo;
        vo.opt = cfg.ancilla.opt;
        vo.init_seed = cfg.ancilla.seed;
        vo.init_scale = cfg.ancilla.init_scale;
        const TargetVector tv = classify(target.amplitudes());
        const VqspResult r = train_vqsp(tv, circuit, vo);
        eo.ancilla = evaluate_unitary(circuit, r.params);
        b.training.push_back({"ancilla", r.opt.cost_history, r.cost, r.fidelity, r.opt.iterations,
                              r.opt.starts});
      }
    }
    if (lcu_circuit && cfg.select.mode == "compiled") {
      stage = "select";
      const BlockDiagonalUnitary sel = build_select(step.lcu);
      AnsatzSpec spec = cfg.select.ansatz;
      spec.num_qubits = sel.num_qubits();
      const ParameterizedCircuit circuit(spec);
      CompileOptions co;
      co.opt = cfg.select.opt;
      co.init_seed = cfg.select.seed;
      co.init_scale = cfg.select.init_scale;
      const OptResult r = train_compiler(sel, circuit, co);
      eo.select = evaluate_unitary(circuit, r.best_params);
      b.training.push_back({"select", r.cost_history, r.best_cost, std::nullopt, r.iterations,
                            r.starts});
    }

    stage = "evolve";
    b.trace = evolve_trace(model, step, initial, eo);
    if (cfg.compare_reference && cfg.algorithm != Algorithm::Reference) {
      stage = "reference";
      b.reference = exact_reference(model, cfg.dt * cfg.num_steps, cfg.num_steps, initial, obs);
    }
  } catch (const std::exception& e) {
    b.failed_stage = stage;
    b.error = e.what();
  }
  return b;
}

ResultBundle run_experiment_or_throw(const ExperimentConfig& cfg) {
  ResultBundle b = run_experiment(cfg);
  if (b.failed_stage) {
    const std::string msg = "stage '" + *b.failed_stage + "' failed: " + b.error;
    if (*b.failed_stage == "model") throw ConfigError(msg);
    throw NumericalError(msg);
  }
  return b;
}

json ResultBundle::to_json() const {
  json j;
  j["config"] = config.source;
  j["name"] = config.name;
  j["num_steps"] = config.num_steps;
  if (!trace.times.empty()) j["trace"] = trace_json(trace, to_string(config.algorithm));
  if (reference) j["reference"] = trace_json(*reference, "reference");
  json tr = json::array();
  for (const auto& t : training) {
    json r;
    r["stage"] = t.stage;
    r["final_cost"] = t.final_cost;
    r["iterations"] = t.iterations;
    r["starts"] = t.starts;
    r["cost_history"] = t.cost_history;
    if (t.fidelity) r["fidelity"] = *t.fidelity;
    tr.push_back(r);
  }
  j["training"] = tr;
  if (failed_stage) j["error"] = {{"stage", *failed_stage}, {"message", error}};
  return j;
}

std::filesystem::path emit_plot_data(const ResultBundle& bundle, const std::string& which,
                                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (which + ".csv");
  std::ostringstream out;
  const EvolutionTrace& tr = bundle.trace;
  if (which == "fig5c") {
    if (tr.times.empty()) throw std::invalid_argument("fig5c needs an evolution trace");
    const std::string alg = to_string(bundle.config.algorithm);
    std::vector<std::string> cols{"t"};
    std::vector<const std::vector<double>*> data{&tr.times};
    for (const auto& [name, values] : tr.observables) {
      if (bundle.reference) {
        cols.push_back(name + "_exact");
        data.push_back(&bundle.reference->series(name));
      }
      cols.push_back(name + "_" + alg);
      data.push_back(&values);
    }
    std::string header;
    for (std::size_t k = 0; k < cols.size(); ++k) header += (k ? "," : "") + cols[k];
    out << "# columns: " << header << " (exact = matrix-exponential reference)\n" << header << "\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      for (std::size_t k = 0; k < data.size(); ++k) out << (k ? "," : "") << fmt((*data[k])[i]);
      out << "\n";
    }
  } else if (which == "fig5h") {
    if (tr.cumulative_prob.empty()) throw std::invalid_argument("fig5h needs an evolution trace");
    out << "# columns: steps, samples_vqa (1e4 for precision 1e-2), samples_ours (1/P_suc)\n";
    out << "steps,samples_vqa,samples_ours\n";
    for (std::size_t k = 0; k < tr.cumulative_prob.size(); ++k) {
      out << k + 1 << "," << fmt(1e4) << "," << fmt(1.0 / tr.cumulative_prob[k]) << "\n";
    }
  } else if (which == "training") {
    out << "# columns: stage, iteration, cost, best_so_far\n";
    out << "stage,iteration,cost,best_so_far\n";
    for (const auto& t : bundle.training) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t.cost_history.size(); ++i) {
        best = std::min(best, t.cost_history[i]);
        out << t.stage << "," << i << "," << fmt(t.cost_history[i]) << "," << fmt(best) << "\n";
      }
    }
  } else {
    throw std::invalid_argument("unknown plot series '" + which + "'");
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << out.str();
  return path;
}

void write_bundle(const ResultBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "manifest.json");
    if (!f) throw std::runtime_error("cannot write manifest in " + dir.string());
    f << std::setw(2) << bundle.to_json() << "\n";
  }
  if (bundle.failed_stage) return;
  for (const auto& p : bundle.config.plots) emit_plot_data(bundle, p, dir);
}

}  // namespace oqsim

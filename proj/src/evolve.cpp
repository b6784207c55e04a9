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


#include "oqsim/evolve.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "oqsim/compile.hpp"

namespace oqsim {

StepOperator build_step(const LcuOperator& gen, double dt, int order) {
  if (order != 1) throw std::invalid_argument("only first-order steps are supported");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  const int width = gen.num_qubits();
  if (width < 2) throw std::invalid_argument("generator has no qubits");

  std::vector<LcuTerm> terms;
  for (const auto& t : gen.terms()) terms.push_back({t.weight * dt, t.unitary, t.label});
  std::size_t total = 2;
  while (total < terms.size() + 1) total <<= 1;
  const std::size_t pad = total - terms.size();
  const DenseOperator id = DenseOperator::identity(width);
  const std::string id_label = "+" + PauliTerm::identity(width).label();
  for (std::size_t k = 0; k < pad; ++k) {
    terms.push_back({1.0 / static_cast<double>(pad), id, id_label});
  }
  StepOperator s;
  s.lcu = LcuOperator(width, std::move(terms));
  s.dt = dt;
  s.order = order;
  s.m = log2_exact(total);
  return s;
}

StepOperator make_step(LcuOperator lcu, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (lcu.empty() || !is_power_of_two(lcu.size())) {
    throw std::invalid_argument("step needs a power-of-two number of terms");
  }
  StepOperator s;
  s.m = log2_exact(lcu.size());
  s.lcu = std::move(lcu);
  s.dt = dt;
  return s;
}

namespace {

void check_state(const StateVector& state, const StepOperator& step) {
  if (state.num_qubits() != step.lcu.num_qubits()) {
    throw std::invalid_argument("state has " + std::to_string(state.num_qubits()) +
                                " qubits, step acts on " +
                                std::to_string(step.lcu.num_qubits()));
  }
}

StepResult project_leading(const StateVector& psi, int system_width, const Vector& weights) {
  const Eigen::Index block = Eigen::Index{1} << system_width;
  const Eigen::Index blocks = static_cast<Eigen::Index>(psi.dim()) / block;
  Vector proj = Vector::Zero(block);
  for (Eigen::Index j = 0; j < blocks; ++j) {
    proj += weights[j] * psi.amplitudes().segment(j * block, block);
  }
  const double p = proj.squaredNorm();
  if (p < 1e-28) throw NumericalError("post-selected state vanished");
  return {StateVector(proj / std::sqrt(p)), p};
}

// (G⊗I)|ψ⟩ for a gate on the leading register; ψ viewed as block × 2^m.
Vector apply_leading(const Matrix& g, const Vector& psi, Eigen::Index block) {
  const Eigen::Index blocks = g.rows();
  Eigen::Map<const Matrix> x(psi.data(), block, blocks);
  Matrix y = x * g.transpose();
  return Eigen::Map<const Vector>(y.data(), y.size());
}

StateVector premeasure(const StateVector& state, const DenseOperator& u, const DenseOperator& v,
                       const Matrix& out_gate) {
  const Eigen::Index block = static_cast<Eigen::Index>(state.dim());
  if (static_cast<Eigen::Index>(v.dim()) != block * static_cast<Eigen::Index>(u.dim())) {
    throw std::invalid_argument("select unitary width does not match ancilla + state");
  }
  // (U⊗I)|0^m⟩|ρ⟩ = U|0⟩ ⊗ |ρ⟩
  const Vector a = u.matrix().col(0);
  Vector psi(v.dim());
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    psi.segment(j * block, block) = a[j] * state.amplitudes();
  }
  psi = v.matrix() * psi;
  return StateVector(apply_leading(out_gate, psi, block));
}

}  // namespace

StepResult step_exact_lcu(const StateVector& state, const StepOperator& step) {
  check_state(state, step);
  Vector q = Vector::Zero(static_cast<Eigen::Index>(state.dim()));
  for (const auto& t : step.lcu.terms()) q += t.weight * (t.unitary.matrix() * state.amplitudes());
  const double n2 = q.squaredNorm();
  if (n2 < 1e-28) throw NumericalError("step annihilated the state");
  const double a = step.lcu.weight_sum();
  return {StateVector(q / std::sqrt(n2)), n2 / (a * a)};
}

DenseOperator exact_ancilla_unitary(const StepOperator& step) {
  Vector col(static_cast<Eigen::Index>(step.lcu.size()));
  const double a = step.lcu.weight_sum();
  for (std::size_t j = 0; j < step.lcu.size(); ++j) {
    col[static_cast<Eigen::Index>(j)] = std::sqrt(step.lcu.terms()[j].weight / a);
  }
  return unitary_with_first_column(col);
}

DenseOperator exact_ancilla_unitary_prime(const StepOperator& step) {
  Vector col(static_cast<Eigen::Index>(step.lcu.size()));
  const double a2 = std::sqrt(step.lcu.weight_square_sum());
  for (std::size_t j = 0; j < step.lcu.size(); ++j) {
    col[static_cast<Eigen::Index>(j)] = step.lcu.terms()[j].weight / a2;
  }
  return unitary_with_first_column(col);
}

StateVector premeasure_algorithm3(const StateVector& state, const DenseOperator& u,
                                  const DenseOperator& v) {
  return premeasure(state, u, v, u.matrix().adjoint());
}

StateVector premeasure_algorithm4(const StateVector& state, const DenseOperator& u_prime,
                                  const DenseOperator& v) {
  return premeasure(state, u_prime, v, gates::hadamard_power(u_prime.num_qubits()));
}

StepResult step_algorithm3(const StateVector& state, const DenseOperator& u,
                           const DenseOperator& v) {
  // Only the |0^m⟩ block of (U†⊗I) is kept, so U† is folded into the weights.
  const StateVector psi = premeasure(state, u, v, Matrix::Identity(u.dim(), u.dim()));
  return project_leading(psi, state.num_qubits(), u.matrix().col(0).conjugate());
}

StepResult step_algorithm4(const StateVector& state, const DenseOperator& u_prime,
                           const DenseOperator& v) {
  const StateVector psi = premeasure(state, u_prime, v, Matrix::Identity(u_prime.dim(), u_prime.dim()));
  const auto dim = static_cast<Eigen::Index>(u_prime.dim());
  const Vector w = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  return project_leading(psi, state.num_qubits(), w);
}

StepResult step_algorithm3(const StateVector& state, const ParameterizedCircuit& u_circuit,
                           std::span<const double> u_params,
                           const ParameterizedCircuit& v_circuit,
                           std::span<const double> v_params) {
  return step_algorithm3(state, evaluate_unitary(u_circuit, u_params),
                         evaluate_unitary(v_circuit, v_params));
}

StepResult step_algorithm4(const StateVector& state, const ParameterizedCircuit& u_circuit,
                           std::span<const double> u_params,
                           const ParameterizedCircuit& v_circuit,
                           std::span<const double> v_params) {
  return step_algorithm4(state, evaluate_unitary(u_circuit, u_params),
                         evaluate_unitary(v_circuit, v_params));
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ExactLcu: return "exact_lcu";
    case Algorithm::Alg3: return "alg3";
    case Algorithm::Alg4: return "alg4";
    case Algorithm::Reference: return "reference";
  }
  return "exact_lcu";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "exact_lcu") return Algorithm::ExactLcu;
  if (s == "alg3") return Algorithm::Alg3;
  if (s == "alg4") return Algorithm::Alg4;
  if (s == "reference") return Algorithm::Reference;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

const std::vector<double>& EvolutionTrace::series(const std::string& name) const {
  for (const auto& [n, v] : observables) {
    if (n == name) return v;
  }
  throw std::invalid_argument("trace has no series '" + name + "'");
}

namespace {

EvolutionTrace start_trace(const StateVector& initial,
                           const std::vector<NamedObservable>& observables) {
  EvolutionTrace tr;
  tr.times.push_back(0.0);
  tr.states.push_back(initial.normalized());
  for (const auto& [name, obs] : observables) {
    tr.observables.push_back({name, {expectation_complex(tr.states.back(), obs).real()}});
  }
  return tr;
}

// Traces keep the real part: approximate circuits leave a small
// anti-Hermitian component that the Hadamard-test readout discards.
void record(EvolutionTrace& tr, double t, StateVector state, double prob,
            const std::vector<NamedObservable>& observables) {
  tr.times.push_back(t);
  tr.step_probs.push_back(prob);
  const double prev = tr.cumulative_prob.empty() ? 1.0 : tr.cumulative_prob.back();
  tr.cumulative_prob.push_back(prev * prob);
  for (std::size_t k = 0; k < observables.size(); ++k) {
    tr.observables[k].second.push_back(expectation_complex(state, observables[k].second).real());
  }
  tr.states.push_back(std::move(state));
}

}  // namespace

EvolutionTrace evolve_trace(const LindbladModel& model, const StepOperator& step,
                            const StateVector& initial, const EvolveOptions& opts) {
  if (opts.num_steps < 1) throw std::invalid_argument("need at least one step");
  if (opts.algorithm == Algorithm::Reference) {
    return exact_reference(model, step.dt * opts.num_steps, opts.num_steps, initial,
                           opts.observables);
  }
  std::optional<DenseOperator> u;
  std::optional<DenseOperator> v;
  if (opts.algorithm == Algorithm::Alg3 || opts.algorithm == Algorithm::Alg4) {
    u = opts.ancilla ? *opts.ancilla
                     : (opts.algorithm == Algorithm::Alg3 ? exact_ancilla_unitary(step)
                                                          : exact_ancilla_unitary_prime(step));
    v = opts.select ? *opts.select : DenseOperator::unitary(build_select(step.lcu).matrix());
  }

  EvolutionTrace tr = start_trace(initial, opts.observables);
  for (int k = 1; k <= opts.num_steps; ++k) {
    const StateVector& cur = tr.states.back();
    try {
      StepResult r = opts.algorithm == Algorithm::ExactLcu ? step_exact_lcu(cur, step)
                     : opts.algorithm == Algorithm::Alg3   ? step_algorithm3(cur, *u, *v)
                                                           : step_algorithm4(cur, *u, *v);
      record(tr, k * step.dt, std::move(r.state), r.prob, opts.observables);
    } catch (const NumericalError& e) {
      throw NumericalError("step " + std::to_string(k) + ": " + e.what());
    }
  }
  return tr;
}

Matrix exact_propagator(const LindbladModel& model, double t) {
  const Matrix g = generator_matrix(model);
  if (g.rows() > 4096) throw std::invalid_argument("model too large for the dense reference");
  return (g * t).exp();
}

EvolutionTrace exact_reference(const LindbladModel& model, double total_time, int num_steps,
                               const StateVector& initial,
                               const std::vector<NamedObservable>& observables) {
  if (num_steps < 1) throw std::invalid_argument("need at least one step");
  if (!(total_time > 0.0)) throw std::invalid_argument("total time must be positive");
  if ((std::size_t{1} << (2 * model.num_system_qubits)) > 4096) {
    throw std::invalid_argument("model too large for the dense reference");
  }
  const double dt = total_time / num_steps;
  const Matrix prop = exact_propagator(model, dt);
  if (static_cast<std::size_t>(prop.rows()) != initial.dim()) {
    throw std::invalid_argument("initial state does not match the model");
  }
  EvolutionTrace tr = start_trace(initial, observables);
  for (int k = 1; k <= num_steps; ++k) {
    Vector next = prop * tr.states.back().amplitudes();
    const double n = next.norm();
    if (n < 1e-14) throw NumericalError("step " + std::to_string(k) + ": state vanished");
    record(tr, k * dt, StateVector(next / n), 1.0, observables);
  }
  return tr;
}

}  // namespace oqsim

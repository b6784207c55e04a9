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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oqsim/ansatz.hpp"
#include "oqsim/measure.hpp"
#include "oqsim/qcore.hpp"
#include "oqsim/vectorize.hpp"

namespace oqsim {

/// Q(Δt) = Σ_j a_j Q_j padded to 2^m terms.
struct StepOperator {
  LcuOperator lcu;
  double dt = 0.0;
  int order = 1;
  int m = 0;

  int system_qubits() const { return lcu.num_qubits() / 2; }
};

/// First-order step I + Δt·Ĥ: terms (b_j·Δt, Ĥ_j) followed by the identity
/// split into 2^m − J equal parts, with 2^m the smallest power of two
/// ≥ max(2, J+1). Throws std::invalid_argument for order ≠ 1 or dt ≤ 0.
StepOperator build_step(const LcuOperator& gen, double dt, int order = 1);

/// Wraps an already padded LCU. Throws unless the term count is a power of two.
StepOperator make_step(LcuOperator lcu, double dt);

struct StepResult {
  StateVector state;
  double prob;
};

/// q = Σ a_j Q_j|ρ⟩, state′ = q/‖q‖, P = ‖q‖²/A².
StepResult step_exact_lcu(const StateVector& state, const StepOperator& step);

/// Unitaries whose first columns are Σ_j √(a_j/A)|j⟩ and Σ_j (a_j/√A′)|j⟩.
DenseOperator exact_ancilla_unitary(const StepOperator& step);
DenseOperator exact_ancilla_unitary_prime(const StepOperator& step);

/// (U†⊗I) V (U⊗I) |0^m⟩|ρ⟩ with the ancillas leading.
StateVector premeasure_algorithm3(const StateVector& state, const DenseOperator& u,
                                  const DenseOperator& v);
/// (H^⊗m⊗I) V (U′⊗I) |0^m⟩|ρ⟩.
StateVector premeasure_algorithm4(const StateVector& state, const DenseOperator& u_prime,
                                  const DenseOperator& v);

/// Post-selects the ancillas on |0^m⟩. Throws NumericalError when the
/// projection norm is below 1e-14.
StepResult step_algorithm3(const StateVector& state, const DenseOperator& u,
                           const DenseOperator& v);
StepResult step_algorithm4(const StateVector& state, const DenseOperator& u_prime,
                           const DenseOperator& v);
StepResult step_algorithm3(const StateVector& state, const ParameterizedCircuit& u_circuit,
                           std::span<const double> u_params,
                           const ParameterizedCircuit& v_circuit,
                           std::span<const double> v_params);
StepResult step_algorithm4(const StateVector& state, const ParameterizedCircuit& u_circuit,
                           std::span<const double> u_params,
                           const ParameterizedCircuit& v_circuit,
                           std::span<const double> v_params);

enum class Algorithm { ExactLcu, Alg3, Alg4, Reference };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

using NamedObservable = std::pair<std::string, Observable>;
using Series = std::vector<std::pair<std::string, std::vector<double>>>;

/// Entry 0 of `times`, `states` and each observable series is the initial
/// state; `step_probs[k]` and `cumulative_prob[k]` belong to step k+1.
struct EvolutionTrace {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> step_probs;
  std::vector<double> cumulative_prob;
  Series observables;

  const std::vector<double>& series(const std::string& name) const;
};

struct EvolveOptions {
  Algorithm algorithm = Algorithm::ExactLcu;
  int num_steps = 1;
  /// U for Alg3 or U′ for Alg4; exact constructions when empty.
  std::optional<DenseOperator> ancilla;
  /// V ≈ Λ_Q; the exact select unitary when empty.
  std::optional<DenseOperator> select;
  std::vector<NamedObservable> observables;
};

EvolutionTrace evolve_trace(const LindbladModel& model, const StepOperator& step,
                            const StateVector& initial, const EvolveOptions& opts);

/// Steps with e^{Ĥ·dt}, computed once, renormalizing after each step.
/// Throws std::invalid_argument when the vectorized dimension exceeds 4096.
EvolutionTrace exact_reference(const LindbladModel& model, double total_time, int num_steps,
                               const StateVector& initial,
                               const std::vector<NamedObservable>& observables = {});

/// e^{Ĥ·t} as a dense matrix.
Matrix exact_propagator(const LindbladModel& model, double t);

}  // namespace oqsim

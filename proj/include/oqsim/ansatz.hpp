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

#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "oqsim/qcore.hpp"

namespace oqsim {

enum class RotationKind { Ry, RzRyRz };
enum class EntanglerKind { None, Cnot, Cz, Cry };

std::string to_string(RotationKind k);
std::string to_string(EntanglerKind k);
RotationKind rotation_from_string(const std::string& s);
EntanglerKind entangler_from_string(const std::string& s);

/// Uniform hardware-efficient layout: `depth` repetitions of a rotation layer
/// on every qubit followed by a nearest-neighbour entangler ladder in which
/// qubit i controls qubit i+1.
struct AnsatzSpec {
  int num_qubits = 1;
  int depth = 1;
  RotationKind rotation = RotationKind::Ry;
  EntanglerKind entangler = EntanglerKind::Cnot;
};

enum class GateKind { Ry, RzRyRz, Cnot, Cz, Cry };

/// One gate of a circuit. `param` indexes the first parameter slot used by
/// the gate (−1 when fixed); RzRyRz consumes three consecutive slots.
struct GateOp {
  GateKind kind;
  int target;
  int control = -1;
  int param = -1;

  int arity() const { return control < 0 ? 1 : 2; }
  int param_count() const;
};

class ParameterizedCircuit {
 public:
  explicit ParameterizedCircuit(const AnsatzSpec& spec);
  /// Empty circuit (identity) on `num_qubits`.
  explicit ParameterizedCircuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t parameter_count() const { return parameter_count_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  /// True when every gate has a real matrix, so outputs from |0…0⟩ are real.
  bool is_real() const;

  void append(GateOp op);

 private:
  int num_qubits_;
  std::size_t parameter_count_ = 0;
  std::vector<GateOp> ops_;
};

/// Local matrix of a gate: 2×2 for single-qubit gates, 4×4 on (control,
/// target) for two-qubit gates with the control as the left factor.
Matrix gate_matrix(const GateOp& op, std::span<const double> params);

/// data ← G·data for a gate acting on the given qubits of every column.
void apply_gate(const Matrix& local, const GateOp& op, int num_qubits, Matrix& data);
/// data ← data·G†.
void apply_gate_adjoint_right(const Matrix& local, const GateOp& op, int num_qubits,
                              Matrix& data);
/// Partial trace of `m` over every qubit the gate does not touch, returned in
/// the gate's local basis (control-major).
Matrix reduced_block(const Matrix& m, const GateOp& op, int num_qubits);

StateVector evaluate_state(const ParameterizedCircuit& c, std::span<const double> params);
DenseOperator evaluate_unitary(const ParameterizedCircuit& c, std::span<const double> params);

// --- optimizer ------------------------------------------------------------

using CostFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

struct Objective {
  CostFn cost;
  /// Optional; central finite differences of `cost` are used when empty.
  GradientFn gradient;
};

struct OptOptions {
  double gtol = 1e-8;
  int max_iter = 2000;
  double fd_step = 1e-6;
  /// Total number of starts; the first uses the caller's init.
  int restarts = 5;
  std::uint64_t seed = 7;
  /// Restarts draw each parameter uniformly from (−restart_scale, restart_scale),
  /// offset by the first start's init when `restart_around_init` is set.
  double restart_scale = std::numbers::pi;
  bool restart_around_init = false;
  /// Remaining restarts are skipped once a start reaches this cost.
  double target_cost = -std::numeric_limits<double>::infinity();
  /// Relative cost decrease below which a start is treated as stalled.
  double ftol = 1e-14;
};

struct OptResult {
  std::vector<double> best_params;
  double best_cost = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  /// Accepted-step costs of the winning start, beginning at its initial cost.
  std::vector<double> cost_history;
  int starts = 0;
};

/// Central-difference gradient, probes evaluated through parallel_for.
void finite_difference_gradient(const CostFn& cost, std::span<const double> x, double step,
                                std::span<double> grad);

/// BFGS with a strong-Wolfe line search and seeded multi-start.
/// Throws NumericalError when the cost is non-finite at a start point.
OptResult minimize(const Objective& objective, std::vector<double> init,
                   const OptOptions& opts = {});

/// Uniform draws in (−scale, scale) from a seeded generator.
std::vector<double> random_params(std::size_t count, std::uint64_t seed, double scale = 0.1);
/// random_params plus π/2 on the Ry angle of each qubit's first gate, so the
/// circuit starts near |+…+⟩ when that gate is a rotation acting on |0⟩.
std::vector<double> superposition_params(const ParameterizedCircuit& c, std::uint64_t seed,
                                         double scale = 0.1);

}  // namespace oqsim

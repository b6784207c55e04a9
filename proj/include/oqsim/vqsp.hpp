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
#include <random>
#include <utility>
#include <vector>

#include "oqsim/ansatz.hpp"
#include "oqsim/qcore.hpp"

namespace oqsim {

enum class TargetCase { Nonnegative = 1, Real = 2, Complex = 3 };

/// A normalized amplitude vector sorted into one of three cases. Zero entries
/// count as nonnegative. An all-negative real vector is stored negated with
/// `phase` = −1.
struct TargetVector {
  Vector entries;
  TargetCase kind = TargetCase::Nonnegative;
  Complex phase{1.0, 0.0};
  std::vector<std::size_t> pos;     // real part ≥ 0 (Cases 1, 2) or Re ≥ 0 (Case 3)
  std::vector<std::size_t> neg;     // real part < 0
  std::vector<std::size_t> im_pos;  // Case 3 only: Im ≥ 0
  std::vector<std::size_t> im_neg;  // Case 3 only: Im < 0

  int num_qubits() const { return log2_exact(static_cast<std::size_t>(entries.size())); }
  /// Qubits of the embedded state: d, d+1 or d+2.
  int embedded_qubits() const { return num_qubits() + static_cast<int>(kind) - 1; }
};

/// Throws std::invalid_argument when the length is not a power of two or the
/// norm differs from 1 by more than 1e-8.
TargetVector classify(const Vector& x);

/// Nonnegative real state whose preparation recovers the target: x itself,
/// |0⟩|x₊⟩ − |1⟩|x₋⟩, or the four-block form with real and imaginary parts.
StateVector embedded_target(const TargetVector& x);

/// shots == 0 selects exact probabilities.
struct ProbMode {
  std::size_t shots = 0;
  std::uint64_t seed = 0;

  bool sampled() const { return shots > 0; }
  static ProbMode exact() { return {}; }
  static ProbMode sampling(std::size_t s, std::uint64_t seed) { return {s, seed}; }
};

struct ProbabilityDistribution {
  std::vector<double> probs;
  std::size_t shots = 0;  // 0 for exact
};

ProbabilityDistribution estimate_probs(const StateVector& s);
/// Empirical frequencies of `shots` draws. Throws std::invalid_argument for
/// shots == 0.
ProbabilityDistribution estimate_probs(const StateVector& s, std::size_t shots,
                                       std::mt19937_64& rng);

/// |Re Σ_i Φ_i − Σ_i e_i| + Σ_{e_i > 0} e_i² log(e_i² / max(P_i, 1e-12)), with e
/// the embedded target. Sampled mode reseeds from `mode.seed` on every call so
/// the cost is a deterministic function of the parameters.
double vqsp_cost(const StateVector& trial, const TargetVector& x, const ProbMode& mode = {});
double vqsp_cost(std::span<const double> params, const TargetVector& x,
                 const ParameterizedCircuit& circuit, const ProbMode& mode = {});

struct VqspOptions {
  /// Restarts perturb the first start by up to ±0.5 per angle.
  OptOptions opt{.restart_scale = 0.5, .restart_around_init = true};
  std::uint64_t init_seed = 11;
  double init_scale = 0.1;
  /// Start near |+…+⟩ (see superposition_params) instead of near |0…0⟩.
  bool superposition_init = true;
  /// Run each start on the KL term, then gap² + KL, before the cost itself.
  bool staged = true;
  ProbMode mode{};
};

struct VqspResult {
  std::vector<double> params;
  double cost = 0.0;
  double fidelity = 0.0;  // |⟨embedded|Φ(θ)⟩|²
  OptResult opt;
};

VqspResult train_vqsp(const TargetVector& x, const ParameterizedCircuit& circuit,
                      const VqspOptions& opts = {});

/// √F|t⟩ + √(1−F)|e⟩ with |e⟩ a seeded Gaussian unit vector orthogonal to |t⟩
/// (real when |t⟩ is real), so that |⟨t|result⟩|² = F.
StateVector degrade_state(const StateVector& target, double fidelity, std::uint64_t seed);

struct Recovered {
  StateVector state;
  double success_prob;
};

/// Undoes the embedding by ancilla gates and post-selection. The probability
/// is the squared norm of the projection. Throws NumericalError when it is
/// below 1e-12.
Recovered recover(const StateVector& trained, TargetCase kind);

}  // namespace oqsim

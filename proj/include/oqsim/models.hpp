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

#include <vector>

#include "oqsim/evolve.hpp"
#include "oqsim/measure.hpp"
#include "oqsim/qcore.hpp"
#include "oqsim/vectorize.hpp"

namespace oqsim {

/// H = −(δ/2)Z − (Ω/2)X, L = (√γ/2)(X − ιY). Throws for γ < 0.
LindbladModel amplitude_damping_model(double delta, double omega, double gamma);

/// The eight-term grouped step for the damped qubit, with
/// α = √2·δ·dt/2, β = 1 − γ·dt/2 and the identity folded into the
/// (−ια·Had + β·I)/√(α²+β²) term. The grouping needs δ = Ω; other values
/// are rejected.
StepOperator amplitude_damping_step(double delta, double omega, double gamma, double dt);

/// Two-site dissipative transverse-field Ising model
/// H = −V·ZZ − Ω(XI + IX), L_k = √γ(X − ιY) on site k.
LindbladModel dtfim_model(double v, double omega, double gamma);

struct KrausChannel {
  std::vector<Matrix> ops;

  int num_qubits() const;
  /// ‖Σ E†E − I‖ in the operator 2-norm.
  double normalization_defect() const;
};

/// E0 = I − ιHΔt − (Δt/2)Σ L†L and E_k = √Δt·L_k.
KrausChannel lindblad_to_kraus_first_order(const LindbladModel& model, double dt);

/// Σ_l conj(E_l) ⊗ E_l acting on vectorized states.
DenseOperator kraus_to_superoperator(const KrausChannel& ch);

/// Single Pauli on `site` of an n-qubit register.
Observable pauli_observable(int n, int site, Pauli p);
/// (1/n) Σ_k Z_k.
Observable average_magnetization(int n);

}  // namespace oqsim

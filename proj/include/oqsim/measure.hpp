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

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oqsim/qcore.hpp"

namespace oqsim {

/// Σ_j w_j M_j with real weights and Pauli strings carrying unit coefficients.
struct Observable {
  std::vector<std::pair<double, PauliTerm>> terms;

  int num_qubits() const;
  Matrix matrix() const;
  /// Throws std::invalid_argument when terms differ in width or are not
  /// unit-coefficient Pauli strings.
  void validate() const;
};

/// ⟨I_N|(I⊗M)|ρ⟩ / ⟨I_N|ρ⟩ on a vectorized state of 2n qubits.
Complex expectation_complex(const StateVector& rho_vec, const Observable& m);
/// Real part of expectation_complex. Throws NumericalError when the imaginary
/// residue exceeds 1e-8 or when ⟨I_N|ρ⟩ vanishes.
double expectation_direct(const StateVector& rho_vec, const Observable& m);

struct HadamardTest {
  double p0 = 0.0;        // (1 + Re⟨A0|B0⟩)/2
  double p0_prime = 0.0;  // (1 − Im⟨A0|B0⟩)/2, phase gate on the control
};

/// Interference of A|0⟩ and B|0⟩ through one control qubit.
HadamardTest hadamard_test(const DenseOperator& prep_a, const DenseOperator& prep_b);
/// Same circuit with explicit prepared states.
HadamardTest hadamard_test(const StateVector& a0, const StateVector& b0);

/// Draws `shots` Bernoulli outcomes with success probability p and returns
/// the observed frequency.
double sample_probability(double p, std::size_t shots, std::mt19937_64& rng);

/// Solves ac − bd = 2P0 − 1, bc + ad = 1 − 2P0′ for (c, d).
/// Throws NumericalError when a² + b² ≤ 1e-20.
std::pair<double, double> solve_linear(double a, double b, double p0, double p0_prime);

/// Uses preparation unitaries obtained by basis completion of |I_N⟩ and of
/// the normalized state, then Hadamard tests for every term.
double protocol_a_expectation(const StateVector& rho_vec, const Observable& m);

/// |0^m⟩⟨0^m| ⊗ I_N ⊗ M_j expanded as 2^{−m} Σ_S Z_S ⊗ I ⊗ M_j.
PauliSum lift_observable(const PauliTerm& mj, int m, int n);

/// Readout from the pre-measurement state psi = W|0^m⟩|ρ_prev⟩ (ancillas
/// leading) without post-selection. `rho_overlap` is ⟨ρ_prev|I_N⟩ with the
/// normalized |I_N⟩.
double protocol_b_expectation(const StateVector& psi, const Observable& m, Complex rho_overlap,
                              int m_ancilla);

}  // namespace oqsim

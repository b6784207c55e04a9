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

#include <string>
#include <vector>

#include "oqsim/qcore.hpp"

namespace oqsim {

/// Markovian open system dρ/dt = −ι[H, ρ] + Σ_r (L_r ρ L_r† − ½{L_r†L_r, ρ}).
struct LindbladModel {
  int num_system_qubits = 1;
  PauliSum hamiltonian;                 // real coefficients
  std::vector<PauliSum> jump_operators;  // arbitrary complex coefficients

  /// Throws std::invalid_argument on width mismatch or complex Hamiltonian
  /// coefficients.
  void validate() const;

  Matrix hamiltonian_matrix() const;
  Matrix jump_matrix(std::size_t r) const;
};

struct LcuTerm {
  double weight = 0.0;
  DenseOperator unitary;
  std::string label;
};

/// Σ_j a_j Q_j with a_j ≥ 0 and unitary Q_j; caches A = Σa_j and A′ = Σa_j².
class LcuOperator {
 public:
  LcuOperator() = default;
  LcuOperator(int num_qubits, std::vector<LcuTerm> terms);

  const std::vector<LcuTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  int num_qubits() const { return num_qubits_; }
  double weight_sum() const { return a_; }          // A
  double weight_square_sum() const { return a2_; }  // A′

  std::vector<double> weights() const;
  Matrix dense() const;

 private:
  int num_qubits_ = 0;
  std::vector<LcuTerm> terms_;
  double a_ = 0.0;
  double a2_ = 0.0;
};

/// A positive weight attached to a Pauli string whose coefficient is one of
/// ±1, ±ι.
struct PositiveTerm {
  double weight = 0.0;
  PauliTerm unitary;
};

/// Splits each coefficient c + ιd into |c|·((−1)^{[c<0]}P) and |d|·(ι(−1)^{[d<0]}P),
/// keeping input order (real part first) and dropping parts below 1e-12.
std::vector<PositiveTerm> positivize(const PauliSum& terms, double drop_tol = 1e-12);

LcuOperator to_lcu(const std::vector<PositiveTerm>& terms, int num_qubits);

/// Vectorization |ρ⟩ = Σ_{jk} ρ_{jk} |k⟩⊗|j⟩: the column index lives in the
/// first (most significant) register, so |AρB⟩ = (Bᵀ⊗A)|ρ⟩.
StateVector vectorize_density(const Matrix& rho);
Matrix unvectorize(const StateVector& v);

/// Σ_j |jj⟩, scaled by 1/√N when `normalized`.
StateVector identity_vector(int n, bool normalized = true);

/// Symbolic Pauli-term form of
///   −ι(I⊗H − Hᵀ⊗I) + Σ_r (L_r*⊗L_r − ½ I⊗L_r†L_r − ½ L_rᵀL_r*⊗I),
/// with equal strings merged and the identity string moved last.
PauliSum generator_pauli_terms(const LindbladModel& model);

/// Positive-coefficient LCU of the vectorized generator.
LcuOperator build_generator(const LindbladModel& model);

/// Dense generator assembled from the model's matrices (no Pauli algebra).
Matrix generator_matrix(const LindbladModel& model);

}  // namespace oqsim

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
#include <vector>

#include "oqsim/ansatz.hpp"
#include "oqsim/qcore.hpp"
#include "oqsim/vectorize.hpp"

namespace oqsim {

/// Σ_j |j⟩⟨j| ⊗ Q_j with the selector register as the leading qubits.
class BlockDiagonalUnitary {
 public:
  explicit BlockDiagonalUnitary(std::vector<DenseOperator> blocks);

  const std::vector<DenseOperator>& blocks() const { return blocks_; }
  const Matrix& matrix() const { return dense_; }
  int selector_qubits() const { return m_; }
  int block_qubits() const { return blocks_.front().num_qubits(); }
  int num_qubits() const { return m_ + block_qubits(); }

 private:
  std::vector<DenseOperator> blocks_;
  int m_ = 0;
  Matrix dense_;
};

/// Throws std::invalid_argument unless the term count is a power of two.
BlockDiagonalUnitary build_select(const LcuOperator& lcu);

/// Pauli expansion with each |j⟩⟨j| written as 2^{−m} ⊗_g (I + (−1)^{j_g} Z).
/// Every block is expanded in the Pauli basis first; strings are merged.
PauliSum pauli_expand_select(const LcuOperator& lcu);

/// 1 − |Tr(V†Λ)|² / d².
double hst_cost(const Matrix& v, const Matrix& target);
double hst_cost(std::span<const double> params, const BlockDiagonalUnitary& target,
                const ParameterizedCircuit& circuit);

/// Central-difference gradient of hst_cost. Each gate is perturbed inside a
/// cached environment, so a full gradient costs about two circuit
/// evaluations.
void hst_gradient(std::span<const double> params, const Matrix& target,
                  const ParameterizedCircuit& circuit, double step, std::span<double> grad);

struct CompileOptions {
  OptOptions opt{};
  std::uint64_t init_seed = 5;
  double init_scale = 0.1;
};

OptResult train_compiler(const BlockDiagonalUnitary& target, const ParameterizedCircuit& circuit,
                         const CompileOptions& opts = {});

/// Haar-random unitary from the QR decomposition of a complex Gaussian matrix
/// with the diagonal phases of R removed.
Matrix haar_unitary(Eigen::Index dim, std::mt19937_64& rng);
StateVector haar_state(Eigen::Index dim, std::mt19937_64& rng);

/// Mean of |⟨ψ|V†U|ψ⟩|² over `samples` Haar-random states.
double average_fidelity(const Matrix& v, const Matrix& u, int samples, std::uint64_t seed);

}  // namespace oqsim

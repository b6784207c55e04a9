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


#include "oqsim/models.hpp"

#include <cmath>

namespace oqsim {

LindbladModel amplitude_damping_model(double delta, double omega, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
  LindbladModel m;
  m.num_system_qubits = 1;
  m.hamiltonian = {PauliTerm::parse(-delta / 2.0, "Z"), PauliTerm::parse(-omega / 2.0, "X")};
  const double s = std::sqrt(gamma) / 2.0;
  if (gamma > 0.0) {
    m.jump_operators.push_back({PauliTerm::parse(s, "X"), PauliTerm::parse(-kI * s, "Y")});
  }
  return m;
}

StepOperator amplitude_damping_step(double delta, double omega, double gamma, double dt) {
  if (std::abs(delta - omega) > 1e-12) {
    throw std::invalid_argument("the grouped eight-term step requires delta == omega");
  }
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

  const double alpha = std::sqrt(2.0) * delta * dt / 2.0;
  const double beta = 1.0 - gamma * dt / 2.0;
  const double norm = std::hypot(alpha, beta);
  const double g4 = gamma * dt / 4.0;
  const Matrix had = gates::hadamard();
  const Matrix id = gates::identity2();
  const Matrix x = gates::pauli_x();
  const Matrix y = gates::pauli_y();
  const Matrix z = gates::pauli_z();

  std::vector<LcuTerm> t;
  t.push_back({alpha, DenseOperator::unitary(kron(id, kI * had)), "I(iHad)"});
  t.push_back({g4, DenseOperator::unitary(kron(id, -z)), "-IZ"});
  t.push_back({norm, DenseOperator::unitary(kron((-kI * alpha * had + beta * id) / norm, id)),
               "(-ia Had + b I)I"});
  t.push_back({g4, DenseOperator::unitary(kron(-z, id)), "-ZI"});
  t.push_back({g4, DenseOperator::unitary(kron(x, x)), "XX"});
  t.push_back({g4, DenseOperator::unitary(kron(x, -kI * y)), "X(-iY)"});
  t.push_back({g4, DenseOperator::unitary(kron(-kI * y, x)), "(-iY)X"});
  t.push_back({g4, DenseOperator::unitary(kron(-y, y)), "-YY"});
  return make_step(LcuOperator(2, std::move(t)), dt);
}

LindbladModel dtfim_model(double v, double omega, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
  LindbladModel m;
  m.num_system_qubits = 2;
  m.hamiltonian = {PauliTerm::parse(-v, "ZZ"), PauliTerm::parse(-omega, "XI"),
                   PauliTerm::parse(-omega, "IX")};
  if (gamma > 0.0) {
    const double s = std::sqrt(gamma);
    m.jump_operators.push_back({PauliTerm::parse(s, "XI"), PauliTerm::parse(-kI * s, "YI")});
    m.jump_operators.push_back({PauliTerm::parse(s, "IX"), PauliTerm::parse(-kI * s, "IY")});
  }
  return m;
}

int KrausChannel::num_qubits() const {
  if (ops.empty()) throw std::invalid_argument("channel has no Kraus operators");
  return log2_exact(static_cast<std::size_t>(ops.front().rows()));
}

double KrausChannel::normalization_defect() const {
  const auto dim = ops.front().rows();
  Matrix s = Matrix::Zero(dim, dim);
  for (const auto& e : ops) s += e.adjoint() * e;
  s -= Matrix::Identity(dim, dim);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

KrausChannel lindblad_to_kraus_first_order(const LindbladModel& model, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  model.validate();
  const Matrix h = model.hamiltonian_matrix();
  const auto dim = h.rows();
  Matrix e0 = Matrix::Identity(dim, dim) - kI * dt * h;
  KrausChannel ch;
  std::vector<Matrix> jumps;
  for (std::size_t r = 0; r < model.jump_operators.size(); ++r) {
    const Matrix l = model.jump_matrix(r);
    e0 -= 0.5 * dt * (l.adjoint() * l);
    jumps.push_back(std::sqrt(dt) * l);
  }
  ch.ops.push_back(std::move(e0));
  for (auto& j : jumps) ch.ops.push_back(std::move(j));
  return ch;
}

DenseOperator kraus_to_superoperator(const KrausChannel& ch) {
  const auto dim = ch.ops.front().rows();
  Matrix s = Matrix::Zero(dim * dim, dim * dim);
  for (const auto& e : ch.ops) s += kron(e.conjugate(), e);
  return DenseOperator(std::move(s));
}

Observable pauli_observable(int n, int site, Pauli p) {
  if (site < 0 || site >= n) throw std::invalid_argument("site out of range");
  PauliTerm t = PauliTerm::identity(n);
  t.letters[static_cast<std::size_t>(site)] = p;
  return Observable{{{1.0, t}}};
}

Observable average_magnetization(int n) {
  Observable o;
  for (int k = 0; k < n; ++k) {
    o.terms.push_back({1.0 / n, pauli_observable(n, k, Pauli::Z).terms.front().second});
  }
  return o;
}

}  // namespace oqsim

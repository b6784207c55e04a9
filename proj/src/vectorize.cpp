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

#include "oqsim/vectorize.hpp"

#include <cmath>

namespace oqsim {

void LindbladModel::validate() const {
  if (num_system_qubits < 1) throw std::invalid_argument("model needs at least one qubit");
  for (const auto& t : hamiltonian) {
    if (t.num_qubits() != num_system_qubits) {
      throw std::invalid_argument("Hamiltonian term " + t.label() + " has wrong width");
    }
    if (std::abs(t.coeff.imag()) > 1e-12) {
      throw std::invalid_argument("Hamiltonian term " + t.label() + " has a complex coefficient");
    }
  }
  for (const auto& jump : jump_operators) {
    for (const auto& t : jump) {
      if (t.num_qubits() != num_system_qubits) {
        throw std::invalid_argument("jump operator term " + t.label() + " has wrong width");
      }
    }
  }
}

Matrix LindbladModel::hamiltonian_matrix() const {
  return pauli_sum_matrix(hamiltonian, num_system_qubits);
}

Matrix LindbladModel::jump_matrix(std::size_t r) const {
  return pauli_sum_matrix(jump_operators.at(r), num_system_qubits);
}

// --- LcuOperator ----------------------------------------------------------

LcuOperator::LcuOperator(int num_qubits, std::vector<LcuTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) {
      throw std::invalid_argument("LCU weights must be finite and nonnegative");
    }
    if (!t.unitary.is_unitary()) throw std::invalid_argument("LCU term " + t.label + " is not unitary");
    if (t.unitary.num_qubits() != num_qubits_) {
      throw std::invalid_argument("LCU term " + t.label + " has wrong width");
    }
    a_ += t.weight;
    a2_ += t.weight * t.weight;
  }
}

std::vector<double> LcuOperator::weights() const {
  std::vector<double> w;
  w.reserve(terms_.size());
  for (const auto& t : terms_) w.push_back(t.weight);
  return w;
}

Matrix LcuOperator::dense() const {
  const auto dim = Eigen::Index{1} << num_qubits_;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : terms_) m += t.weight * t.unitary.matrix();
  return m;
}

// --- positivization --------------------------------------------------------

std::vector<PositiveTerm> positivize(const PauliSum& terms, double drop_tol) {
  std::vector<PositiveTerm> out;
  for (const auto& t : terms) {
    const double c = t.coeff.real();
    const double d = t.coeff.imag();
    if (std::abs(c) >= drop_tol) {
      out.push_back({std::abs(c), PauliTerm{c < 0 ? -1.0 : 1.0, t.letters}});
    }
    if (std::abs(d) >= drop_tol) {
      out.push_back({std::abs(d), PauliTerm{d < 0 ? -kI : kI, t.letters}});
    }
  }
  return out;
}

LcuOperator to_lcu(const std::vector<PositiveTerm>& terms, int num_qubits) {
  std::vector<LcuTerm> lcu;
  lcu.reserve(terms.size());
  for (const auto& t : terms) {
    std::string label = t.unitary.label();
    const Complex c = t.unitary.coeff;
    const char* prefix = c.real() > 0.5 ? "+" : c.real() < -0.5 ? "-" : c.imag() > 0 ? "+i" : "-i";
    lcu.push_back({t.weight, pauli_to_matrix(t.unitary), prefix + label});
  }
  return LcuOperator(num_qubits, std::move(lcu));
}

// --- vectorization ---------------------------------------------------------

StateVector vectorize_density(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  const Eigen::Index n = rho.rows();
  Vector v(n * n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j) v[k * n + j] = rho(j, k);
  return StateVector(std::move(v));
}

Matrix unvectorize(const StateVector& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.dim()))));
  if (static_cast<std::size_t>(n * n) != v.dim()) {
    throw std::invalid_argument("vector length is not a square");
  }
  Matrix rho(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j) rho(j, k) = v.amplitudes()[k * n + j];
  return rho;
}

StateVector identity_vector(int n, bool normalized) {
  if (n < 1) throw std::invalid_argument("identity_vector needs n >= 1");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector v = Vector::Zero(dim * dim);
  const double w = normalized ? 1.0 / std::sqrt(static_cast<double>(dim)) : 1.0;
  for (Eigen::Index j = 0; j < dim; ++j) v[j * dim + j] = w;
  return StateVector(std::move(v));
}

// --- generator -------------------------------------------------------------

PauliSum generator_pauli_terms(const LindbladModel& model) {
  model.validate();
  const int n = model.num_system_qubits;
  const PauliSum id{PauliTerm::identity(n)};

  PauliSum raw;
  auto append = [&raw](const PauliSum& s) { raw.insert(raw.end(), s.begin(), s.end()); };

  append(scale(kron(id, model.hamiltonian), -kI));
  append(scale(kron(transpose(model.hamiltonian), id), kI));
  for (const auto& jump : model.jump_operators) {
    append(kron(conjugate(jump), jump));
    append(scale(kron(id, simplify(multiply(adjoint(jump), jump))), -0.5));
    append(scale(kron(simplify(multiply(transpose(jump), conjugate(jump))), id), -0.5));
  }

  PauliSum merged = simplify(raw);
  PauliSum out;
  out.reserve(merged.size());
  PauliSum identity_part;
  for (auto& t : merged) {
    (t.is_identity() ? identity_part : out).push_back(std::move(t));
  }
  out.insert(out.end(), identity_part.begin(), identity_part.end());
  return out;
}

LcuOperator build_generator(const LindbladModel& model) {
  return to_lcu(positivize(generator_pauli_terms(model)), 2 * model.num_system_qubits);
}

Matrix generator_matrix(const LindbladModel& model) {
  model.validate();
  const Matrix h = model.hamiltonian_matrix();
  const Eigen::Index dim = h.rows();
  const Matrix id = Matrix::Identity(dim, dim);
  Matrix g = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (std::size_t r = 0; r < model.jump_operators.size(); ++r) {
    const Matrix l = model.jump_matrix(r);
    const Matrix ldl = l.adjoint() * l;
    g += kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(l.transpose() * l.conjugate(), id);
  }
  return g;
}

}  // namespace oqsim

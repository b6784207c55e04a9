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


#include "oqsim/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "oqsim/vectorize.hpp"

namespace oqsim {

int Observable::num_qubits() const {
  if (terms.empty()) throw std::invalid_argument("observable has no terms");
  return terms.front().second.num_qubits();
}

void Observable::validate() const {
  const int n = num_qubits();
  for (const auto& [w, p] : terms) {
    if (p.num_qubits() != n) throw std::invalid_argument("observable terms differ in width");
    if (std::abs(p.coeff - Complex{1.0}) > 1e-12) {
      throw std::invalid_argument("observable term " + p.label() + " must have coefficient 1");
    }
    if (!std::isfinite(w)) throw std::invalid_argument("observable weight is not finite");
  }
}

Matrix Observable::matrix() const {
  validate();
  const auto dim = Eigen::Index{1} << num_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& [w, p] : terms) m += w * pauli_to_matrix(p).matrix();
  return m;
}

namespace {

int system_qubits(const StateVector& rho_vec) {
  if (rho_vec.num_qubits() % 2 != 0) {
    throw std::invalid_argument("vectorized state must have an even number of qubits");
  }
  return rho_vec.num_qubits() / 2;
}

// P|v⟩ for a Pauli string, without forming the matrix.
Vector apply_pauli(const PauliTerm& p, const Vector& v) {
  const int q = p.num_qubits();
  std::size_t flip = 0;
  std::size_t ymask = 0;
  std::size_t zmask = 0;
  int ycount = 0;
  for (int k = 0; k < q; ++k) {
    const std::size_t bit = std::size_t{1} << (q - 1 - k);
    switch (p.letters[static_cast<std::size_t>(k)]) {
      case Pauli::I: break;
      case Pauli::X: flip |= bit; break;
      case Pauli::Y: flip |= bit; ymask |= bit; ++ycount; break;
      case Pauli::Z: zmask |= bit; break;
    }
  }
  // Y = ι·X·Z, so Y-letters contribute ι each plus a Z-type sign on the input bit.
  Complex base = p.coeff;
  for (int k = 0; k < ycount; ++k) base *= kI;
  const std::size_t sign_mask = ymask | zmask;
  Vector out(v.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    const bool neg = std::popcount(i & sign_mask) & 1;
    out[static_cast<Eigen::Index>(i ^ flip)] = (neg ? -base : base) * v[static_cast<Eigen::Index>(i)];
  }
  return out;
}

Complex trace_overlap(const StateVector& rho_vec, const PauliTerm& mj) {
  const int n = system_qubits(rho_vec);
  const Vector id = identity_vector(n, false).amplitudes();
  return id.dot(apply_pauli(kron(PauliTerm::identity(n), mj), rho_vec.amplitudes()));
}

}  // namespace

Complex expectation_complex(const StateVector& rho_vec, const Observable& m) {
  m.validate();
  const int n = system_qubits(rho_vec);
  if (m.num_qubits() != n) throw std::invalid_argument("observable width does not match state");
  const Complex den = inner(identity_vector(n, false), rho_vec);
  if (std::abs(den) < 1e-14) throw NumericalError("state has vanishing trace");
  Complex num = 0.0;
  for (const auto& [w, p] : m.terms) num += w * trace_overlap(rho_vec, p);
  return num / den;
}

double expectation_direct(const StateVector& rho_vec, const Observable& m) {
  const Complex v = expectation_complex(rho_vec, m);
  if (std::abs(v.imag()) > 1e-8) {
    throw NumericalError("expectation value has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

HadamardTest hadamard_test(const StateVector& a0, const StateVector& b0) {
  if (a0.dim() != b0.dim()) throw std::invalid_argument("hadamard_test dimension mismatch");
  // (|0⟩|A0⟩ + c|1⟩|B0⟩)/√2 followed by H on the control; c = 1 or ι.
  const Vector& a = a0.amplitudes();
  const Vector& b = b0.amplitudes();
  HadamardTest r;
  r.p0 = 0.25 * (a + b).squaredNorm();
  r.p0_prime = 0.25 * (a + kI * b).squaredNorm();
  return r;
}

HadamardTest hadamard_test(const DenseOperator& prep_a, const DenseOperator& prep_b) {
  if (prep_a.dim() != prep_b.dim()) throw std::invalid_argument("hadamard_test dimension mismatch");
  return hadamard_test(StateVector(prep_a.matrix().col(0)), StateVector(prep_b.matrix().col(0)));
}

double sample_probability(double p, std::size_t shots, std::mt19937_64& rng) {
  if (shots == 0) throw std::invalid_argument("sampling needs at least one shot");
  std::binomial_distribution<std::size_t> dist(shots, std::clamp(p, 0.0, 1.0));
  return static_cast<double>(dist(rng)) / static_cast<double>(shots);
}

std::pair<double, double> solve_linear(double a, double b, double p0, double p0_prime) {
  const double det = a * a + b * b;
  if (!(det > 1e-20)) throw NumericalError("linear readout system is singular (a = b = 0)");
  const double r1 = 2.0 * p0 - 1.0;
  const double r2 = 1.0 - 2.0 * p0_prime;
  return {(a * r1 + b * r2) / det, (a * r2 - b * r1) / det};
}

double protocol_a_expectation(const StateVector& rho_vec, const Observable& m) {
  m.validate();
  const int n = system_qubits(rho_vec);
  if (m.num_qubits() != n) throw std::invalid_argument("observable width does not match state");
  const DenseOperator u_i = unitary_with_first_column(identity_vector(n).amplitudes());
  const StateVector rho = rho_vec.normalized();
  const StateVector id0(u_i.matrix().col(0));

  auto overlap = [&](const Vector& b) {
    const HadamardTest t = hadamard_test(id0, StateVector(b));
    return Complex(2.0 * t.p0 - 1.0, 1.0 - 2.0 * t.p0_prime);
  };
  const Complex den = overlap(rho.amplitudes());
  if (std::abs(den) < 1e-14) throw NumericalError("state has vanishing trace");
  Complex num = 0.0;
  for (const auto& [w, p] : m.terms) {
    num += w * overlap(apply_pauli(kron(PauliTerm::identity(n), p), rho.amplitudes()));
  }
  const Complex v = num / den;
  if (std::abs(v.imag()) > 1e-8) throw NumericalError("protocol A result has imaginary residue");
  return v.real();
}

PauliSum lift_observable(const PauliTerm& mj, int m, int n) {
  if (mj.num_qubits() != n) throw std::invalid_argument("observable width does not match n");
  const std::size_t subsets = std::size_t{1} << m;
  const double w = std::ldexp(1.0, -m);
  PauliSum out;
  out.reserve(subsets);
  const PauliTerm id_n = PauliTerm::identity(n);
  for (std::size_t s = 0; s < subsets; ++s) {
    std::vector<Pauli> sel(static_cast<std::size_t>(m), Pauli::I);
    for (int g = 0; g < m; ++g) {
      if (s & (std::size_t{1} << (m - 1 - g))) sel[static_cast<std::size_t>(g)] = Pauli::Z;
    }
    PauliTerm z(w, std::move(sel));
    out.push_back(m > 0 ? kron(kron(z, id_n), mj) : kron(PauliTerm(w, id_n.letters), mj));
  }
  return out;
}

double protocol_b_expectation(const StateVector& psi, const Observable& m, Complex rho_overlap,
                              int m_ancilla) {
  m.validate();
  const int n = m.num_qubits();
  if (psi.num_qubits() != m_ancilla + 2 * n) {
    throw std::invalid_argument("pre-measurement state width does not match m + 2n");
  }
  const double a = rho_overlap.real();
  const double b = rho_overlap.imag();
  // ⟨0^m|⟨I_N| restricted to the leading block.
  const Eigen::Index block = Eigen::Index{1} << (2 * n);
  const Vector id = identity_vector(n).amplitudes();

  // One Hadamard-test circuit per lifted term: the two control branches overlap in
  // r·v with v = ⟨0^m|⟨I_N|M̃_i|Ψ⟩; (c, d) are then read back from P0, P0′.
  auto readout = [&](const PauliTerm& mj) {
    Complex total = 0.0;
    for (const auto& t : lift_observable(mj, m_ancilla, n)) {
      PauliTerm unit = t;
      const double wt = unit.coeff.real();
      unit.coeff = 1.0;
      const Vector moved = apply_pauli(unit, psi.amplitudes());
      const Complex v = id.dot(moved.head(block));
      const Complex rv = rho_overlap * v;
      const double p0 = 0.5 * (1.0 + rv.real());
      const double p0p = 0.5 * (1.0 - rv.imag());
      const auto [c, d] = solve_linear(a, b, p0, p0p);
      total += wt * Complex(c, d);
    }
    return total;
  };

  Complex num = 0.0;
  for (const auto& [w, p] : m.terms) num += w * readout(p);
  const Complex den = readout(PauliTerm::identity(n));
  if (std::abs(den) < 1e-14) throw NumericalError("protocol B denominator vanishes");
  const Complex v = num / den;
  if (std::abs(v.imag()) > 1e-8) throw NumericalError("protocol B result has imaginary residue");
  return v.real();
}

}  // namespace oqsim

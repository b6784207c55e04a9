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

#include "oqsim/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace oqsim {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("dimension " + std::to_string(n) +
                                " is not a power of two");
  }
  int q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

// --- StateVector ----------------------------------------------------------

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  const auto n = static_cast<std::size_t>(amps_.size());
  if (n < 2 || !is_power_of_two(n)) {
    throw std::invalid_argument("statevector length must be a power of two >= 2");
  }
  num_qubits_ = log2_exact(n);
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be >= 1");
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::out_of_range("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(amps_.norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n = amps_.norm();
  if (!(n > 1e-300)) throw NumericalError("cannot normalize a zero vector");
  return StateVector(amps_ / n);
}

// --- DenseOperator --------------------------------------------------------

DenseOperator::DenseOperator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator must be square");
  num_qubits_ = log2_exact(static_cast<std::size_t>(m_.rows()));
}

DenseOperator DenseOperator::unitary(Matrix entries) {
  DenseOperator op(std::move(entries));
  if (!oqsim::is_unitary(op.m_)) throw std::invalid_argument("matrix is not unitary");
  op.unitary_ = true;
  return op;
}

DenseOperator DenseOperator::identity(int num_qubits) {
  const auto dim = Eigen::Index{1} << num_qubits;
  DenseOperator op(Matrix::Identity(dim, dim));
  op.unitary_ = true;
  return op;
}

DenseOperator DenseOperator::adjoint() const {
  DenseOperator op(m_.adjoint());
  op.unitary_ = unitary_;
  return op;
}

DenseOperator DenseOperator::operator*(const DenseOperator& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("operator dimension mismatch");
  DenseOperator op(m_ * rhs.m_);
  op.unitary_ = unitary_ && rhs.unitary_;
  return op;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return defect.cwiseAbs().maxCoeff() < tol;
}

// --- Pauli algebra --------------------------------------------------------

char to_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
  }
}

PauliTerm PauliTerm::parse(Complex c, std::string_view letters) {
  std::vector<Pauli> l;
  l.reserve(letters.size());
  for (char ch : letters) l.push_back(pauli_from_char(ch));
  return {c, std::move(l)};
}

PauliTerm PauliTerm::identity(int num_qubits, Complex c) {
  return {c, std::vector<Pauli>(static_cast<std::size_t>(num_qubits), Pauli::I)};
}

std::string PauliTerm::label() const {
  std::string s;
  s.reserve(letters.size());
  for (Pauli p : letters) s.push_back(to_char(p));
  return s;
}

bool PauliTerm::is_identity() const {
  return std::all_of(letters.begin(), letters.end(), [](Pauli p) { return p == Pauli::I; });
}

namespace {

// σ_a σ_b = phase · σ_c
std::pair<Complex, Pauli> single_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto c = static_cast<Pauli>(6 - ia - ib);
  const bool cyclic = ((ib - ia + 3) % 3) == 1;
  return {cyclic ? kI : -kI, c};
}

std::size_t count_y(const PauliTerm& t) {
  return static_cast<std::size_t>(std::count(t.letters.begin(), t.letters.end(), Pauli::Y));
}

void require_same_width(const PauliTerm& a, const PauliTerm& b) {
  if (a.letters.size() != b.letters.size()) {
    throw std::invalid_argument("Pauli terms act on different qubit counts");
  }
}

}  // namespace

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  require_same_width(a, b);
  PauliTerm out{a.coeff * b.coeff, std::vector<Pauli>(a.letters.size())};
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    auto [phase, p] = single_product(a.letters[i], b.letters[i]);
    out.coeff *= phase;
    out.letters[i] = p;
  }
  return out;
}

PauliTerm conjugate(const PauliTerm& t) {
  const double sign = (count_y(t) % 2 == 0) ? 1.0 : -1.0;
  return {std::conj(t.coeff) * sign, t.letters};
}

PauliTerm transpose(const PauliTerm& t) {
  const double sign = (count_y(t) % 2 == 0) ? 1.0 : -1.0;
  return {t.coeff * sign, t.letters};
}

PauliTerm adjoint(const PauliTerm& t) { return {std::conj(t.coeff), t.letters}; }

PauliTerm kron(const PauliTerm& a, const PauliTerm& b) {
  PauliTerm out{a.coeff * b.coeff, a.letters};
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  PauliSum out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(multiply(x, y));
  return out;
}

PauliSum conjugate(const PauliSum& s) {
  PauliSum out;
  out.reserve(s.size());
  for (const auto& t : s) out.push_back(conjugate(t));
  return out;
}

PauliSum transpose(const PauliSum& s) {
  PauliSum out;
  out.reserve(s.size());
  for (const auto& t : s) out.push_back(transpose(t));
  return out;
}

PauliSum adjoint(const PauliSum& s) {
  PauliSum out;
  out.reserve(s.size());
  for (const auto& t : s) out.push_back(adjoint(t));
  return out;
}

PauliSum kron(const PauliSum& a, const PauliSum& b) {
  PauliSum out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(kron(x, y));
  return out;
}

PauliSum scale(const PauliSum& s, Complex c) {
  PauliSum out = s;
  for (auto& t : out) t.coeff *= c;
  return out;
}

PauliSum simplify(const PauliSum& s, double drop_tol) {
  PauliSum merged;
  std::map<std::string, std::size_t> index;
  for (const auto& t : s) {
    auto [it, inserted] = index.emplace(t.label(), merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coeff += t.coeff;
    }
  }
  PauliSum out;
  for (auto& t : merged)
    if (std::abs(t.coeff) >= drop_tol) out.push_back(std::move(t));
  return out;
}

DenseOperator pauli_to_matrix(const PauliTerm& term) {
  if (term.letters.empty()) throw std::invalid_argument("Pauli term has no letters");
  const std::size_t q = term.letters.size();
  const std::size_t dim = std::size_t{1} << q;
  // Every Pauli string has exactly one nonzero per column.
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t row = 0;
    Complex v = term.coeff;
    for (std::size_t i = 0; i < q; ++i) {
      const std::size_t bit = (col >> (q - 1 - i)) & 1U;
      std::size_t out_bit = bit;
      switch (term.letters[i]) {
        case Pauli::I: break;
        case Pauli::X: out_bit ^= 1U; break;
        case Pauli::Y: out_bit ^= 1U; v *= (bit == 0) ? kI : -kI; break;
        case Pauli::Z: if (bit == 1) v = -v; break;
      }
      row |= out_bit << (q - 1 - i);
    }
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
  }
  if (std::abs(std::abs(term.coeff) - 1.0) < kEps) return DenseOperator::unitary(std::move(m));
  return DenseOperator(std::move(m));
}

Matrix pauli_sum_matrix(const PauliSum& s, int num_qubits) {
  const auto dim = Eigen::Index{1} << num_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : s) {
    if (t.num_qubits() != num_qubits) {
      throw std::invalid_argument("Pauli term width does not match operator width");
    }
    m += pauli_to_matrix(t).matrix();
  }
  return m;
}

PauliSum pauli_decompose(const Matrix& m, double drop_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator must be square");
  const int q = log2_exact(static_cast<std::size_t>(m.rows()));
  const double inv_dim = 1.0 / static_cast<double>(m.rows());
  PauliSum out;
  const std::size_t count = std::size_t{1} << (2 * q);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<Pauli> letters(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
      letters[static_cast<std::size_t>(i)] =
          static_cast<Pauli>((code >> (2 * (q - 1 - i))) & 3U);
    }
    PauliTerm p{1.0, std::move(letters)};
    // Tr(P† M) / d, with P Hermitian.
    const Complex c = (pauli_to_matrix(p).matrix().cwiseProduct(m.transpose())).sum() * inv_dim;
    if (std::abs(c) >= drop_tol) {
      p.coeff = c;
      out.push_back(std::move(p));
    }
  }
  return out;
}

// --- Dense algebra --------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
  if (a.is_unitary() && b.is_unitary()) {
    return DenseOperator::unitary(kron(a.matrix(), b.matrix()));
  }
  return DenseOperator(kron(a.matrix(), b.matrix()));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector out(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    out.segment(i * b.amplitudes().size(), b.amplitudes().size()) =
        a.amplitudes()[i] * b.amplitudes();
  return StateVector(std::move(out));
}

StateVector apply(const DenseOperator& op, const StateVector& s) {
  if (op.dim() != s.dim()) {
    throw std::invalid_argument("apply: operator dimension " + std::to_string(op.dim()) +
                                " does not match state dimension " + std::to_string(s.dim()));
  }
  return StateVector(op.matrix() * s.amplitudes());
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

DenseOperator unitary_with_first_column(const Vector& first_column) {
  const double n = first_column.norm();
  if (!(n > 1e-300)) throw NumericalError("cannot complete a zero vector to a unitary");
  const Vector v = first_column / n;
  const Complex v0 = v[0];
  const Complex phase = std::abs(v0) > 0.0 ? v0 / std::abs(v0) : Complex{1.0};
  const Vector w = v * std::conj(phase);
  Vector u = w;
  u[0] -= 1.0;
  const Eigen::Index dim = v.size();
  Matrix h = Matrix::Identity(dim, dim);
  const double un = u.squaredNorm();
  if (un > 1e-28) h -= (2.0 / un) * (u * u.adjoint());
  return DenseOperator::unitary(phase * h);
}

namespace gates {

Matrix identity2() { return Matrix::Identity(2, 2); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << s, s, s, -s;
  return m;
}

Matrix phase_s() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, kI;
  return m;
}

Matrix ry(double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Matrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

Matrix rz(double theta) {
  Matrix m(2, 2);
  m << std::exp(-kI * (theta / 2)), 0.0, 0.0, std::exp(kI * (theta / 2));
  return m;
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

Matrix cz() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

Matrix swap() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

Matrix hadamard_power(int m) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < m; ++i) out = kron(out, hadamard());
  return out;
}

}  // namespace gates

}  // namespace oqsim

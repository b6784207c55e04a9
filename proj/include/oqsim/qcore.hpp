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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace oqsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Absolute tolerance for complex equality checks across the library.
inline constexpr double kEps = 1e-9;

/// Raised when a computation produces an unusable numerical result
/// (annihilated states, singular systems, non-finite costs).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_power_of_two(std::size_t n);

/// log2 of a power of two; throws std::invalid_argument otherwise.
int log2_exact(std::size_t n);

/// Pure state or vectorized operator over 2^q basis states.
///
/// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of
/// a basis label.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  static StateVector basis(int num_qubits, std::size_t index);
  static StateVector zeros(int num_qubits) { return basis(num_qubits, 0); }

  const Vector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = 1e-10) const;
  /// Throws NumericalError when the norm is below 1e-300.
  StateVector normalized() const;

 private:
  Vector amps_;
  int num_qubits_;
};

/// 2^q x 2^q complex matrix with an optional, verified unitarity flag.
class DenseOperator {
 public:
  explicit DenseOperator(Matrix entries);

  /// Verifies ‖U†U − I‖_max < 1e-9 and sets the unitary flag.
  static DenseOperator unitary(Matrix entries);
  static DenseOperator identity(int num_qubits);

  const Matrix& matrix() const { return m_; }
  bool is_unitary() const { return unitary_; }
  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

  DenseOperator adjoint() const;
  DenseOperator operator*(const DenseOperator& rhs) const;

 private:
  Matrix m_;
  int num_qubits_;
  bool unitary_ = false;
};

bool is_unitary(const Matrix& m, double tol = kEps);

// --- Pauli algebra -------------------------------------------------------

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// coeff · σ_{letters[0]} ⊗ σ_{letters[1]} ⊗ ...
struct PauliTerm {
  Complex coeff{1.0, 0.0};
  std::vector<Pauli> letters;

  PauliTerm() = default;
  PauliTerm(Complex c, std::vector<Pauli> l) : coeff(c), letters(std::move(l)) {}

  /// Parses strings like "XIZ".
  static PauliTerm parse(Complex c, std::string_view letters);
  static PauliTerm identity(int num_qubits, Complex c = 1.0);

  int num_qubits() const { return static_cast<int>(letters.size()); }
  std::string label() const;
  bool is_identity() const;
};

/// Symbolic product with exact phase tracking (±1, ±ι).
PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);
/// Entrywise complex conjugate: X*→X, Y*→−Y, Z*→Z.
PauliTerm conjugate(const PauliTerm& t);
PauliTerm transpose(const PauliTerm& t);
PauliTerm adjoint(const PauliTerm& t);
/// Concatenates letters (a on the left factor), multiplies coefficients.
PauliTerm kron(const PauliTerm& a, const PauliTerm& b);

/// An operator written as a sum of Pauli strings on a common qubit count.
using PauliSum = std::vector<PauliTerm>;

PauliSum multiply(const PauliSum& a, const PauliSum& b);
PauliSum conjugate(const PauliSum& s);
PauliSum transpose(const PauliSum& s);
PauliSum adjoint(const PauliSum& s);
PauliSum kron(const PauliSum& a, const PauliSum& b);
PauliSum scale(const PauliSum& s, Complex c);
/// Merges equal strings, preserving first-appearance order, and drops
/// coefficients with modulus below `drop_tol`.
PauliSum simplify(const PauliSum& s, double drop_tol = 1e-12);

DenseOperator pauli_to_matrix(const PauliTerm& term);
Matrix pauli_sum_matrix(const PauliSum& s, int num_qubits);

/// Expands a 2^q x 2^q matrix in the Pauli basis; terms below `drop_tol`
/// are omitted.
PauliSum pauli_decompose(const Matrix& m, double drop_tol = 1e-12);

// --- Dense algebra --------------------------------------------------------

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b);
Matrix kron(const Matrix& a, const Matrix& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Matrix-vector product. Never renormalizes.
StateVector apply(const DenseOperator& op, const StateVector& s);

/// Σ conj(a_i)·b_i.
Complex inner(const StateVector& a, const StateVector& b);

/// Unitary whose first column is `first_column` (normalized internally),
/// completed by Householder reflection.
DenseOperator unitary_with_first_column(const Vector& first_column);

namespace gates {
Matrix identity2();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
Matrix phase_s();
Matrix ry(double theta);
Matrix rz(double theta);
Matrix cnot();
Matrix cz();
Matrix swap();
/// Kronecker power H^{⊗m}.
Matrix hadamard_power(int m);
}  // namespace gates

}  // namespace oqsim

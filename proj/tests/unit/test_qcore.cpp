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


#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "oqsim/compile.hpp"
#include "oqsim/qcore.hpp"

using namespace oqsim;

using oracle::max_diff;

TEST_CASE("pauli_to_matrix builds Kronecker products of Pauli matrices") {
  Matrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  CHECK(max_diff(pauli_to_matrix(PauliTerm::parse(1.0, "Z")).matrix(), z) == 0.0);
  CHECK(max_diff(pauli_to_matrix(PauliTerm::parse(1.0, "II")).matrix(), Matrix::Identity(4, 4)) == 0.0);

  const DenseOperator xy = pauli_to_matrix(PauliTerm::parse(kI, "XY"));
  const Matrix expect = oracle::pauli_string(kI, "XY");
  CHECK(max_diff(xy.matrix(), expect) < 1e-15);
  CHECK(std::abs(xy.matrix()(0, 3) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(xy.is_unitary());
  CHECK_FALSE(pauli_to_matrix(PauliTerm::parse(0.5, "X")).is_unitary());
  CHECK_THROWS_AS(pauli_to_matrix(PauliTerm(1.0, {})), std::invalid_argument);
}

TEST_CASE("symbolic Pauli products agree with matrix products") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const int q = 1 + trial % 3;
    const std::string a = oracle::random_letters(q, rng);
    const std::string b = oracle::random_letters(q, rng);
    const PauliTerm p = PauliTerm::parse(1.0, a);
    const PauliTerm r = PauliTerm::parse(kI, b);
    const Matrix lhs = oracle::pauli_string(1.0, a) * oracle::pauli_string(kI, b);
    REQUIRE(max_diff(pauli_to_matrix(multiply(p, r)).matrix(), lhs) < 1e-14);
    REQUIRE(max_diff(pauli_to_matrix(conjugate(r)).matrix(), oracle::pauli_string(kI, b).conjugate()) < 1e-14);
    REQUIRE(max_diff(pauli_to_matrix(transpose(r)).matrix(), oracle::pauli_string(kI, b).transpose()) < 1e-14);
    REQUIRE(max_diff(pauli_to_matrix(adjoint(r)).matrix(), oracle::pauli_string(kI, b).adjoint()) < 1e-14);
  }
}

TEST_CASE("simplify merges equal strings in first-appearance order") {
  const PauliSum s{PauliTerm::parse(1.0, "XZ"), PauliTerm::parse(2.0, "II"),
                   PauliTerm::parse(-1.0, "XZ"), PauliTerm::parse(kI, "II")};
  const PauliSum out = simplify(s);
  REQUIRE(out.size() == 1);
  CHECK(out[0].label() == "II");
  CHECK(std::abs(out[0].coeff - Complex(2.0, 1.0)) < 1e-15);
}

TEST_CASE("pauli_decompose round-trips a random matrix") {
  std::mt19937_64 rng(7);
  const Matrix m = oracle::random_matrix(8, rng);
  const PauliSum s = pauli_decompose(m);
  CHECK(s.size() == 64);
  CHECK(max_diff(pauli_sum_matrix(s, 3), m) < 1e-12);
}

TEST_CASE("tensor products") {
  CHECK(max_diff(tensor(DenseOperator::identity(1), DenseOperator::identity(1)).matrix(),
                 Matrix::Identity(4, 4)) == 0.0);
  const Matrix xi = tensor(DenseOperator(gates::pauli_x()), DenseOperator::identity(1)).matrix();
  CHECK(max_diff(xi.topRightCorner(2, 2), Matrix::Identity(2, 2)) == 0.0);
  CHECK(max_diff(xi.bottomLeftCorner(2, 2), Matrix::Identity(2, 2)) == 0.0);
  CHECK(xi.topLeftCorner(2, 2).isZero());

  const DenseOperator hh = tensor(DenseOperator(gates::hadamard()), DenseOperator(gates::hadamard()));
  const StateVector plus2 = apply(hh, StateVector::zeros(2));
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(plus2[i] - Complex(0.5, 0.0)) < 1e-15);

  std::mt19937_64 rng(3);
  const Matrix a = oracle::random_matrix(2, rng);
  const Matrix b = oracle::random_matrix(4, rng);
  const Matrix c = oracle::random_matrix(2, rng);
  CHECK(max_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
  CHECK(max_diff(kron(a, b), oracle::naive_kron(a, b)) < 1e-15);
}

TEST_CASE("apply does not renormalize") {
  Matrix op = Matrix::Identity(2, 2) + 0.01 * gates::pauli_z();
  const StateVector plus(gates::hadamard().col(0));
  const StateVector out = apply(DenseOperator(op), plus);
  const double expect = (1.01 * 1.01 + 0.99 * 0.99) / 2.0;
  CHECK(out.amplitudes().squaredNorm() == doctest::Approx(expect).epsilon(1e-14));
  CHECK(max_diff(apply(DenseOperator(gates::pauli_x()), StateVector::basis(1, 0)).amplitudes(),
                 StateVector::basis(1, 1).amplitudes()) == 0.0);
  CHECK_THROWS_AS(apply(DenseOperator::identity(2), plus), std::invalid_argument);
}

TEST_CASE("unitaries preserve the norm") {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 20; ++k) {
    const DenseOperator u = DenseOperator::unitary(haar_unitary(8, rng));
    const StateVector s(oracle::random_state(8, rng));
    CHECK(std::abs(apply(u, s).norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("inner is conjugate-linear in the first argument") {
  const StateVector zero = StateVector::basis(1, 0);
  const StateVector one = StateVector::basis(1, 1);
  const StateVector plus(gates::hadamard().col(0));
  CHECK(std::abs(inner(zero, zero) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(inner(zero, one)) < 1e-15);
  CHECK(std::abs(inner(plus, zero) - Complex(1.0 / std::sqrt(2.0))) < 1e-15);
  const StateVector iz(Vector::Unit(2, 0) * kI);
  CHECK(std::abs(inner(iz, zero) - Complex(0.0, -1.0)) < 1e-15);
  CHECK_THROWS_AS(inner(zero, StateVector::zeros(2)), std::invalid_argument);
}

TEST_CASE("state and operator validation") {
  CHECK_THROWS_AS(StateVector(Vector::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(DenseOperator::unitary(Matrix::Ones(2, 2)), std::invalid_argument);
  CHECK(StateVector::basis(3, 5).is_normalized());
  CHECK_THROWS_AS(StateVector(Vector::Zero(2)).normalized(), NumericalError);
}

TEST_CASE("unitary_with_first_column completes any vector") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) {
    const Vector v = oracle::random_state(16, rng);
    const DenseOperator u = unitary_with_first_column(v);
    CHECK(u.is_unitary());
    CHECK((u.matrix().col(0) - v).norm() < 1e-12);
  }
  const Vector e1 = Vector::Unit(4, 1);
  CHECK((unitary_with_first_column(e1).matrix().col(0) - e1).norm() < 1e-12);
}

TEST_CASE("fixed gates") {
  CHECK(is_unitary(gates::hadamard()));
  CHECK(is_unitary(gates::phase_s()));
  CHECK(max_diff(gates::cnot() * gates::cnot(), Matrix::Identity(4, 4)) == 0.0);
  CHECK(max_diff(gates::swap() * kron(gates::pauli_x(), gates::identity2()) * gates::swap(),
                 kron(gates::identity2(), gates::pauli_x())) == 0.0);
  CHECK(max_diff(gates::hadamard_power(2), oracle::naive_kron(gates::hadamard(), gates::hadamard())) < 1e-15);
  // Ry(θ) = exp(−ιθY/2)
  const Matrix y = oracle::pauli('Y');
  CHECK(max_diff(gates::ry(0.7), oracle::expm_taylor(Complex(0, -0.35) * y)) < 1e-14);
  CHECK(max_diff(gates::rz(0.7), oracle::expm_taylor(Complex(0, -0.35) * oracle::pauli('Z'))) < 1e-14);
}

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
#include "oqsim/models.hpp"
#include "oqsim/vectorize.hpp"

using namespace oqsim;

namespace {

LindbladModel random_model(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  LindbladModel m;
  m.num_system_qubits = n;
  for (int k = 0; k < 3; ++k) m.hamiltonian.push_back(PauliTerm::parse(g(rng), oracle::random_letters(n, rng)));
  const int jumps = 1 + static_cast<int>(rng() % 2);
  for (int r = 0; r < jumps; ++r) {
    PauliSum l;
    for (int k = 0; k < 2; ++k) {
      l.push_back(PauliTerm::parse(Complex(g(rng), g(rng)), oracle::random_letters(n, rng)));
    }
    m.jump_operators.push_back(l);
  }
  return m;
}

oracle::M dense_sum(const PauliSum& s) {
  oracle::M out = oracle::M::Zero(std::size_t{1} << s.front().num_qubits(), std::size_t{1} << s.front().num_qubits());
  for (const auto& t : s) out += oracle::pauli_string(t.coeff, t.label());
  return out;
}

}  // namespace

TEST_CASE("vectorize_density places the column index first") {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  CHECK(vectorize_density(p0).amplitudes().isApprox(Vector::Unit(4, 0)));

  const Vector id = vectorize_density(Matrix::Identity(2, 2)).amplitudes();
  CHECK(id[0] == Complex(1.0));
  CHECK(id[3] == Complex(1.0));
  CHECK(id[1] == Complex(0.0));
  CHECK(id[2] == Complex(0.0));

  const Matrix plus = Matrix::Constant(2, 2, 0.5);
  CHECK(vectorize_density(plus).amplitudes().isApprox(Vector::Constant(4, 0.5)));

  // Off-diagonal placement: ρ = |0⟩⟨1| sits at |k=1⟩|j=0⟩ = index 2.
  Matrix r01 = Matrix::Zero(2, 2);
  r01(0, 1) = 1.0;
  CHECK(vectorize_density(r01).amplitudes().isApprox(Vector::Unit(4, 2)));
  CHECK_THROWS_AS(vectorize_density(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("vectorization round trip and |AρB> = (B^T ⊗ A)|ρ>") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = trial % 2 ? 4 : 2;
    const Matrix rho = oracle::random_hermitian(n, rng);
    CHECK(unvectorize(vectorize_density(rho)) == rho);
    CHECK((vectorize_density(rho).amplitudes() - oracle::column_stack(rho)).norm() == 0.0);

    const Matrix a = oracle::random_matrix(n, rng);
    const Matrix b = oracle::random_matrix(n, rng);
    const Vector lhs = vectorize_density(a * rho * b).amplitudes();
    const Vector rhs = oracle::naive_kron(b.transpose(), a) * vectorize_density(rho).amplitudes();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("identity_vector normalization and trace pairing") {
  const StateVector i1 = identity_vector(1);
  CHECK(std::abs(i1[0] - Complex(1.0 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(i1[3] - Complex(1.0 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(i1[1]) == 0.0);
  CHECK(identity_vector(2).is_normalized());

  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  CHECK(std::abs(inner(identity_vector(1, false), vectorize_density(p0)) - Complex(1.0)) < 1e-15);

  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const Matrix rho = oracle::random_matrix(4, rng);
    const Complex tr = inner(identity_vector(2, false), vectorize_density(rho));
    CHECK(std::abs(tr - rho.trace()) < 1e-12);
  }
  CHECK_THROWS_AS(identity_vector(0), std::invalid_argument);
}

TEST_CASE("positivize absorbs signs and phases") {
  auto one = positivize({PauliTerm::parse(-2.0, "X")});
  REQUIRE(one.size() == 1);
  CHECK(one[0].weight == 2.0);
  CHECK(one[0].unitary.coeff == Complex(-1.0));

  auto im = positivize({PauliTerm::parse(Complex(0.0, 3.0), "Z")});
  REQUIRE(im.size() == 1);
  CHECK(im[0].weight == 3.0);
  CHECK(im[0].unitary.coeff == kI);

  const PauliSum mixed{PauliTerm::parse(Complex(1.0, 1.0), "I")};
  auto both = positivize(mixed);
  REQUIRE(both.size() == 2);
  CHECK(both[0].unitary.coeff == Complex(1.0));
  CHECK(both[1].unitary.coeff == kI);
  Matrix sum = Matrix::Zero(2, 2);
  for (const auto& t : both) sum += t.weight * pauli_to_matrix(t.unitary).matrix();
  CHECK((sum - dense_sum(mixed)).cwiseAbs().maxCoeff() < 1e-15);

  CHECK(positivize({PauliTerm::parse(1e-14, "X")}).empty());
}

TEST_CASE("generator matches the directly evaluated master equation") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 2;
    const LindbladModel m = random_model(n, rng);
    const LcuOperator gen = build_generator(m);
    for (const auto& t : gen.terms()) REQUIRE(t.weight > 0.0);

    std::vector<oracle::M> ls;
    for (const auto& l : m.jump_operators) ls.push_back(dense_sum(l));
    const oracle::M h = dense_sum(m.hamiltonian);
    const oracle::M rho = oracle::random_density(Eigen::Index{1} << n, rng);
    const oracle::V expect = oracle::column_stack(oracle::lindblad_rhs(h, ls, rho));
    const Vector got = gen.dense() * vectorize_density(rho).amplitudes();
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((generator_matrix(m) * vectorize_density(rho).amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("damped-qubit generator splits into eleven positive terms") {
  // Hand expansion at δ = Ω = γ = 1: IZ carries −γ/4 + ιδ/2, ZI carries
  // −γ/4 − ιδ/2, IX and XI carry ±ιΩ/2, the jump gives γ/4 on XX, −ιXY,
  // −ιYX, −YY, and the identity collects −γ/2.
  const LcuOperator gen = build_generator(amplitude_damping_model(1.0, 1.0, 1.0));
  const std::vector<std::pair<double, std::string>> expect{
      {0.25, "-IZ"}, {0.5, "+iIZ"}, {0.5, "+iIX"}, {0.25, "-ZI"}, {0.5, "-iZI"}, {0.5, "-iXI"},
      {0.25, "+XX"}, {0.25, "-iXY"}, {0.25, "-iYX"}, {0.25, "-YY"}, {0.5, "-II"}};
  REQUIRE(gen.size() == expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) {
    CHECK(gen.terms()[k].weight == doctest::Approx(expect[k].first).epsilon(1e-15));
    CHECK(gen.terms()[k].label == expect[k].second);
  }
}

TEST_CASE("two-site Ising generator has nineteen terms") {
  const double v = 1.0, om = 1.0, g = 0.1;
  const LcuOperator gen = build_generator(dtfim_model(v, om, g));
  REQUIRE(gen.size() == 19);
  std::vector<double> b{v, om, om, v, om, om};
  for (int k = 0; k < 12; ++k) b.push_back(g);
  b.push_back(4 * g);
  for (std::size_t k = 0; k < b.size(); ++k) {
    CHECK(gen.terms()[k].weight == doctest::Approx(b[k]).epsilon(1e-14));
  }
  CHECK(gen.terms()[6].label == "+XIXI");
  CHECK(gen.terms()[18].label == "-IIII");
  CHECK((gen.terms()[18].unitary.matrix() + Matrix::Identity(16, 16)).isZero());
  CHECK(gen.weight_sum() == doctest::Approx(2 * v + 4 * om + 16 * g));
  CHECK(gen.weight_square_sum() == doctest::Approx(2 * v * v + 4 * om * om + 12 * g * g + 16 * g * g));
}

TEST_CASE("frozen and invalid models") {
  LindbladModel frozen;
  frozen.num_system_qubits = 1;
  CHECK(build_generator(frozen).empty());

  LindbladModel empty;
  empty.num_system_qubits = 0;
  CHECK_THROWS_AS(build_generator(empty), std::invalid_argument);

  LindbladModel complex_h;
  complex_h.hamiltonian = {PauliTerm::parse(kI, "X")};
  CHECK_THROWS_AS(build_generator(complex_h), std::invalid_argument);

  LindbladModel wide;
  wide.hamiltonian = {PauliTerm::parse(1.0, "XX")};
  CHECK_THROWS_AS(build_generator(wide), std::invalid_argument);
}

TEST_CASE("LcuOperator validates its terms") {
  CHECK_THROWS_AS(LcuOperator(1, {{-1.0, DenseOperator::identity(1), "I"}}), std::invalid_argument);
  CHECK_THROWS_AS(LcuOperator(1, {{1.0, DenseOperator(Matrix::Ones(2, 2)), "J"}}), std::invalid_argument);
  CHECK_THROWS_AS(LcuOperator(2, {{1.0, DenseOperator::identity(1), "I"}}), std::invalid_argument);
}

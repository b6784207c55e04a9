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


#include "oqsim/compile.hpp"

#include <cmath>

namespace oqsim {

BlockDiagonalUnitary::BlockDiagonalUnitary(std::vector<DenseOperator> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty() || !is_power_of_two(blocks_.size())) {
    throw std::invalid_argument("select needs a power-of-two number of blocks, got " +
                                std::to_string(blocks_.size()));
  }
  m_ = log2_exact(blocks_.size());
  const auto bd = static_cast<Eigen::Index>(blocks_.front().dim());
  dense_ = Matrix::Zero(bd * static_cast<Eigen::Index>(blocks_.size()),
                        bd * static_cast<Eigen::Index>(blocks_.size()));
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const auto& b = blocks_[j];
    if (static_cast<Eigen::Index>(b.dim()) != bd) {
      throw std::invalid_argument("select blocks differ in dimension");
    }
    if (!b.is_unitary() && !is_unitary(b.matrix())) {
      throw std::invalid_argument("select block " + std::to_string(j) + " is not unitary");
    }
    const auto off = static_cast<Eigen::Index>(j) * bd;
    dense_.block(off, off, bd, bd) = b.matrix();
  }
}

BlockDiagonalUnitary build_select(const LcuOperator& lcu) {
  std::vector<DenseOperator> blocks;
  blocks.reserve(lcu.size());
  for (const auto& t : lcu.terms()) blocks.push_back(t.unitary);
  return BlockDiagonalUnitary(std::move(blocks));
}

PauliSum pauli_expand_select(const LcuOperator& lcu) {
  if (lcu.empty() || !is_power_of_two(lcu.size())) {
    throw std::invalid_argument("select needs a power-of-two number of terms");
  }
  const int m = log2_exact(lcu.size());
  const double scale_m = std::ldexp(1.0, -m);
  PauliSum raw;
  for (std::size_t j = 0; j < lcu.size(); ++j) {
    const PauliSum block = pauli_decompose(lcu.terms()[j].unitary.matrix());
    // Every subset S of selector qubits contributes Z_S with sign (−1)^{|j∩S|}.
    for (std::size_t s = 0; s < lcu.size(); ++s) {
      std::vector<Pauli> sel(static_cast<std::size_t>(m), Pauli::I);
      int parity = 0;
      for (int g = 0; g < m; ++g) {
        const std::size_t bit = std::size_t{1} << (m - 1 - g);
        if (s & bit) {
          sel[static_cast<std::size_t>(g)] = Pauli::Z;
          if (j & bit) parity ^= 1;
        }
      }
      const PauliTerm z(parity ? -scale_m : scale_m, std::move(sel));
      for (const auto& p : block) raw.push_back(kron(z, p));
    }
  }
  return simplify(raw);
}

double hst_cost(const Matrix& v, const Matrix& target) {
  if (v.rows() != target.rows() || v.cols() != target.cols()) {
    throw std::invalid_argument("hst_cost dimension mismatch");
  }
  const auto d = static_cast<double>(v.rows());
  const Complex tr = (v.adjoint() * target).trace();
  return 1.0 - std::norm(tr) / (d * d);
}

double hst_cost(std::span<const double> params, const BlockDiagonalUnitary& target,
                const ParameterizedCircuit& circuit) {
  if (circuit.num_qubits() != target.num_qubits()) {
    throw std::invalid_argument("circuit width does not match the select unitary");
  }
  return hst_cost(evaluate_unitary(circuit, params).matrix(), target.matrix());
}

namespace {

Complex local_trace(const Matrix& g, const Matrix& r) {
  return (g.conjugate().array() * r.array()).sum();
}

}  // namespace

void hst_gradient(std::span<const double> params, const Matrix& target,
                  const ParameterizedCircuit& circuit, double step, std::span<double> grad) {
  const auto& ops = circuit.ops();
  const int q = circuit.num_qubits();
  const auto d = static_cast<double>(target.rows());
  std::fill(grad.begin(), grad.end(), 0.0);
  if (ops.empty()) return;

  std::vector<Matrix> g;
  g.reserve(ops.size());
  for (const auto& op : ops) g.push_back(gate_matrix(op, params));

  Matrix v = Matrix::Identity(target.rows(), target.cols());
  for (std::size_t k = 0; k < ops.size(); ++k) apply_gate(g[k], ops[k], q, v);

  // env = O_{k+1}† ⋯ O_K† Λ O_1† ⋯ O_{k−1}†, so Tr(V†Λ) = Tr(O_k† env).
  Matrix env = v.adjoint() * target;
  apply_gate(g[0], ops[0], q, env);

  std::vector<double> probe(params.begin(), params.end());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = ops[k];
    const int count = op.param_count();
    if (count > 0) {
      const Matrix r = reduced_block(env, op, q);
      for (int s = 0; s < count; ++s) {
        const auto idx = static_cast<std::size_t>(op.param + s);
        probe[idx] = params[idx] + step;
        const double up = std::norm(local_trace(gate_matrix(op, probe), r));
        probe[idx] = params[idx] - step;
        const double down = std::norm(local_trace(gate_matrix(op, probe), r));
        probe[idx] = params[idx];
        grad[idx] = -(up - down) / (d * d * 2.0 * step);
      }
    }
    if (k + 1 < ops.size()) {
      apply_gate(g[k + 1], ops[k + 1], q, env);
      apply_gate_adjoint_right(g[k], op, q, env);
    }
  }
}

OptResult train_compiler(const BlockDiagonalUnitary& target, const ParameterizedCircuit& circuit,
                         const CompileOptions& opts) {
  if (circuit.num_qubits() != target.num_qubits()) {
    throw std::invalid_argument("circuit width does not match the select unitary");
  }
  const Matrix& lambda = target.matrix();
  Objective obj;
  obj.cost = [&](std::span<const double> p) {
    return hst_cost(evaluate_unitary(circuit, p).matrix(), lambda);
  };
  obj.gradient = [&](std::span<const double> p, std::span<double> g) {
    hst_gradient(p, lambda, circuit, opts.opt.fd_step, g);
  };
  return minimize(obj, random_params(circuit.parameter_count(), opts.init_seed, opts.init_scale),
                  opts.opt);
}

Matrix haar_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) z(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Complex rd = rmat(c, c);
    const Complex ph = std::abs(rd) > 0.0 ? rd / std::abs(rd) : Complex{1.0};
    q.col(c) *= ph;
  }
  return q;
}

StateVector haar_state(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(normal(rng), normal(rng));
  return StateVector(v / v.norm());
}

double average_fidelity(const Matrix& v, const Matrix& u, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("average_fidelity needs at least one sample");
  std::mt19937_64 rng(seed);
  const Matrix w = v.adjoint() * u;
  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector psi = haar_state(w.rows(), rng).amplitudes();
    acc += std::norm(psi.dot(w * psi));
  }
  return acc / samples;
}

}  // namespace oqsim

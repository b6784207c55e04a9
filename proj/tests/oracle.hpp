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


// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's algebra.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M naive_kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline M pauli(char c) {
  M m = M::Zero(2, 2);
  switch (c) {
    case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = C(0, -1); m(1, 0) = C(0, 1); break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: break;
  }
  return m;
}

inline M pauli_string(C coeff, const std::string& s) {
  M m = M::Identity(1, 1);
  for (char c : s) m = naive_kron(m, pauli(c));
  return coeff * m;
}

// dρ/dt = −ι[H, ρ] + Σ (LρL† − ½{L†L, ρ})
inline M lindblad_rhs(const M& h, const std::vector<M>& ls, const M& rho) {
  const C i(0, 1);
  M out = -i * (h * rho - rho * h);
  for (const auto& l : ls) {
    const M ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

// Column-stacking: entry (j, k) goes to index k·N + j.
inline V column_stack(const M& rho) {
  V v(rho.size());
  for (Eigen::Index k = 0; k < rho.cols(); ++k)
    for (Eigen::Index j = 0; j < rho.rows(); ++j) v[k * rho.rows() + j] = rho(j, k);
  return v;
}

inline M unstack(const V& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  M rho(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j) rho(j, k) = v[k * n + j];
  return rho;
}

// exp(A) by scaling and squaring of a 30-term Taylor series.
inline M expm_taylor(const M& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.5) ++s;
  const M b = a / std::ldexp(1.0, s);
  M term = M::Identity(a.rows(), a.cols());
  M sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

inline double max_diff(const M& a, const M& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline M random_matrix(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  M m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = C(g(rng), g(rng));
  return m;
}

inline M random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const M a = random_matrix(n, rng);
  return 0.5 * (a + a.adjoint());
}

inline M random_density(Eigen::Index n, std::mt19937_64& rng) {
  const M a = random_matrix(n, rng);
  M rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline V random_state(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  V v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = C(g(rng), g(rng));
  return v / v.norm();
}

inline std::string random_letters(int q, std::mt19937_64& rng) {
  static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> d(0, 3);
  std::string s;
  for (int k = 0; k < q; ++k) s.push_back(kLetters[d(rng)]);
  return s;
}

// Least-squares slope of log(err) against log(dt).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle

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

#include "oqsim/ansatz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include "oqsim/parallel.hpp"

namespace oqsim {

std::string to_string(RotationKind k) { return k == RotationKind::Ry ? "ry" : "rzryrz"; }

std::string to_string(EntanglerKind k) {
  switch (k) {
    case EntanglerKind::None: return "none";
    case EntanglerKind::Cnot: return "cnot";
    case EntanglerKind::Cz: return "cz";
    case EntanglerKind::Cry: return "cry";
  }
  return "none";
}

RotationKind rotation_from_string(const std::string& s) {
  if (s == "ry") return RotationKind::Ry;
  if (s == "rzryrz") return RotationKind::RzRyRz;
  throw std::invalid_argument("unknown rotation kind '" + s + "'");
}

EntanglerKind entangler_from_string(const std::string& s) {
  if (s == "none") return EntanglerKind::None;
  if (s == "cnot") return EntanglerKind::Cnot;
  if (s == "cz") return EntanglerKind::Cz;
  if (s == "cry") return EntanglerKind::Cry;
  throw std::invalid_argument("unknown entangler kind '" + s + "'");
}

int GateOp::param_count() const {
  switch (kind) {
    case GateKind::Ry: return 1;
    case GateKind::RzRyRz: return 3;
    case GateKind::Cry: return 1;
    case GateKind::Cnot:
    case GateKind::Cz: return 0;
  }
  return 0;
}

// --- circuit ----------------------------------------------------------------

ParameterizedCircuit::ParameterizedCircuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
}

ParameterizedCircuit::ParameterizedCircuit(const AnsatzSpec& spec)
    : ParameterizedCircuit(spec.num_qubits) {
  if (spec.depth < 0) throw std::invalid_argument("ansatz depth must be nonnegative");
  const GateKind rot = spec.rotation == RotationKind::Ry ? GateKind::Ry : GateKind::RzRyRz;
  for (int layer = 0; layer < spec.depth; ++layer) {
    for (int q = 0; q < num_qubits_; ++q) append({rot, q});
    for (int q = 0; q + 1 < num_qubits_; ++q) {
      switch (spec.entangler) {
        case EntanglerKind::None: break;
        case EntanglerKind::Cnot: append({GateKind::Cnot, q + 1, q}); break;
        case EntanglerKind::Cz: append({GateKind::Cz, q + 1, q}); break;
        case EntanglerKind::Cry: append({GateKind::Cry, q + 1, q}); break;
      }
    }
  }
}

void ParameterizedCircuit::append(GateOp op) {
  const bool two_qubit = op.kind == GateKind::Cnot || op.kind == GateKind::Cz ||
                         op.kind == GateKind::Cry;
  if (op.target < 0 || op.target >= num_qubits_ ||
      (two_qubit && (op.control < 0 || op.control >= num_qubits_ || op.control == op.target))) {
    throw std::invalid_argument("gate acts on an invalid qubit");
  }
  if (!two_qubit) op.control = -1;
  const int count = op.param_count();
  op.param = count > 0 ? static_cast<int>(parameter_count_) : -1;
  parameter_count_ += static_cast<std::size_t>(count);
  ops_.push_back(op);
}

bool ParameterizedCircuit::is_real() const {
  return std::none_of(ops_.begin(), ops_.end(),
                      [](const GateOp& op) { return op.kind == GateKind::RzRyRz; });
}

Matrix gate_matrix(const GateOp& op, std::span<const double> params) {
  auto p = [&](int k) { return params[static_cast<std::size_t>(op.param + k)]; };
  switch (op.kind) {
    case GateKind::Ry: return gates::ry(p(0));
    case GateKind::RzRyRz: return gates::rz(p(2)) * gates::ry(p(1)) * gates::rz(p(0));
    case GateKind::Cnot: return gates::cnot();
    case GateKind::Cz: return gates::cz();
    case GateKind::Cry: {
      Matrix m = Matrix::Identity(4, 4);
      m.bottomRightCorner(2, 2) = gates::ry(p(0));
      return m;
    }
  }
  throw std::logic_error("unhandled gate kind");
}

namespace {

// Bit positions (from the least significant end) of the gate's local
// factors, most significant local factor first.
std::array<int, 2> local_bits(const GateOp& op, int num_qubits) {
  if (op.control < 0) return {num_qubits - 1 - op.target, -1};
  return {num_qubits - 1 - op.control, num_qubits - 1 - op.target};
}

// Calls visit(idx) for every group of 2^k basis indices that differ only on
// the gate's qubits; idx[s] is the index whose local bits spell s.
template <typename Visit>
void for_each_group(const GateOp& op, int num_qubits, Visit&& visit) {
  const auto bits = local_bits(op, num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::array<Eigen::Index, 4> idx{};
  if (op.control < 0) {
    const std::size_t m = std::size_t{1} << bits[0];
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & m) continue;
      idx[0] = static_cast<Eigen::Index>(base);
      idx[1] = static_cast<Eigen::Index>(base | m);
      visit(std::span<const Eigen::Index>(idx.data(), 2));
    }
  } else {
    const std::size_t mc = std::size_t{1} << bits[0];
    const std::size_t mt = std::size_t{1} << bits[1];
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & (mc | mt)) continue;
      idx[0] = static_cast<Eigen::Index>(base);
      idx[1] = static_cast<Eigen::Index>(base | mt);
      idx[2] = static_cast<Eigen::Index>(base | mc);
      idx[3] = static_cast<Eigen::Index>(base | mc | mt);
      visit(std::span<const Eigen::Index>(idx.data(), 4));
    }
  }
}

}  // namespace

void apply_gate(const Matrix& local, const GateOp& op, int num_qubits, Matrix& data) {
  const Eigen::Index k = local.rows();
  std::array<Complex, 4> in{};
  for_each_group(op, num_qubits, [&](std::span<const Eigen::Index> idx) {
    for (Eigen::Index col = 0; col < data.cols(); ++col) {
      for (Eigen::Index s = 0; s < k; ++s) in[s] = data(idx[s], col);
      for (Eigen::Index s = 0; s < k; ++s) {
        Complex acc = 0.0;
        for (Eigen::Index t = 0; t < k; ++t) acc += local(s, t) * in[t];
        data(idx[s], col) = acc;
      }
    }
  });
}

void apply_gate_adjoint_right(const Matrix& local, const GateOp& op, int num_qubits,
                              Matrix& data) {
  // (data·G†)(r, c) = Σ_{c'} data(r, c') conj(G(c, c'))
  const Eigen::Index k = local.rows();
  std::array<Complex, 4> in{};
  for_each_group(op, num_qubits, [&](std::span<const Eigen::Index> idx) {
    for (Eigen::Index row = 0; row < data.rows(); ++row) {
      for (Eigen::Index s = 0; s < k; ++s) in[s] = data(row, idx[s]);
      for (Eigen::Index s = 0; s < k; ++s) {
        Complex acc = 0.0;
        for (Eigen::Index t = 0; t < k; ++t) acc += std::conj(local(s, t)) * in[t];
        data(row, idx[s]) = acc;
      }
    }
  });
}

Matrix reduced_block(const Matrix& m, const GateOp& op, int num_qubits) {
  const Eigen::Index k = op.control < 0 ? 2 : 4;
  Matrix r = Matrix::Zero(k, k);
  for_each_group(op, num_qubits, [&](std::span<const Eigen::Index> idx) {
    for (Eigen::Index s = 0; s < k; ++s)
      for (Eigen::Index t = 0; t < k; ++t) r(s, t) += m(idx[s], idx[t]);
  });
  return r;
}

namespace {

void check_params(const ParameterizedCircuit& c, std::span<const double> params) {
  if (params.size() != c.parameter_count()) {
    throw std::invalid_argument("expected " + std::to_string(c.parameter_count()) +
                                " parameters, got " + std::to_string(params.size()));
  }
}

}  // namespace

StateVector evaluate_state(const ParameterizedCircuit& c, std::span<const double> params) {
  check_params(c, params);
  const auto dim = Eigen::Index{1} << c.num_qubits();
  Matrix psi = Matrix::Zero(dim, 1);
  psi(0, 0) = 1.0;
  for (const auto& op : c.ops()) apply_gate(gate_matrix(op, params), op, c.num_qubits(), psi);
  return StateVector(psi.col(0));
}

DenseOperator evaluate_unitary(const ParameterizedCircuit& c, std::span<const double> params) {
  check_params(c, params);
  const auto dim = Eigen::Index{1} << c.num_qubits();
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& op : c.ops()) apply_gate(gate_matrix(op, params), op, c.num_qubits(), u);
  return DenseOperator::unitary(std::move(u));
}

// --- optimizer ----------------------------------------------------------------

std::vector<double> random_params(std::size_t count, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> out(count);
  for (auto& v : out) v = dist(rng);
  return out;
}

std::vector<double> superposition_params(const ParameterizedCircuit& c, std::uint64_t seed,
                                         double scale) {
  std::vector<double> out = random_params(c.parameter_count(), seed, scale);
  std::vector<bool> seen(static_cast<std::size_t>(c.num_qubits()), false);
  for (const GateOp& op : c.ops()) {
    const bool first = !seen[static_cast<std::size_t>(op.target)];
    seen[static_cast<std::size_t>(op.target)] = true;
    if (op.control >= 0) {
      seen[static_cast<std::size_t>(op.control)] = true;
      continue;
    }
    if (!first) continue;
    if (op.kind == GateKind::Ry) out[static_cast<std::size_t>(op.param)] += std::numbers::pi / 2;
    if (op.kind == GateKind::RzRyRz) {
      out[static_cast<std::size_t>(op.param + 1)] += std::numbers::pi / 2;
    }
  }
  return out;
}

void finite_difference_gradient(const CostFn& cost, std::span<const double> x, double step,
                                std::span<double> grad) {
  parallel_for(x.size(), [&](std::size_t i) {
    std::vector<double> probe(x.begin(), x.end());
    probe[i] = x[i] + step;
    const double up = cost(probe);
    probe[i] = x[i] - step;
    const double down = cost(probe);
    grad[i] = (up - down) / (2.0 * step);
  });
}

namespace {

using Eigen::VectorXd;

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  VectorXd x;
  std::optional<VectorXd> g;
};

class BfgsRun {
 public:
  BfgsRun(const Objective& obj, const OptOptions& opts) : obj_(obj), opts_(opts) {}

  double cost(const VectorXd& x) const {
    return obj_.cost(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
  }

  VectorXd gradient(const VectorXd& x) const {
    VectorXd g(x.size());
    std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    std::span<double> gs(g.data(), static_cast<std::size_t>(g.size()));
    if (obj_.gradient) {
      obj_.gradient(xs, gs);
    } else {
      finite_difference_gradient(obj_.cost, xs, opts_.fd_step, gs);
    }
    return g;
  }

  OptResult run(std::vector<double> init) const {
    const auto n = static_cast<Eigen::Index>(init.size());
    VectorXd x = Eigen::Map<const VectorXd>(init.data(), n);
    double f = cost(x);
    if (!std::isfinite(f)) {
      std::ostringstream msg;
      msg << "cost is non-finite (" << f << ") at the start point of dimension " << n;
      throw NumericalError(msg.str());
    }
    OptResult res;
    res.cost_history.push_back(f);
    if (n == 0) {
      res.best_cost = f;
      res.converged = true;
      return res;
    }
    VectorXd g = gradient(x);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    bool h_is_identity = true;

    int iter = 0;
    for (; iter < opts_.max_iter; ++iter) {
      if (!g.allFinite()) break;
      if (g.lpNorm<Eigen::Infinity>() < opts_.gtol) {
        res.converged = true;
        break;
      }
      VectorXd p = -h * g;
      if (g.dot(p) >= 0.0) {
        h.setIdentity();
        h_is_identity = true;
        p = -g;
      }
      const double alpha0 = h_is_identity ? std::min(1.0, 1.0 / g.norm()) : 1.0;
      auto next = line_search(x, f, g, p, alpha0);
      if (!next) {
        if (h_is_identity) break;
        h.setIdentity();
        h_is_identity = true;
        continue;
      }
      const VectorXd s = next->x - x;
      const VectorXd y = *next->g - g;
      const double f_prev = f;
      x = next->x;
      f = next->f;
      g = *next->g;
      res.cost_history.push_back(f);

      const double sy = s.dot(y);
      if (sy > 1e-12 * s.norm() * y.norm()) {
        if (h_is_identity) {
          h *= sy / y.squaredNorm();
          h_is_identity = false;
        }
        const VectorXd hy = h * y;
        const double yhy = y.dot(hy);
        h += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
             (hy * s.transpose() + s * hy.transpose()) / sy;
      }
      if (f_prev - f <= opts_.ftol * std::max(1.0, std::abs(f))) {
        ++iter;
        break;
      }
    }
    res.best_params.assign(x.data(), x.data() + n);
    res.best_cost = f;
    res.iterations = iter;
    return res;
  }

 private:
  // Strong-Wolfe line search with quadratic-interpolation zoom.
  std::optional<Point> line_search(const VectorXd& x, double f0, const VectorXd& g0,
                                   const VectorXd& p, double alpha0) const {
    constexpr double c1 = 1e-4;
    constexpr double c2 = 0.9;
    constexpr int kMaxEvals = 40;
    const double d0 = g0.dot(p);

    auto eval = [&](double alpha) {
      Point pt;
      pt.alpha = alpha;
      pt.x = x + alpha * p;
      pt.f = cost(pt.x);
      return pt;
    };
    auto slope = [&](Point& pt) {
      if (!pt.g) pt.g = gradient(pt.x);
      return pt.g->dot(p);
    };
    auto armijo_fails = [&](const Point& pt) {
      return !std::isfinite(pt.f) || pt.f > f0 + c1 * pt.alpha * d0;
    };

    Point lo{0.0, f0, x, g0};
    double lo_slope = d0;
    Point hi;
    bool bracketed = false;
    double alpha = alpha0;
    int evals = 0;

    while (!bracketed && evals < kMaxEvals) {
      Point cur = eval(alpha);
      ++evals;
      if (armijo_fails(cur) || (lo.alpha > 0.0 && cur.f >= lo.f)) {
        hi = std::move(cur);
        bracketed = true;
        break;
      }
      const double dc = slope(cur);
      if (std::abs(dc) <= -c2 * d0) return cur;
      if (dc >= 0.0) {
        hi = std::move(lo);
        lo = std::move(cur);
        lo_slope = dc;
        bracketed = true;
        break;
      }
      lo = std::move(cur);
      lo_slope = dc;
      alpha *= 2.0;
    }

    while (bracketed && evals < kMaxEvals) {
      const double a = lo.alpha;
      const double b = hi.alpha;
      const double width = b - a;
      double trial = 0.5 * (a + b);
      if (std::isfinite(hi.f)) {
        const double denom = 2.0 * (hi.f - lo.f - lo_slope * width);
        if (denom > 0.0) trial = a - lo_slope * width * width / denom;
      }
      const double lo_edge = std::min(a, b) + 0.1 * std::abs(width);
      const double hi_edge = std::max(a, b) - 0.1 * std::abs(width);
      if (!(trial >= lo_edge && trial <= hi_edge)) trial = 0.5 * (a + b);
      if (std::abs(width) < 1e-16 * std::max(1.0, std::abs(a))) break;

      Point cur = eval(trial);
      ++evals;
      if (armijo_fails(cur) || cur.f >= lo.f) {
        hi = std::move(cur);
        continue;
      }
      const double dc = slope(cur);
      if (std::abs(dc) <= -c2 * d0) return cur;
      if (dc * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = std::move(cur);
      lo_slope = dc;
    }

    // Accept the best sufficient-decrease point found, if any.
    if (lo.alpha > 0.0 && lo.f < f0) {
      slope(lo);
      return lo;
    }
    return std::nullopt;
  }

  const Objective& obj_;
  const OptOptions& opts_;
};

}  // namespace

OptResult minimize(const Objective& objective, std::vector<double> init, const OptOptions& opts) {
  if (!objective.cost) throw std::invalid_argument("objective has no cost function");
  const BfgsRun runner(objective, opts);
  const std::size_t n = init.size();
  const std::vector<double> centre = opts.restart_around_init ? init : std::vector<double>(n, 0.0);
  OptResult best = runner.run(std::move(init));
  best.starts = 1;
  const int starts = std::max(1, opts.restarts);
  for (int r = 1; r < starts; ++r) {
    if (best.best_cost <= opts.target_cost) break;
    std::vector<double> x0 =
        random_params(n, opts.seed + static_cast<std::uint64_t>(r), opts.restart_scale);
    for (std::size_t i = 0; i < n; ++i) x0[i] += centre[i];
    OptResult cur = runner.run(std::move(x0));
    if (cur.best_cost < best.best_cost) {
      const int s = best.starts;
      best = std::move(cur);
      best.starts = s;
    }
    ++best.starts;
  }
  if (best.best_params.empty() && n > 0) {
    throw std::logic_error("optimizer produced no parameters");
  }
  return best;
}

}  // namespace oqsim

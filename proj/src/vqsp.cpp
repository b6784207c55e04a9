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


#include "oqsim/vqsp.hpp"

#include <cmath>
#include <sstream>

namespace oqsim {

namespace {

constexpr double kRealTol = 1e-12;
constexpr double kProbFloor = 1e-12;

}  // namespace

TargetVector classify(const Vector& x) {
  const auto dim = static_cast<std::size_t>(x.size());
  if (dim < 2 || !is_power_of_two(dim)) {
    throw std::invalid_argument("target length " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  const double n = x.norm();
  if (std::abs(n - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "target vector is not normalized (norm " << n << ")";
    throw std::invalid_argument(msg.str());
  }

  TargetVector t;
  t.entries = x;
  bool real = true;
  bool any_pos = false;
  bool any_neg = false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i].imag()) > kRealTol) real = false;
    if (x[i].real() > 0.0) any_pos = true;
    if (x[i].real() < 0.0) any_neg = true;
  }

  if (real) {
    t.entries = x.real().cast<Complex>();
    if (!(any_pos && any_neg)) {
      t.kind = TargetCase::Nonnegative;
      if (any_neg) {
        t.entries = -t.entries;
        t.phase = -1.0;
      }
    } else {
      t.kind = TargetCase::Real;
    }
  } else {
    t.kind = TargetCase::Complex;
  }

  for (std::size_t i = 0; i < dim; ++i) {
    const Complex v = t.entries[static_cast<Eigen::Index>(i)];
    (v.real() < 0.0 ? t.neg : t.pos).push_back(i);
    if (t.kind == TargetCase::Complex) (v.imag() < 0.0 ? t.im_neg : t.im_pos).push_back(i);
  }
  return t;
}

StateVector embedded_target(const TargetVector& x) {
  const Eigen::Index d = x.entries.size();
  switch (x.kind) {
    case TargetCase::Nonnegative:
      return StateVector(x.entries.real().cast<Complex>());
    case TargetCase::Real: {
      Vector e = Vector::Zero(2 * d);
      for (auto i : x.pos) e[static_cast<Eigen::Index>(i)] = x.entries[static_cast<Eigen::Index>(i)].real();
      for (auto i : x.neg) e[d + static_cast<Eigen::Index>(i)] = -x.entries[static_cast<Eigen::Index>(i)].real();
      return StateVector(std::move(e));
    }
    case TargetCase::Complex: {
      Vector e = Vector::Zero(4 * d);
      for (auto i : x.pos) e[static_cast<Eigen::Index>(i)] = x.entries[static_cast<Eigen::Index>(i)].real();
      for (auto i : x.neg) e[d + static_cast<Eigen::Index>(i)] = -x.entries[static_cast<Eigen::Index>(i)].real();
      for (auto i : x.im_pos) e[2 * d + static_cast<Eigen::Index>(i)] = x.entries[static_cast<Eigen::Index>(i)].imag();
      for (auto i : x.im_neg) e[3 * d + static_cast<Eigen::Index>(i)] = -x.entries[static_cast<Eigen::Index>(i)].imag();
      return StateVector(std::move(e));
    }
  }
  throw std::logic_error("unhandled target case");
}

ProbabilityDistribution estimate_probs(const StateVector& s) {
  ProbabilityDistribution out;
  out.probs.resize(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) out.probs[i] = std::norm(s[i]);
  return out;
}

ProbabilityDistribution estimate_probs(const StateVector& s, std::size_t shots,
                                       std::mt19937_64& rng) {
  if (shots == 0) throw std::invalid_argument("sampled mode needs at least one shot");
  const auto exact = estimate_probs(s);
  std::discrete_distribution<std::size_t> dist(exact.probs.begin(), exact.probs.end());
  std::vector<std::size_t> counts(s.dim(), 0);
  for (std::size_t k = 0; k < shots; ++k) ++counts[dist(rng)];
  ProbabilityDistribution out;
  out.shots = shots;
  out.probs.resize(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    out.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
  }
  return out;
}

namespace {

// The two cost terms: signed overlap gap Re Σ Φ − Σ e, and the KL divergence.
struct CostTerms {
  double gap = 0.0;
  double kl = 0.0;
};

CostTerms cost_terms(const StateVector& trial, const TargetVector& x, const ProbMode& mode) {
  const StateVector e = embedded_target(x);
  if (trial.dim() != e.dim()) {
    throw std::invalid_argument("trial state has " + std::to_string(trial.num_qubits()) +
                                " qubits, embedded target needs " +
                                std::to_string(e.num_qubits()));
  }
  const Complex sum = trial.amplitudes().sum();
  if (std::abs(sum.imag()) > 1e-8) {
    throw NumericalError("trial state has a complex overlap with |+...+>");
  }
  CostTerms out;
  out.gap = sum.real() - e.amplitudes().real().sum();

  ProbabilityDistribution p;
  if (mode.sampled()) {
    std::mt19937_64 rng(mode.seed);
    p = estimate_probs(trial, mode.shots, rng);
  } else {
    p = estimate_probs(trial);
  }
  for (std::size_t i = 0; i < e.dim(); ++i) {
    const double t = std::norm(e[i]);
    if (t <= 0.0) continue;
    out.kl -= t * std::log(std::max(p.probs[i], kProbFloor) / t);
  }
  return out;
}

}  // namespace

double vqsp_cost(const StateVector& trial, const TargetVector& x, const ProbMode& mode) {
  const CostTerms c = cost_terms(trial, x, mode);
  return std::abs(c.gap) + c.kl;
}

double vqsp_cost(std::span<const double> params, const TargetVector& x,
                 const ParameterizedCircuit& circuit, const ProbMode& mode) {
  return vqsp_cost(evaluate_state(circuit, params), x, mode);
}

VqspResult train_vqsp(const TargetVector& x, const ParameterizedCircuit& circuit,
                      const VqspOptions& opts) {
  if (circuit.num_qubits() != x.embedded_qubits()) {
    throw std::invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) +
                                " qubits, embedded target needs " +
                                std::to_string(x.embedded_qubits()));
  }
  auto objective = [&](auto&& combine) {
    Objective obj;
    obj.cost = [&, combine](std::span<const double> p) {
      return combine(cost_terms(evaluate_state(circuit, p), x, opts.mode));
    };
    return obj;
  };
  const Objective kl_only = objective([](const CostTerms& c) { return c.kl; });
  const Objective smooth = objective([](const CostTerms& c) { return c.gap * c.gap + c.kl; });
  const Objective full = objective([](const CostTerms& c) { return std::abs(c.gap) + c.kl; });

  const std::size_t n = circuit.parameter_count();
  const std::vector<double> init =
      opts.superposition_init ? superposition_params(circuit, opts.init_seed, opts.init_scale)
                              : random_params(n, opts.init_seed, opts.init_scale);
  OptOptions single = opts.opt;
  single.restarts = 1;

  VqspResult res;
  const int starts = std::max(1, opts.opt.restarts);
  for (int r = 0; r < starts; ++r) {
    if (r > 0 && res.opt.best_cost <= opts.opt.target_cost) break;
    std::vector<double> x0 = init;
    if (r > 0) {
      x0 = random_params(n, opts.opt.seed + static_cast<std::uint64_t>(r), opts.opt.restart_scale);
      if (opts.opt.restart_around_init) {
        for (std::size_t i = 0; i < n; ++i) x0[i] += init[i];
      }
    }
    // The |gap| kink stalls quasi-Newton steps, so each start first settles
    // the magnitudes on smooth surrogates with the same zero set.
    int iterations = 0;
    if (opts.staged) {
      for (const Objective* stage : {&kl_only, &smooth}) {
        OptResult s = minimize(*stage, std::move(x0), single);
        iterations += s.iterations;
        x0 = std::move(s.best_params);
      }
    }
    OptResult cur = minimize(full, std::move(x0), single);
    cur.iterations += iterations;
    if (r == 0 || cur.best_cost < res.opt.best_cost) {
      cur.starts = res.opt.starts;
      res.opt = std::move(cur);
    }
    ++res.opt.starts;
  }
  res.params = res.opt.best_params;
  res.cost = res.opt.best_cost;
  const StateVector phi = evaluate_state(circuit, res.params);
  res.fidelity = std::norm(inner(embedded_target(x), phi));
  return res;
}

StateVector degrade_state(const StateVector& target, double fidelity, std::uint64_t seed) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw std::invalid_argument("fidelity must lie in [0, 1]");
  }
  const Vector t = target.normalized().amplitudes();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector e(t.size());
  double n = 0.0;
  // Resample in the unlikely case the draw is nearly parallel to the target.
  while (n < 1e-6) {
    for (Eigen::Index i = 0; i < e.size(); ++i) e[i] = normal(rng);
    e -= t * t.dot(e);
    n = e.norm();
  }
  e /= n;
  return StateVector(std::sqrt(fidelity) * t + std::sqrt(1.0 - fidelity) * e);
}

Recovered recover(const StateVector& trained, TargetCase kind) {
  const int extra = static_cast<int>(kind) - 1;
  if (trained.num_qubits() <= extra) {
    throw std::invalid_argument("state too small for the requested case");
  }
  const Vector& v = trained.amplitudes();
  const Eigen::Index d = v.size() >> extra;
  Vector out;
  switch (kind) {
    case TargetCase::Nonnegative:
      return {trained.normalized(), 1.0};
    case TargetCase::Real:
      // H on the ancilla, keep the |1⟩ branch.
      out = (v.head(d) - v.tail(d)) / std::sqrt(2.0);
      break;
    case TargetCase::Complex: {
      // S⊗H on the ancillas, then H on the first, keep |01⟩.
      const Vector b0 = v.segment(0, d);
      const Vector b1 = v.segment(d, d);
      const Vector b2 = v.segment(2 * d, d);
      const Vector b3 = v.segment(3 * d, d);
      out = 0.5 * ((b0 - b1) + kI * (b2 - b3));
      break;
    }
  }
  const double p = out.squaredNorm();
  if (p < 1e-12) throw NumericalError("post-selection probability below 1e-12");
  return {StateVector(out / std::sqrt(p)), p};
}

}  // namespace oqsim

// Copyright 2026 The qemsof Authors.
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

#ifndef QEMSOF_SIMULATOR_HPP_
#define QEMSOF_SIMULATOR_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qemsof/pauli.hpp"
#include "qemsof/ptm.hpp"
#include "qemsof/qem.hpp"
#include "qemsof/random.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

/// Named gate unitaries; rotations are exp(-i theta sigma / 2).
inline CMatrix gate_unitary(const std::string& name, double theta = 0.0) {
  const Complex i(0.0, 1.0);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const double r = 1.0 / std::numbers::sqrt2;
  CMatrix u;
  if (name == "i" || name == "id") {
    u = CMatrix::Identity(2, 2);
  } else if (name == "x" || name == "y" || name == "z") {
    u = pauli_matrix(static_cast<PauliLetter>(name == "x" ? 1 : name == "y" ? 2 : 3));
  } else if (name == "h") {
    u.resize(2, 2);
    u << r, r, r, -r;
  } else if (name == "s" || name == "sdg" || name == "t") {
    u = CMatrix::Identity(2, 2);
    u(1, 1) = name == "s" ? i : name == "sdg" ? -i : std::polar(1.0, std::numbers::pi / 4.0);
  } else if (name == "rx") {
    u.resize(2, 2);
    u << c, -i * s, -i * s, c;
  } else if (name == "ry") {
    u.resize(2, 2);
    u << c, -s, s, c;
  } else if (name == "rz") {
    u = CMatrix::Zero(2, 2);
    u(0, 0) = std::polar(1.0, -theta / 2.0);
    u(1, 1) = std::polar(1.0, theta / 2.0);
  } else if (name == "cnot" || name == "cx") {
    u = CMatrix::Zero(4, 4);
    u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  } else if (name == "cz") {
    u = CMatrix::Identity(4, 4);
    u(3, 3) = -1.0;
  } else if (name == "swap") {
    u = CMatrix::Zero(4, 4);
    u(0, 0) = u(1, 2) = u(2, 1) = u(3, 3) = 1.0;
  } else {
    throw InvalidArgument("unknown gate '" + name + "'");
  }
  return u;
}

/// Lifts a k-qubit unitary acting on `qubits` (in that order) to n qubits.
/// Qubit 0 is the most significant bit of the computational index.
inline CMatrix embed_unitary(const CMatrix& u, std::span<const int> qubits, int n) {
  detail::require_qubits(n);
  const int k = static_cast<int>(qubits.size());
  detail::require(k >= 1 && u.rows() == (Eigen::Index{1} << k) && u.cols() == u.rows(),
                  "embed_unitary: unitary size does not match qubit list");
  std::uint64_t mask = 0;
  for (int q : qubits) {
    detail::require(q >= 0 && q < n, "embed_unitary: qubit out of range");
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    detail::require((mask & bit) == 0, "embed_unitary: repeated qubit");
    mask |= bit;
  }
  auto local = [&](std::uint64_t full) {
    std::uint64_t sub = 0;
    for (int q : qubits) sub = (sub << 1) | ((full >> (n - 1 - q)) & 1u);
    return static_cast<Eigen::Index>(sub);
  };
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(n));
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto ur = static_cast<std::uint64_t>(r), uc = static_cast<std::uint64_t>(c);
      if ((ur & ~mask) != (uc & ~mask)) continue;
      out(r, c) = u(local(ur), local(uc));
    }
  }
  return out;
}

inline PTMChannel gate_ptm(const std::string& name, std::span<const int> qubits, int n, double theta = 0.0) {
  return ptm_of_unitary(embed_unitary(gate_unitary(name, theta), qubits, n));
}

struct CircuitElement {
  enum class Kind { gate, channel, mitigation };
  Kind kind = Kind::gate;
  std::string label;
  Matrix ptm;             // unused for mitigation slots
  std::size_t slot = 0;   // plan index for mitigation slots
};

/// Ordered gates, noise channels and mitigation slots acting on |0...0>.
class Circuit {
 public:
  explicit Circuit(int n) : n_(n) { detail::require_qubits(n); }

  Circuit& gate(const PTMChannel& g, std::string label = "gate") { return push(CircuitElement::Kind::gate, g, std::move(label)); }
  Circuit& channel(const PTMChannel& c, std::string label = "noise") {
    return push(CircuitElement::Kind::channel, c, std::move(label));
  }

  /// Marks where plan `slot` is applied.
  Circuit& mitigate(std::size_t slot, std::string label = "qem") {
    elements_.push_back({CircuitElement::Kind::mitigation, std::move(label), Matrix(), slot});
    return *this;
  }

  int qubits() const { return n_; }
  const std::vector<CircuitElement>& elements() const { return elements_; }

  std::size_t mitigation_slots() const {
    std::size_t m = 0;
    for (const auto& e : elements_) {
      if (e.kind == CircuitElement::Kind::mitigation) m = std::max(m, e.slot + 1);
    }
    return m;
  }

  /// Same circuit with mitigation slots removed.
  Circuit unmitigated() const {
    Circuit c(n_);
    for (const auto& e : elements_) {
      if (e.kind != CircuitElement::Kind::mitigation) c.elements_.push_back(e);
    }
    return c;
  }

  /// Same circuit with noise and mitigation removed.
  Circuit noiseless() const {
    Circuit c(n_);
    for (const auto& e : elements_) {
      if (e.kind == CircuitElement::Kind::gate) c.elements_.push_back(e);
    }
    return c;
  }

 private:
  Circuit& push(CircuitElement::Kind kind, const PTMChannel& c, std::string label) {
    if (c.qubits() != n_) throw InvalidArgument("Circuit: element acts on " + std::to_string(c.qubits()) + " qubits, circuit has " + std::to_string(n_));
    elements_.push_back({kind, std::move(label), c.matrix(), 0});
    return *this;
  }

  int n_;
  std::vector<CircuitElement> elements_;
};

struct ObservableTerm {
  double weight = 1.0;
  PauliString pauli;
};

struct Observable {
  std::vector<ObservableTerm> terms;

  static Observable single(const PauliString& p, double w = 1.0) { return {{{w, p}}}; }
};

namespace detail {

inline void check_observable(const Observable& obs, int n) {
  require(!obs.terms.empty(), "observable has no terms");
  for (const auto& t : obs.terms) {
    if (t.pauli.qubits() != n) throw InvalidArgument("observable term size does not match circuit");
  }
}

inline void check_plans(const Circuit& c, std::span<const SamplingPlan> plans) {
  if (c.mitigation_slots() > plans.size()) {
    throw PlanMismatch("circuit references " + std::to_string(c.mitigation_slots()) + " plans, " +
                       std::to_string(plans.size()) + " given");
  }
  const auto d = static_cast<Eigen::Index>(pauli_count(c.qubits()));
  for (const auto& p : plans) {
    if (p.n != c.qubits() || p.size() == 0) throw PlanMismatch("plan does not match circuit width");
    double total = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p.ptms[k].rows() != d || p.ptms[k].cols() != d || p.probs[k] < 0.0) {
        throw PlanMismatch("plan candidate has wrong shape or negative probability");
      }
      total += p.probs[k];
    }
    if (std::abs(total - 1.0) > 1e-12) throw PlanMismatch("plan probabilities do not sum to 1");
  }
}

}  // namespace detail

/// Exact PTM-vector state after the circuit; mitigation slots apply each plan's mean map.
inline Vector exact_state(const Circuit& c, std::span<const SamplingPlan> plans = {}) {
  detail::check_plans(c, plans);
  Vector x = zero_state_vector(c.qubits()).x;
  for (const auto& e : c.elements()) {
    if (e.kind == CircuitElement::Kind::mitigation) {
      x = plans[e.slot].mean_map() * x;
    } else {
      x = e.ptm * x;
    }
  }
  return x;
}

/// sqrt(2^n) sum_i h_i x[idx(P_i)].
inline double expectation(const Vector& x, const Observable& obs, int n) {
  detail::check_observable(obs, n);
  detail::require(x.size() == static_cast<Eigen::Index>(pauli_count(n)), "expectation: state size mismatch");
  const double scale = std::sqrt(static_cast<double>(hilbert_dim(n)));
  double e = 0.0;
  for (const auto& t : obs.terms) e += t.weight * scale * x(static_cast<Eigen::Index>(t.pauli.index()));
  return e;
}

inline double run_exact(const Circuit& c, const Observable& obs, std::span<const SamplingPlan> plans = {}) {
  return expectation(exact_state(c, plans), obs, c.qubits());
}

/// Sum over terms of h_i^2 - <h_i P_i>^2 for per-term measurement.
inline double observable_variance(const Circuit& c, const Observable& obs, std::span<const SamplingPlan> plans = {}) {
  const Vector x = exact_state(c, plans);
  detail::check_observable(obs, c.qubits());
  const double scale = std::sqrt(static_cast<double>(hilbert_dim(c.qubits())));
  double v = 0.0;
  for (const auto& t : obs.terms) {
    const double m = t.weight * scale * x(static_cast<Eigen::Index>(t.pauli.index()));
    v += t.weight * t.weight - m * m;
  }
  return v;
}

struct EstimationReport {
  double mean = 0.0;
  double variance = 0.0;   // unbiased sample variance of the shot values
  double std_error = 0.0;  // sqrt(variance / shots)
  std::uint64_t shots = 0;
  double weight_product = 1.0;   // prod of ||mu||_1 over mitigation slots
  double mean_abs_weight = 1.0;  // empirical mean of |W|
  std::uint64_t rng_seed = 0;
};

namespace detail {

struct ChunkStats {
  double count = 0.0, mean = 0.0, m2 = 0.0, abs_w = 0.0;

  void add(double v) {
    count += 1.0;
    const double delta = v - mean;
    mean += delta / count;
    m2 += delta * (v - mean);
  }

  void merge(const ChunkStats& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    abs_w += o.abs_w;
    count = total;
  }
};

inline constexpr std::uint64_t kShotChunk = 4096;
inline constexpr std::uint64_t kSelectStreamKey = 0xa0761d6478bd642fULL;

}  // namespace detail

/// Monte-Carlo QEM estimator: per shot one candidate is drawn for every
/// mitigation slot, the state is propagated exactly, each observable term is
/// sampled as a +-1 outcome and the sum is scaled by the product of weights.
///
/// Plan selection and measurement draw from separate per-shot streams, so a
/// circuit whose plans are trivial reproduces the unmitigated run exactly.
/// Results do not depend on the number of worker threads.
inline EstimationReport run_qem_monte_carlo(const Circuit& c, std::span<const SamplingPlan> plans,
                                            const Observable& obs, std::uint64_t shots, std::uint64_t seed,
                                            unsigned threads = 0) {
  detail::require(shots >= 1, "run_qem_monte_carlo: shots must be >= 1");
  detail::check_plans(c, plans);
  detail::check_observable(obs, c.qubits());
  const int n = c.qubits();
  const double scale = std::sqrt(static_cast<double>(hilbert_dim(n)));

  std::vector<std::vector<double>> cumulative(plans.size());
  for (std::size_t p = 0; p < plans.size(); ++p) {
    double acc = 0.0;
    for (double pr : plans[p].probs) cumulative[p].push_back(acc += pr);
  }
  const Vector x0 = zero_state_vector(n).x;

  auto run_chunk = [&](std::uint64_t chunk) {
    detail::ChunkStats st;
    Vector x(x0.size()), tmp(x0.size());
    const std::uint64_t begin = chunk * detail::kShotChunk;
    const std::uint64_t end = std::min(shots, begin + detail::kShotChunk);
    for (std::uint64_t shot = begin; shot < end; ++shot) {
      auto select = SplitMix64::stream(seed ^ detail::kSelectStreamKey, shot);
      auto measure = SplitMix64::stream(seed, shot);
      double w = 1.0;
      x = x0;
      for (const auto& e : c.elements()) {
        const Matrix* m = &e.ptm;
        if (e.kind == CircuitElement::Kind::mitigation) {
          const auto& cum = cumulative[e.slot];
          const double u = select.uniform();
          auto k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
          k = std::min(k, cum.size() - 1);
          w *= plans[e.slot].weights[k];
          m = &plans[e.slot].ptms[k];
        }
        tmp.noalias() = *m * x;
        x.swap(tmp);
      }
      const double trace = scale * x(0);
      double value = 0.0;
      for (const auto& t : obs.terms) {
        const double ev = scale * x(static_cast<Eigen::Index>(t.pauli.index()));
        const double u = measure.uniform();
        const double o = u < 0.5 * (trace + ev) ? 1.0 : (u < trace ? -1.0 : 0.0);
        value += t.weight * o;
      }
      st.add(w * value);
      st.abs_w += std::abs(w);
    }
    return st;
  };

  const std::uint64_t chunks = (shots + detail::kShotChunk - 1) / detail::kShotChunk;
  std::vector<detail::ChunkStats> results(chunks);
  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t k = 0; k < chunks; ++k) results[k] = run_chunk(k);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t k; (k = next.fetch_add(1)) < chunks;) results[k] = run_chunk(k);
      });
    }
  }

  detail::ChunkStats total;
  for (const auto& r : results) total.merge(r);

  EstimationReport rep;
  rep.shots = shots;
  rep.rng_seed = seed;
  rep.mean = total.mean;
  rep.variance = shots > 1 ? total.m2 / static_cast<double>(shots - 1) : 0.0;
  rep.std_error = std::sqrt(rep.variance / static_cast<double>(shots));
  rep.mean_abs_weight = total.abs_w / static_cast<double>(shots);
  for (const auto& e : c.elements()) {
    if (e.kind == CircuitElement::Kind::mitigation) rep.weight_product *= plans[e.slot].one_norm;
  }
  return rep;
}

/// Unmitigated sampling of the circuit as given.
inline EstimationReport run_monte_carlo(const Circuit& c, const Observable& obs, std::uint64_t shots,
                                        std::uint64_t seed, unsigned threads = 0) {
  detail::require(c.mitigation_slots() == 0, "run_monte_carlo: circuit has mitigation slots");
  return run_qem_monte_carlo(c, {}, obs, shots, seed, threads);
}

/// Variance ratio minus one.
inline double empirical_sof(const EstimationReport& qem, const EstimationReport& plain) {
  detail::require(plain.variance > 0.0, "empirical_sof: reference variance is zero");
  return qem.variance / plain.variance - 1.0;
}

}  // namespace qemsof

#endif  // QEMSOF_SIMULATOR_HPP_

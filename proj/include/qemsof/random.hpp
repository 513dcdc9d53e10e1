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

#ifndef QEMSOF_RANDOM_HPP_
#define QEMSOF_RANDOM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "qemsof/channel.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

/// SplitMix64 generator. Streams keyed by (seed, counter) are independent of
/// how work is split across threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state = 0) : state_(state) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t counter) {
    SplitMix64 key(seed);
    const std::uint64_t k = key();
    SplitMix64 ctr(counter ^ 0x6a09e667f3bcc909ULL);
    return SplitMix64(k ^ ctr());
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Pauli channel with GGEP eps whose error mass is Dirichlet(1, ..., 1) over the
/// non-identity Paulis.
template <class Rng>
PauliChannelEta random_pauli_eta(Rng& rng, int n, double eps) {
  const auto d = static_cast<Eigen::Index>(pauli_count(n));
  std::exponential_distribution<double> expo(1.0);
  Vector eta(d);
  double total = 0.0;
  for (Eigen::Index i = 1; i < d; ++i) total += (eta(i) = expo(rng));
  eta.tail(d - 1) *= eps / total;
  eta(0) = 1.0 - eps;
  return PauliChannelEta(n, std::move(eta));
}

/// Random convex combination of `terms` permutation matrices that fix index 0.
template <class Rng>
Matrix random_doubly_stochastic_fixing_identity(Rng& rng, int n, int terms = 4) {
  const auto d = static_cast<Eigen::Index>(pauli_count(n));
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(terms));
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  Matrix q = Matrix::Zero(d, d);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(d));
  for (int t = 0; t < terms; ++t) {
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    for (Eigen::Index i = 0; i < d; ++i) q(perm[static_cast<std::size_t>(i)], i) += w[static_cast<std::size_t>(t)] / total;
  }
  return q;
}

/// Haar-random unitary via QR of a complex Ginibre matrix.
template <class Rng>
CMatrix random_unitary(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

/// Haar-random pure state vector.
template <class Rng>
CVector random_state(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// Random CPTP channel with `kraus_count` Kraus operators taken from a
/// Haar-random Stinespring isometry.
template <class Rng>
PTMChannel random_cptp_channel(Rng& rng, int n, int kraus_count = 3) {
  const auto h = static_cast<Eigen::Index>(hilbert_dim(n));
  const CMatrix u = random_unitary(rng, h * kraus_count);
  std::vector<CMatrix> kraus;
  for (int k = 0; k < kraus_count; ++k) kraus.push_back(u.block(k * h, 0, h, h));
  return ptm_of_kraus(kraus);
}

/// Random single-qubit CPTP channel with lower-triangular PTM: a Pauli channel,
/// amplitude damping, and another Pauli channel, composed.
template <class Rng>
PTMChannel random_triangular_channel(Rng& rng, double max_error = 0.2) {
  std::uniform_real_distribution<double> u(0.0, max_error);
  const PTMChannel first = pauli_channel(random_pauli_eta(rng, 1, u(rng)));
  const PTMChannel second = pauli_channel(random_pauli_eta(rng, 1, u(rng)));
  return compose(second, compose(amplitude_damping(u(rng)), first));
}

}  // namespace qemsof

#endif  // QEMSOF_RANDOM_HPP_

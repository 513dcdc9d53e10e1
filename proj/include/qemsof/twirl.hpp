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

#ifndef QEMSOF_TWIRL_HPP_
#define QEMSOF_TWIRL_HPP_

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/LU>

#include "qemsof/channel.hpp"
#include "qemsof/pauli.hpp"
#include "qemsof/ptm.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

enum class TwirlKind { pauli, clifford };

struct TwirlConfig {
  TwirlKind kind = TwirlKind::pauli;
  double gate_noise_ggep = 0.0;  // per single-qubit twirl gate
  static constexpr int kLayers = 2;  // one before, one after
};

/// Pauli twirl: keeps the PTM diagonal. Fails if the result is not a Pauli channel.
inline PTMChannel pauli_twirl(const PTMChannel& c) {
  const int n = c.qubits();
  const Vector d = c.matrix().diagonal();
  Vector eta = hadamard_transform(d) / static_cast<double>(pauli_count(n));
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    if (eta(i) < -1e-12) throw NotCptp("pauli_twirl: input is not a valid channel (negative Pauli weight)");
  }
  if (std::abs(eta.sum() - 1.0) > 1e-10) throw NotCptp("pauli_twirl: input is not trace preserving");
  return PTMChannel(n, Matrix(d.asDiagonal()));
}

/// Explicit average 4^-n sum_i P_i C P_i over the Pauli group.
inline PTMChannel pauli_twirl_montecarlo(const PTMChannel& c) {
  const int n = c.qubits();
  detail::require(n <= 2, "pauli_twirl_montecarlo: n <= 2 only");
  Matrix acc = Matrix::Zero(c.dim(), c.dim());
  for (std::uint64_t i = 0; i < pauli_count(n); ++i) {
    const Matrix p = pauli_ptm(PauliString(n, i)).matrix();
    acc += p * c.matrix() * p;
  }
  return PTMChannel(n, acc / static_cast<double>(pauli_count(n)));
}

/// The 24 single-qubit Clifford PTMs: identity on I, signed permutations with
/// determinant +1 on the (X, Y, Z) block.
inline std::vector<Matrix> single_qubit_clifford_ptms() {
  std::vector<Matrix> out;
  const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& p : perms) {
    for (int signs = 0; signs < 8; ++signs) {
      Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
      for (int k = 0; k < 3; ++k) r(p[static_cast<std::size_t>(k)], k) = (signs >> k & 1) ? -1.0 : 1.0;
      if (r.determinant() < 0) continue;
      Matrix m = Matrix::Identity(4, 4);
      m.block<3, 3>(1, 1) = r;
      out.push_back(std::move(m));
    }
  }
  return out;
}

/// Clifford twirl: keeps [C]_00 and spreads the remaining trace evenly over the
/// non-identity diagonal, i.e. a depolarizing channel with the same GGEP.
inline PTMChannel clifford_twirl(const PTMChannel& c) {
  const Eigen::Index d = c.matrix().rows();
  const double c00 = c.matrix()(0, 0);
  const double lambda = (c.matrix().trace() - c00) / static_cast<double>(d - 1);
  Vector diag = Vector::Constant(d, lambda);
  diag(0) = c00;
  return PTMChannel(c.qubits(), diag.asDiagonal().toDenseMatrix());
}

/// Explicit 24-element average, single qubit only.
inline PTMChannel clifford_twirl_enumerated(const PTMChannel& c) {
  detail::require(c.qubits() == 1, "clifford_twirl_enumerated: single-qubit channels only");
  const auto group = single_qubit_clifford_ptms();
  Matrix acc = Matrix::Zero(4, 4);
  for (const auto& g : group) acc += g.transpose() * c.matrix() * g;
  return PTMChannel(1, acc / static_cast<double>(group.size()));
}

/// Twirl the channel part of a noisy gate C o G: returns T(C) o G.
inline PTMChannel gate_referred_twirl(const PTMChannel& gate, const PTMChannel& noisy_gate) {
  detail::require(gate.qubits() == noisy_gate.qubits(), "gate_referred_twirl: qubit count mismatch");
  Eigen::FullPivLU<Matrix> lu(gate.matrix());
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw SingularChannel("gate_referred_twirl: gate is singular");
  const Matrix gate_inv = lu.inverse();
  const PTMChannel channel(gate.qubits(), noisy_gate.matrix() * gate_inv);
  return PTMChannel(gate.qubits(), pauli_twirl(channel).matrix() * gate.matrix());
}

/// Twirl built from noisy gates: a per-qubit depolarizing layer of GGEP eps_g
/// on each side of the ideally twirled channel.
inline PTMChannel imperfect_twirl(const PTMChannel& c, const TwirlConfig& cfg) {
  detail::require(cfg.gate_noise_ggep >= 0.0 && cfg.gate_noise_ggep <= 0.75,
                  "imperfect_twirl: gate noise GGEP out of range");
  const PTMChannel twirled = cfg.kind == TwirlKind::pauli ? pauli_twirl(c) : clifford_twirl(c);
  if (cfg.gate_noise_ggep == 0.0) return twirled;
  const Matrix layer = tensor_power(depolarizing(1, cfg.gate_noise_ggep), c.qubits()).matrix();
  return PTMChannel(c.qubits(), layer * twirled.matrix() * layer);
}

}  // namespace qemsof

#endif  // QEMSOF_TWIRL_HPP_

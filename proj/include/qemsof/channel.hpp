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

#ifndef QEMSOF_CHANNEL_HPP_
#define QEMSOF_CHANNEL_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qemsof/pauli.hpp"
#include "qemsof/ptm.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

/// Probability vector over the 4^n Pauli errors of a Pauli channel.
class PauliChannelEta {
 public:
  PauliChannelEta(int n, Vector eta) : n_(n), eta_(std::move(eta)) {
    detail::require_qubits(n_);
    detail::require(eta_.size() == static_cast<Eigen::Index>(pauli_count(n_)),
                    "eta must have 4^n entries");
    for (Eigen::Index i = 0; i < eta_.size(); ++i) {
      detail::require(eta_(i) >= -1e-12, "eta has a negative entry");
      eta_(i) = std::max(eta_(i), 0.0);
    }
    detail::require(std::abs(eta_.sum() - 1.0) <= 1e-10, "eta must sum to 1");
  }

  int qubits() const { return n_; }
  const Vector& eta() const { return eta_; }
  double operator[](Eigen::Index i) const { return eta_(i); }

  /// Error probability 1 - eta_I.
  double ggep() const { return 1.0 - eta_(0); }

 private:
  int n_;
  Vector eta_;
};

/// Diagonal of the PTM of a Pauli channel, d = H_n eta.
inline Vector eta_to_diagonal(const PauliChannelEta& eta) { return hadamard_transform(eta.eta()); }

/// Inverse map eta = H_n d / 4^n.
inline PauliChannelEta diagonal_to_eta(int n, const Vector& d) {
  detail::require(d.size() == static_cast<Eigen::Index>(pauli_count(n)), "diagonal has wrong length");
  return PauliChannelEta(n, hadamard_transform(d) / static_cast<double>(pauli_count(n)));
}

inline PTMChannel pauli_channel(const PauliChannelEta& eta) {
  const int n = eta.qubits();
  std::vector<CMatrix> kraus;
  for (Eigen::Index i = 0; i < eta.eta().size(); ++i) {
    if (eta[i] > 0) {
      kraus.push_back(std::sqrt(eta[i]) * pauli_matrix(PauliString(n, static_cast<std::uint64_t>(i))));
    }
  }
  return PTMChannel(n, eta_to_diagonal(eta).asDiagonal(), std::move(kraus));
}

/// Pauli error vector of a channel with diagonal PTM.
inline PauliChannelEta pauli_eta(const PTMChannel& c) {
  detail::require(c.is_diagonal(1e-12), "pauli_eta: channel PTM is not diagonal");
  return diagonal_to_eta(c.qubits(), c.matrix().diagonal());
}

/// Depolarizing channel with error probability eps spread evenly over the
/// 4^n - 1 non-identity Paulis.
inline PTMChannel depolarizing(int n, double eps) {
  detail::require_qubits(n);
  const auto d = static_cast<double>(pauli_count(n));
  detail::require(eps >= 0.0 && eps <= 1.0 - 1.0 / d,
                  "depolarizing: eps must lie in [0, 1 - 4^-n], got " + std::to_string(eps));
  Vector eta = Vector::Constant(static_cast<Eigen::Index>(d), eps / (d - 1.0));
  eta(0) = 1.0 - eps;
  PTMChannel base = pauli_channel(PauliChannelEta(n, eta));
  // Exact diagonal, free of transform roundoff.
  Vector diag = Vector::Constant(static_cast<Eigen::Index>(d), 1.0 - eps * d / (d - 1.0));
  diag(0) = 1.0;
  return PTMChannel(n, diag.asDiagonal(), base.kraus());
}

inline PTMChannel bit_flip(double p) {
  detail::require(p >= 0.0 && p <= 1.0, "bit_flip: p must lie in [0, 1]");
  return pauli_channel(PauliChannelEta(1, Vector{{1.0 - p, p, 0.0, 0.0}}));
}

inline PTMChannel phase_flip(double p) {
  detail::require(p >= 0.0 && p <= 1.0, "phase_flip: p must lie in [0, 1]");
  return pauli_channel(PauliChannelEta(1, Vector{{1.0 - p, 0.0, 0.0, p}}));
}

/// Amplitude damping with decay probability delta (|1> -> |0>).
inline PTMChannel amplitude_damping(double delta) {
  detail::require(delta >= 0.0 && delta <= 1.0, "amplitude_damping: delta must lie in [0, 1]");
  CMatrix e0(2, 2), e1(2, 2);
  e0 << 1, 0, 0, std::sqrt(1.0 - delta);
  e1 << 0, std::sqrt(delta), 0, 0;
  return ptm_of_kraus({e0, e1});
}

/// Coherent over-rotation about x: U = [[cos 4phi, i sin 4phi], [i sin 4phi, cos 4phi]],
/// a Bloch-sphere rotation by 8*phi.
inline PTMChannel over_rotation(double phi) {
  const double c = std::cos(4.0 * phi);
  const double s = std::sin(4.0 * phi);
  CMatrix u(2, 2);
  u << Complex(c, 0), Complex(0, s), Complex(0, s), Complex(c, 0);
  return ptm_of_unitary(u);
}

namespace detail {

inline constexpr std::size_t kMaxRetainedKraus = 256;

inline std::vector<CMatrix> kraus_products(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b,
                                           bool tensor) {
  std::vector<CMatrix> out;
  if (a.empty() || b.empty() || a.size() * b.size() > kMaxRetainedKraus) return out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(tensor ? CMatrix(kron(x, y)) : CMatrix(x * y));
  return out;
}

}  // namespace detail

/// Kronecker product in qubit order (first channel acts on qubit 0).
inline PTMChannel tensor(std::span<const PTMChannel> channels) {
  detail::require(!channels.empty(), "tensor: empty channel list");
  int n = channels.front().qubits();
  Matrix m = channels.front().matrix();
  std::vector<CMatrix> kraus = channels.front().kraus();
  for (std::size_t i = 1; i < channels.size(); ++i) {
    n += channels[i].qubits();
    detail::require_qubits(n);
    m = kron(m, channels[i].matrix());
    kraus = detail::kraus_products(kraus, channels[i].kraus(), true);
  }
  return PTMChannel(n, std::move(m), std::move(kraus));
}

inline PTMChannel tensor(const PTMChannel& a, const PTMChannel& b) {
  const std::vector<PTMChannel> parts{a, b};
  return tensor(parts);
}

/// The same single-qubit channel on each of n qubits.
inline PTMChannel tensor_power(const PTMChannel& c, int n) {
  detail::require(n >= 1, "tensor_power: n must be >= 1");
  return tensor(std::vector<PTMChannel>(static_cast<std::size_t>(n), c));
}

/// outer after inner.
inline PTMChannel compose(const PTMChannel& outer, const PTMChannel& inner) {
  detail::require(outer.qubits() == inner.qubits(), "compose: qubit count mismatch");
  return PTMChannel(outer.qubits(), outer.matrix() * inner.matrix(),
                    detail::kraus_products(outer.kraus(), inner.kraus(), false));
}

/// Generalized gate error probability 1 - Tr{C}/4^n.
inline double ggep(const PTMChannel& c) {
  return 1.0 - c.matrix().trace() / static_cast<double>(pauli_count(c.qubits()));
}

/// Average fidelity (Tr{C} + 2^n) / (4^n + 2^n).
inline double avg_fidelity(const PTMChannel& c) {
  const auto d = static_cast<double>(hilbert_dim(c.qubits()));
  return (c.matrix().trace() + d) / (d * d + d);
}

struct ChannelQuality {
  double ggep = 0.0;
  double avg_fidelity = 1.0;
};

inline ChannelQuality quality(const PTMChannel& c) { return {ggep(c), avg_fidelity(c)}; }

/// Choi matrix sum_{ab} |a><b| (x) C(|a><b|), rebuilt from the PTM as
/// 2^-n sum_{ij} C_ij S_j^T (x) S_i.
inline CMatrix choi_matrix(const PTMChannel& c) {
  const int n = c.qubits();
  const auto paulis = pauli_basis(n);
  const auto h = static_cast<Eigen::Index>(hilbert_dim(n));
  CMatrix choi = CMatrix::Zero(h * h, h * h);
  const double scale = 1.0 / static_cast<double>(h);
  for (Eigen::Index i = 0; i < c.dim(); ++i) {
    for (Eigen::Index j = 0; j < c.dim(); ++j) {
      const double v = c.matrix()(i, j);
      if (v == 0.0) continue;
      choi += (scale * v) * kron(paulis[static_cast<std::size_t>(j)].transpose(),
                                 paulis[static_cast<std::size_t>(i)]);
    }
  }
  return choi;
}

struct CptpReport {
  bool trace_preserving = false;
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;

  bool ok() const { return trace_preserving && completely_positive; }
};

inline CptpReport is_cptp(const PTMChannel& c) {
  CptpReport r;
  r.trace_preserving = c.is_trace_preserving(1e-10);
  const CMatrix choi = choi_matrix(c);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(choi, Eigen::EigenvaluesOnly);
  r.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  r.completely_positive = r.min_choi_eigenvalue >= -1e-10;
  return r;
}

/// C = U D V with U, V coherent (rotations) and D triangular.
struct CoherentTriangularParts {
  PTMChannel u;
  PTMChannel d;
  PTMChannel v;
};

/// Single-qubit split C = U D V through an SVD of the 3x3 block: U and V are
/// rotations, D is lower triangular.
///
/// Reflections are pushed into the last singular value so that both rotation
/// blocks have determinant +1. A block that is already diagonal is returned
/// unchanged with identity rotations.
inline CoherentTriangularParts coherent_triangular_decompose(const PTMChannel& c) {
  detail::require(c.qubits() == 1, "coherent_triangular_decompose: single-qubit channels only");
  detail::require(c.is_trace_preserving(1e-10),
                  "coherent_triangular_decompose: channel must be trace preserving");
  const Matrix& m = c.matrix();
  const Eigen::Matrix3d block = m.block<3, 3>(1, 1);
  const Eigen::Vector3d b = m.block<3, 1>(1, 0);

  Eigen::Matrix3d u = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d v = Eigen::Matrix3d::Identity();
  Eigen::Vector3d s = block.diagonal();
  const bool diagonal = (block - Eigen::Matrix3d(block.diagonal().asDiagonal())).cwiseAbs().maxCoeff() <= 1e-14;
  if (!diagonal) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
    if (u.determinant() < 0) {
      u.col(2) *= -1.0;
      s(2) *= -1.0;
    }
    if (v.determinant() < 0) {
      v.col(2) *= -1.0;
      s(2) *= -1.0;
    }
  }

  Matrix um = Matrix::Identity(4, 4), dm = Matrix::Zero(4, 4), vm = Matrix::Identity(4, 4);
  um.block<3, 3>(1, 1) = u;
  vm.block<3, 3>(1, 1) = v.transpose();
  dm(0, 0) = 1.0;
  dm.block<3, 1>(1, 0) = u.transpose() * b;
  dm.block<3, 3>(1, 1) = s.asDiagonal();
  return {PTMChannel(1, std::move(um)), PTMChannel(1, std::move(dm)), PTMChannel(1, std::move(vm))};
}

enum class ChannelModel { depolarizing, amplitude_damping, over_rotation };

inline std::string_view to_string(ChannelModel m) {
  switch (m) {
    case ChannelModel::depolarizing: return "depolarizing";
    case ChannelModel::amplitude_damping: return "amplitude_damping";
    case ChannelModel::over_rotation: return "over_rotation";
  }
  return "unknown";
}

/// Single-qubit member of a one-parameter family.
inline PTMChannel model_channel(ChannelModel model, double param) {
  switch (model) {
    case ChannelModel::depolarizing: return depolarizing(1, param);
    case ChannelModel::amplitude_damping: return amplitude_damping(param);
    case ChannelModel::over_rotation: return over_rotation(param);
  }
  throw InvalidArgument("unknown channel model");
}

/// Parameter of a single-qubit model whose GGEP equals target (to 1e-12).
///
/// Bisection over the monotone branch: delta in [0, 1] for amplitude damping,
/// phi in [0, pi/8] for over-rotation.
inline double calibrate_to_ggep(ChannelModel model, double target) {
  if (model == ChannelModel::depolarizing) {
    detail::require(target >= 0.0 && target <= 0.75, "calibrate_to_ggep: depolarizing target unreachable");
    return target;
  }
  double lo = 0.0;
  double hi = model == ChannelModel::amplitude_damping ? 1.0 : std::numbers::pi / 8.0;
  auto f = [&](double x) { return ggep(model_channel(model, x)); };
  const double f_lo = f(lo), f_hi = f(hi);
  detail::require(target >= f_lo - 1e-12 && target <= f_hi + 1e-12,
                  "calibrate_to_ggep: target " + std::to_string(target) + " unreachable for " +
                      std::string(to_string(model)));
  if (std::abs(f_lo - target) <= 1e-12) return lo;
  if (std::abs(f_hi - target) <= 1e-12) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm - target) <= 1e-12 || hi - lo <= 1e-16) return mid;
    (fm < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Per-qubit GGEP that gives a product channel on n qubits the total GGEP eps.
inline double per_qubit_ggep(double eps, int n) {
  detail::require(eps >= 0.0 && eps <= 1.0 && n >= 1, "per_qubit_ggep: invalid arguments");
  return 1.0 - std::pow(1.0 - eps, 1.0 / n);
}

}  // namespace qemsof

#endif  // QEMSOF_CHANNEL_HPP_

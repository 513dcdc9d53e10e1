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

#ifndef QEMSOF_QEM_HPP_
#define QEMSOF_QEM_HPP_

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "qemsof/channel.hpp"
#include "qemsof/pauli.hpp"
#include "qemsof/ptm.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

/// One implementable candidate operation of a basis, in operator-sum form.
struct BasisOperation {
  std::string name;
  std::vector<CMatrix> kraus;
};

/// The sixteen single-qubit operations of the standard QEM basis, in table order:
/// I, X, Y, Z, the pi/2 rotations Rx Ry Rz, the pi rotations Ryz Rxz Rxy and the
/// six projective operations pi_x .. pi_xy.
inline std::vector<BasisOperation> standard_operations() {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix x = pauli_matrix(PauliLetter::X);
  const CMatrix y = pauli_matrix(PauliLetter::Y);
  const CMatrix z = pauli_matrix(PauliLetter::Z);
  const Complex i(0, 1);
  const double r = 1.0 / std::numbers::sqrt2;
  return {
      {"I", {id}},
      {"X", {x}},
      {"Y", {y}},
      {"Z", {z}},
      {"Rx", {r * (id + i * x)}},
      {"Ry", {r * (id + i * y)}},
      {"Rz", {r * (id + i * z)}},
      {"Ryz", {r * (y + z)}},
      {"Rxz", {r * (x + z)}},
      {"Rxy", {r * (x + y)}},
      {"pi_x", {0.5 * (id + x)}},
      {"pi_y", {0.5 * (id + y)}},
      {"pi_z", {0.5 * (id + z)}},
      {"pi_yz", {0.5 * (y + i * z)}},
      {"pi_xz", {0.5 * (x + i * z)}},
      {"pi_xy", {0.5 * (x + i * y)}},
  };
}

/// A full-rank set of 16^n vectorized candidate PTMs.
///
/// The first 4^n columns are the Pauli operations in canonical order. The LU
/// factorization and the 2-norm condition number are computed once.
class BasisSet {
 public:
  BasisSet(int n, std::string id, std::vector<BasisOperation> ops, std::vector<Matrix> ptms)
      : n_(n), id_(std::move(id)), ops_(std::move(ops)), ptms_(std::move(ptms)) {
    detail::require_qubits(n_);
    const auto cols = static_cast<Eigen::Index>(pauli_count(n_) * pauli_count(n_));
    detail::require(static_cast<Eigen::Index>(ptms_.size()) == cols && ops_.size() == ptms_.size(),
                    "basis must have 16^n columns");
    columns_.resize(cols, cols);
    for (Eigen::Index k = 0; k < cols; ++k) columns_.col(k) = vec(ptms_[static_cast<std::size_t>(k)]);
    lu_.compute(columns_);
    Eigen::JacobiSVD<Matrix> svd(columns_);
    const auto& sv = svd.singularValues();
    condition_ = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    detail::require(std::isfinite(condition_) && condition_ < 1e12, "basis matrix is singular");
  }

  int qubits() const { return n_; }
  const std::string& id() const { return id_; }
  Eigen::Index size() const { return columns_.cols(); }
  const Matrix& columns() const { return columns_; }
  const BasisOperation& operation(Eigen::Index k) const { return ops_[static_cast<std::size_t>(k)]; }
  const Matrix& ptm(Eigen::Index k) const { return ptms_[static_cast<std::size_t>(k)]; }
  double condition_number() const { return condition_; }

  /// Solves B mu = rhs with the cached factorization.
  Vector solve(const Vector& rhs) const { return lu_.solve(rhs); }

 private:
  int n_;
  std::string id_;
  std::vector<BasisOperation> ops_;
  std::vector<Matrix> ptms_;
  Matrix columns_;
  Eigen::PartialPivLU<Matrix> lu_;
  double condition_ = 0.0;
};

/// Standard basis for n in {1, 2}.
///
/// For n = 2 the columns are tensor products op_a (x) op_b: the 16 Pauli pairs
/// first (canonical index), then the remaining pairs in op_a-major order.
inline BasisSet standard_basis(int n) {
  detail::require(n == 1 || n == 2, "standard_basis: only n = 1 and n = 2 are supported");
  const auto single = standard_operations();
  std::vector<Matrix> single_ptm;
  for (const auto& op : single) single_ptm.push_back(ptm_of_kraus(op.kraus).matrix());
  if (n == 1) return BasisSet(1, "standard-n1", single, single_ptm);

  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) order.emplace_back(a, b);
  for (std::size_t a = 0; a < 16; ++a)
    for (std::size_t b = 0; b < 16; ++b)
      if (a >= 4 || b >= 4) order.emplace_back(a, b);

  std::vector<BasisOperation> ops;
  std::vector<Matrix> ptms;
  for (auto [a, b] : order) {
    std::vector<CMatrix> kraus;
    for (const auto& ka : single[a].kraus)
      for (const auto& kb : single[b].kraus) kraus.push_back(kron(ka, kb));
    ops.push_back({single[a].name + "*" + single[b].name, std::move(kraus)});
    ptms.push_back(kron(single_ptm[a], single_ptm[b]));
  }
  return BasisSet(2, "standard-n2", std::move(ops), std::move(ptms));
}

/// Process-wide cached standard basis.
inline const BasisSet& shared_standard_basis(int n) {
  static const BasisSet one = standard_basis(1);
  if (n == 1) return one;
  static const BasisSet two = standard_basis(2);
  detail::require(n == 2, "standard_basis: only n = 1 and n = 2 are supported");
  return two;
}

struct CptniReport {
  bool ok = true;
  std::vector<double> max_eigenvalues;  // of sum K^dagger K, per column
  std::vector<Eigen::Index> failing;
};

/// Every basis operation must be trace non-increasing: sum K^dagger K <= I.
inline CptniReport validate_cptni(const BasisSet& basis) {
  CptniReport r;
  for (Eigen::Index k = 0; k < basis.size(); ++k) {
    const auto& kraus = basis.operation(k).kraus;
    detail::require(!kraus.empty(), "validate_cptni: basis operation lacks a Kraus form");
    CMatrix sum = CMatrix::Zero(kraus.front().rows(), kraus.front().cols());
    for (const auto& op : kraus) sum += op.adjoint() * op;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sum, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    r.max_eigenvalues.push_back(top);
    if (top > 1.0 + 1e-12) {
      r.ok = false;
      r.failing.push_back(k);
    }
  }
  return r;
}

/// Quasi-probability coefficients of an inverse channel over a basis.
struct QuasiProbability {
  int n = 1;
  Vector mu;
  double one_norm = 0.0;
  std::string basis_id;
  bool reduced = false;  // mu covers only the 4^n Pauli columns

  double sum() const { return mu.sum(); }
};

/// Sampling overhead factor gamma = ||mu||_1^2 - 1.
struct SOF {
  double gamma = 0.0;
};

namespace detail {

inline QuasiProbability make_qp(int n, Vector mu, std::string basis_id, bool reduced) {
  const double norm = mu.lpNorm<1>();
  return {n, std::move(mu), norm, std::move(basis_id), reduced};
}

}  // namespace detail

/// mu = B^-1 vec(C^-1), computed as two solves with a residual check.
inline QuasiProbability quasi_probability(const PTMChannel& c, const BasisSet& basis) {
  detail::require(c.qubits() == basis.qubits(), "quasi_probability: channel and basis sizes differ");
  const Matrix& m = c.matrix();
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || sv(0) / smin >= 1e12) {
    throw SingularChannel("channel PTM is not invertible (condition number " +
                          std::to_string(smin > 0 ? sv(0) / smin : INFINITY) + ")");
  }
  Eigen::PartialPivLU<Matrix> lu(m);
  const Matrix inverse = lu.solve(Matrix::Identity(m.rows(), m.cols()));
  const Vector target = vec(inverse);
  Vector mu = basis.solve(target);
  const double residual = (basis.columns() * mu - target).lpNorm<Eigen::Infinity>();
  if (!(residual <= 1e-9)) {
    throw IllConditioned("quasi_probability: residual " + std::to_string(residual) + " exceeds 1e-9");
  }
  return detail::make_qp(c.qubits(), std::move(mu), basis.id(), false);
}

inline SOF sof(const QuasiProbability& mu) { return {mu.one_norm * mu.one_norm - 1.0}; }

/// Pauli-only coefficients mu~ = H_n^-1 (1/d) with d = H_n eta.
inline QuasiProbability reduced_pauli_qp(const PauliChannelEta& eta) {
  const int n = eta.qubits();
  Vector d = eta_to_diagonal(eta);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (std::abs(d(i)) < 1e-14) {
      throw SingularChannel("reduced_pauli_qp: PTM diagonal entry " + std::to_string(i) + " is zero");
    }
  }
  Vector mu = hadamard_transform(Vector(d.cwiseInverse())) / static_cast<double>(pauli_count(n));
  return detail::make_qp(n, std::move(mu), "pauli-reduced", true);
}

/// Pauli random walk matrix: [C]_ij = eta_l where P_i P_j = P_l up to phase.
inline Matrix prw_matrix(const PauliChannelEta& eta) {
  const int n = eta.qubits();
  const auto d = static_cast<Eigen::Index>(pauli_count(n));
  Matrix c(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const PauliString pi(n, static_cast<std::uint64_t>(i));
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto l = pauli_mul(pi, PauliString(n, static_cast<std::uint64_t>(j))).pauli.index();
      c(i, j) = eta[static_cast<Eigen::Index>(l)];
    }
  }
  return c;
}

/// Pauli-only coefficients from the random-walk form: C_PRW mu~ = e_1.
inline QuasiProbability prw_qp(const PauliChannelEta& eta) {
  const Matrix c = prw_matrix(eta);
  Eigen::PartialPivLU<Matrix> lu(c);
  if (!(lu.rcond() > 1e-13)) throw SingularChannel("prw_qp: random-walk matrix is singular");
  Vector alpha = Vector::Zero(c.rows());
  alpha(0) = 1.0;
  Vector mu = lu.solve(alpha);
  return detail::make_qp(eta.qubits(), std::move(mu), "pauli-prw", true);
}

/// Monte-Carlo execution plan for one mitigated gate.
struct SamplingPlan {
  int n = 1;
  std::vector<Eigen::Index> columns;  // basis column of each candidate
  std::vector<std::string> names;
  std::vector<Matrix> ptms;
  std::vector<double> probs;    // |mu_k| / ||mu||_1
  std::vector<double> weights;  // sgn(mu_k) ||mu||_1
  double one_norm = 1.0;

  std::size_t size() const { return probs.size(); }

  /// sum_k p_k w_k M_k, the map the plan implements on average.
  Matrix mean_map() const {
    const auto d = static_cast<Eigen::Index>(pauli_count(n));
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < size(); ++k) m += probs[k] * weights[k] * ptms[k];
    return m;
  }
};

/// Candidate probabilities and weights from mu; entries below 1e-14 are dropped.
///
/// A reduced mu indexes the first 4^n (Pauli) columns of the basis.
inline SamplingPlan sampling_plan(const QuasiProbability& mu, const BasisSet& basis) {
  detail::require(mu.one_norm > 0.0, "sampling_plan: mu is zero");
  detail::require(mu.n == basis.qubits(), "sampling_plan: basis size mismatch");
  detail::require(mu.mu.size() <= basis.size(), "sampling_plan: mu longer than basis");
  SamplingPlan plan;
  plan.n = mu.n;
  plan.one_norm = mu.one_norm;
  for (Eigen::Index k = 0; k < mu.mu.size(); ++k) {
    const double v = mu.mu(k);
    if (std::abs(v) < 1e-14) continue;
    plan.columns.push_back(k);
    plan.names.push_back(basis.operation(k).name);
    plan.ptms.push_back(basis.ptm(k));
    plan.probs.push_back(std::abs(v) / mu.one_norm);
    plan.weights.push_back(v > 0 ? mu.one_norm : -mu.one_norm);
  }
  return plan;
}

/// Plan over Pauli candidates for a reduced (Pauli-indexed) mu; works for any n.
inline SamplingPlan pauli_sampling_plan(const QuasiProbability& mu) {
  detail::require(mu.reduced && mu.one_norm > 0.0, "pauli_sampling_plan: needs a non-zero reduced mu");
  detail::require(mu.mu.size() == static_cast<Eigen::Index>(pauli_count(mu.n)), "pauli_sampling_plan: size mismatch");
  SamplingPlan plan;
  plan.n = mu.n;
  plan.one_norm = mu.one_norm;
  for (Eigen::Index k = 0; k < mu.mu.size(); ++k) {
    const double v = mu.mu(k);
    if (std::abs(v) < 1e-14) continue;
    const PauliString p(mu.n, static_cast<std::uint64_t>(k));
    plan.columns.push_back(k);
    plan.names.push_back(p.letters());
    plan.ptms.push_back(pauli_ptm(p).matrix());
    plan.probs.push_back(std::abs(v) / mu.one_norm);
    plan.weights.push_back(v > 0 ? mu.one_norm : -mu.one_norm);
  }
  return plan;
}

/// Total overhead of a circuit: prod(1 + gamma_i) - 1.
inline SOF circuit_sof(std::span<const SOF> gammas) {
  double prod = 1.0;
  for (const auto& g : gammas) prod *= 1.0 + g.gamma;
  return {prod - 1.0};
}

}  // namespace qemsof

#endif  // QEMSOF_QEM_HPP_

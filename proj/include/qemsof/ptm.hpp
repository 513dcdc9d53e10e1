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

#ifndef QEMSOF_PTM_HPP_
#define QEMSOF_PTM_HPP_

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qemsof/types.hpp"

namespace qemsof {

/// A channel on n qubits in Pauli-transfer-matrix form.
///
/// Rows and columns are indexed by Pauli strings in canonical base-4 order
/// (qubit 0 most significant, I=0 X=1 Y=2 Z=3). When the channel was built
/// from an operator-sum form the Kraus operators are retained alongside.
class PTMChannel {
 public:
  PTMChannel(int n, Matrix m, std::vector<CMatrix> kraus = {})
      : n_(n), m_(std::move(m)), kraus_(std::move(kraus)) {
    detail::require_qubits(n_);
    const auto d = static_cast<Eigen::Index>(pauli_count(n_));
    detail::require(m_.rows() == d && m_.cols() == d,
                    "PTM must be 4^n x 4^n for n=" + std::to_string(n_));
    const auto h = static_cast<Eigen::Index>(hilbert_dim(n_));
    for (const auto& k : kraus_) {
      detail::require(k.rows() == h && k.cols() == h, "Kraus operator has wrong dimension");
    }
  }

  static PTMChannel identity(int n) {
    const auto d = static_cast<Eigen::Index>(pauli_count(n));
    return PTMChannel(n, Matrix::Identity(d, d),
                      {CMatrix::Identity(static_cast<Eigen::Index>(hilbert_dim(n)),
                                         static_cast<Eigen::Index>(hilbert_dim(n)))});
  }

  int qubits() const { return n_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  bool has_kraus() const { return !kraus_.empty(); }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  // First row equal to (1, 0, ..., 0).
  bool is_trace_preserving(double tol = 1e-10) const {
    if (std::abs(m_(0, 0) - 1.0) > tol) return false;
    for (Eigen::Index j = 1; j < dim(); ++j) {
      if (std::abs(m_(0, j)) > tol) return false;
    }
    return true;
  }

  bool is_diagonal(double tol = 1e-12) const {
    for (Eigen::Index j = 0; j < dim(); ++j)
      for (Eigen::Index i = 0; i < dim(); ++i)
        if (i != j && std::abs(m_(i, j)) > tol) return false;
    return true;
  }

  bool is_lower_triangular(double tol = 1e-12) const {
    for (Eigen::Index j = 1; j < dim(); ++j)
      for (Eigen::Index i = 0; i < j; ++i)
        if (std::abs(m_(i, j)) > tol) return false;
    return true;
  }

 private:
  int n_;
  Matrix m_;
  std::vector<CMatrix> kraus_;
};

}  // namespace qemsof

#endif  // QEMSOF_PTM_HPP_

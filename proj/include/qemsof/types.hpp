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

#ifndef QEMSOF_TYPES_HPP_
#define QEMSOF_TYPES_HPP_

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qemsof {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest qubit count any module accepts.
inline constexpr int kMaxQubits = 4;

/// Number of n-qubit Pauli strings, 4^n.
constexpr std::size_t pauli_count(int n) { return std::size_t{1} << (2 * n); }

/// Hilbert-space dimension, 2^n.
constexpr std::size_t hilbert_dim(int n) { return std::size_t{1} << n; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated (size mismatch, parameter out of range, bad input).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Channel PTM is not invertible at working precision.
class SingularChannel : public Error {
 public:
  using Error::Error;
};

/// A linear solve did not meet its residual bound.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Operation produced (or was given) something that is not a valid channel.
class NotCptp : public Error {
 public:
  using Error::Error;
};

/// Sampling plans do not match the circuit they are attached to.
class PlanMismatch : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

inline void require_qubits(int n) {
  require(n >= 1 && n <= kMaxQubits,
          "qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
              std::to_string(n));
}

}  // namespace detail
}  // namespace qemsof

#endif  // QEMSOF_TYPES_HPP_

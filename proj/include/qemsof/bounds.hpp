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

#ifndef QEMSOF_BOUNDS_HPP_
#define QEMSOF_BOUNDS_HPP_

#include <cmath>
#include <string>

#include "qemsof/channel.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

/// Lower SOF bound over triangular channels at GGEP eps: 4 eps / (1 - eps)^2.
inline double sof_lower_bound(double eps) {
  detail::require(eps >= 0.0 && eps < 1.0, "sof_lower_bound: eps must lie in [0, 1)");
  return 4.0 * eps / ((1.0 - eps) * (1.0 - eps));
}

/// Upper SOF bound over Pauli channels at GGEP eps: 4 eps (1 - eps) / (1 - 2 eps)^2.
/// Attained by channels with a single error type. Diverges at eps = 1/2.
inline double sof_upper_bound(double eps) {
  detail::require(eps >= 0.0 && eps < 0.5, "sof_upper_bound: eps must lie in [0, 1/2), got " +
                                               std::to_string(eps));
  return 4.0 * eps * (1.0 - eps) / ((1.0 - 2.0 * eps) * (1.0 - 2.0 * eps));
}

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  double eps = 0.0;
};

inline BoundPair sof_bounds(double eps) { return {sof_lower_bound(eps), sof_upper_bound(eps), eps}; }

enum class DepolarizingForm { derived, printed };

/// SOF of the n-qubit depolarizing channel in closed form,
/// ((4^n (1 + eps) - 1 - 2 eps) / (4^n (1 - eps) - 1))^2 - 1.
///
/// This agrees with the Hadamard-transform route for every n and tends to the
/// lower bound as n grows.
inline double depolarizing_sof(int n, double eps) {
  detail::require(n >= 1 && n <= 30, "depolarizing_sof: n out of range");
  const double d = std::ldexp(1.0, 2 * n);
  detail::require(eps >= 0.0 && eps < 1.0 - 1.0 / d, "depolarizing_sof: eps out of range");
  const double norm = (d * (1.0 + eps) - 1.0 - 2.0 * eps) / (d * (1.0 - eps) - 1.0);
  return norm * norm - 1.0;
}

/// The alternative closed form ((4^n - 1)(1 - 2 eps) - eps) / (4^n (1 - eps) - 1),
/// squared minus one. Kept for comparison only; it goes negative for eps > 0.
inline double depolarizing_sof_printed(int n, double eps) {
  detail::require(n >= 1 && n <= 30, "depolarizing_sof_printed: n out of range");
  const double d = std::ldexp(1.0, 2 * n);
  const double ratio = ((d - 1.0) * (1.0 - 2.0 * eps) - eps) / (d * (1.0 - eps) - 1.0);
  return ratio * ratio - 1.0;
}

inline double depolarizing_sof(int n, double eps, DepolarizingForm form) {
  return form == DepolarizingForm::derived ? depolarizing_sof(n, eps) : depolarizing_sof_printed(n, eps);
}

/// 1 - H(eta) in bits, with 0 log 0 = 0.
inline double hashing_bound(const PauliChannelEta& eta) {
  detail::require(eta.qubits() == 1, "hashing_bound: single-qubit channels only");
  double h = 0.0;
  for (Eigen::Index i = 0; i < eta.eta().size(); ++i) {
    const double p = eta[i];
    if (p > 0.0) h -= p * std::log2(p);
  }
  return 1.0 - h;
}

/// eta' = Q eta for a doubly stochastic Q that leaves the identity entry alone.
inline PauliChannelEta doubly_stochastic_mix(const PauliChannelEta& eta, const Matrix& q) {
  const auto d = eta.eta().size();
  detail::require(q.rows() == d && q.cols() == d, "doubly_stochastic_mix: Q must be 4^n x 4^n");
  detail::require(q.minCoeff() >= -1e-12, "doubly_stochastic_mix: Q has negative entries");
  for (Eigen::Index i = 0; i < d; ++i) {
    detail::require(std::abs(q.row(i).sum() - 1.0) <= 1e-12 && std::abs(q.col(i).sum() - 1.0) <= 1e-12,
                    "doubly_stochastic_mix: Q is not doubly stochastic");
  }
  detail::require(std::abs(q(0, 0) - 1.0) <= 1e-12, "doubly_stochastic_mix: Q must fix the identity entry");
  return PauliChannelEta(eta.qubits(), q * eta.eta());
}

struct ProliferationBounds {
  double generic = 1.0;
  double depolarizing = 1.0;
};

/// Lower bounds on the coded-to-uncoded SOF ratio for a code used at or above
/// its threshold: (1-2e)^2/(1-e)^3 in general and (3-4e)^2/(3(1-e)^2(3-e))
/// for depolarizing noise.
inline ProliferationBounds proliferation_ratio_bounds(double eps) {
  detail::require(eps >= 0.0 && eps < 0.5, "proliferation_ratio_bounds: eps must lie in [0, 1/2)");
  const double a = 1.0 - eps;
  return {(1.0 - 2.0 * eps) * (1.0 - 2.0 * eps) / (a * a * a),
          (3.0 - 4.0 * eps) * (3.0 - 4.0 * eps) / (3.0 * a * a * (3.0 - eps))};
}

}  // namespace qemsof

#endif  // QEMSOF_BOUNDS_HPP_

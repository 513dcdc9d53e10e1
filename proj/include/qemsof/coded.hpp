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

#ifndef QEMSOF_CODED_HPP_
#define QEMSOF_CODED_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "qemsof/channel.hpp"
#include "qemsof/qem.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

/// Concatenated-code logical error model f(eps) = eps^order / threshold^(order-1).
///
/// f has its fixed point at the threshold and suppresses errors below it.
struct ConcatModel {
  int n_code = 7;
  double threshold = 1.5e-3;
  int order = 2;

  double logical_ggep(double eps) const {
    return std::pow(eps, order) / std::pow(threshold, order - 1);
  }
};

inline ConcatModel steane_model() { return {}; }

/// f applied l times; l = 0 returns eps.
inline double concat_ggep(const ConcatModel& model, double eps, int stages) {
  detail::require(stages >= 0, "concat_ggep: stages must be non-negative");
  detail::require(eps >= 0.0, "concat_ggep: eps must be non-negative");
  for (int i = 0; i < stages; ++i) eps = model.logical_ggep(eps);
  return eps;
}

struct CriticalPoint {
  double gates = 0.0;      // ln n / (ln(1 + 4 f^l) - ln(1 + 4 f^(l+1)))
  double maclaurin = 0.0;  // ln n / (4 (f^l - f^(l+1)))
};

/// Circuit size below which l-stage concatenation plus QEM beats l+1 stages.
inline CriticalPoint critical_point(const ConcatModel& model, double eps, int stages, int n_code) {
  detail::require(n_code >= 2, "critical_point: code length must be >= 2");
  const double fl = concat_ggep(model, eps, stages);
  const double fl1 = model.logical_ggep(fl);
  detail::require(fl1 < fl, "critical_point: degenerate, f^(l+1)(eps) must be below f^(l)(eps)");
  const double log_n = std::log(static_cast<double>(n_code));
  return {log_n / (std::log1p(4.0 * fl) - std::log1p(4.0 * fl1)), log_n / (4.0 * (fl - fl1))};
}

inline CriticalPoint critical_point(const ConcatModel& model, double eps, int stages) {
  return critical_point(model, eps, stages, model.n_code);
}

struct SchemeChoice {
  int best_stage = 0;
  std::vector<double> log_overheads;  // l ln n + N ln(1 + 4 f^l(eps)), l = 0..max
};

/// Stage count minimizing n^l (1 + 4 f^l(eps))^N, compared in log space.
inline SchemeChoice best_scheme(const ConcatModel& model, double eps, double n_gates, int max_stages) {
  detail::require(max_stages >= 0 && n_gates >= 0.0, "best_scheme: invalid arguments");
  SchemeChoice out;
  double f = eps;
  for (int l = 0; l <= max_stages; ++l) {
    if (l > 0) f = model.logical_ggep(f);
    const double cost = l * std::log(static_cast<double>(model.n_code)) + n_gates * std::log1p(4.0 * f);
    out.log_overheads.push_back(cost);
    if (cost < out.log_overheads[static_cast<std::size_t>(out.best_stage)]) out.best_stage = l;
  }
  return out;
}

/// Post-selection overhead p / (1 - p) for detection probability p.
inline double qedc_sof(double p_detect) {
  detail::require(p_detect >= 0.0 && p_detect < 1.0, "qedc_sof: p must lie in [0, 1)");
  return p_detect / (1.0 - p_detect);
}

inline double qedc_total_sof(double gamma_qedc, double gamma_qem) {
  detail::require(gamma_qedc >= 0.0 && gamma_qem >= 0.0, "qedc_total_sof: overheads must be non-negative");
  return (1.0 + gamma_qedc) * (1.0 + gamma_qem) - 1.0;
}

/// Physical gate budget of one logical gate in a detection code block.
struct QedcGateSpec {
  std::string name;
  int coded_1q = 0;  // physical single-qubit gates in the coded implementation
  int coded_2q = 0;  // physical two-qubit gates in the coded implementation
  int uncoded_1q = 0;
  int uncoded_2q = 0;
  int logical_qubits = 2;
  int code_length = 4;
  bool transversal = false;

  void validate() const {
    detail::require(coded_1q >= 0 && coded_2q >= 0 && uncoded_1q >= 0 && uncoded_2q >= 0,
                    "QedcGateSpec: gate counts must be non-negative");
    detail::require(logical_qubits >= 1 && logical_qubits <= kMaxQubits, "QedcGateSpec: bad logical qubit count");
    if (transversal) {
      detail::require(coded_1q == code_length * uncoded_1q && coded_2q == code_length * uncoded_2q,
                      "QedcGateSpec: a transversal gate uses one physical copy per code qubit");
    }
  }
};

/// [[4,2,2]] logical CNOT between blocks: four physical CNOTs.
inline QedcGateSpec qedc_transversal_cnot() { return {"cnot", 0, 4, 0, 1, 2, 4, true}; }

/// [[4,2,2]] in-block CZ as S (x) ZS (x) ZS (x) S: six single-qubit gates.
inline QedcGateSpec qedc_cz() { return {"cz", 6, 0, 0, 1, 2, 4, false}; }

/// [[4,2,2]] in-block SWAP o H(x)H as four physical Hadamards; uncoded it takes
/// two Hadamards and a SWAP.
inline QedcGateSpec qedc_swap_h2() { return {"swap_h2", 4, 0, 2, 1, 2, 4, false}; }

struct QedcOptions {
  double residual_coefficient = 0.5;  // undetected mass = coeff * (sum of first-order terms)^2
  double extra_detection = 0.0;       // stabilizer-measurement imperfection, added to p
};

struct QedcAnalysis {
  double p_detect = 0.0;
  double residual_ggep = 0.0;
  double pure_ggep = 0.0;
  double gamma_qedc = 0.0;
  double gamma_qem_post = 0.0;
  double gamma_total = 0.0;
  double gamma_pure_qem = 0.0;
};

namespace detail {

inline double depolarizing_sof_via_hadamard(int n, double eps) {
  if (eps == 0.0) return 0.0;
  return sof(reduced_pauli_qp(pauli_eta(depolarizing(n, eps)))).gamma;
}

}  // namespace detail

/// Overheads of a detection-code logical gate under first-order detection and
/// depolarizing residual noise, against mitigating the uncoded gate directly.
inline QedcAnalysis qedc_gate_analysis(const QedcGateSpec& spec, double eps1, double eps2,
                                       const QedcOptions& opt = {}) {
  spec.validate();
  detail::require(eps1 >= 0.0 && eps2 >= 0.0, "qedc_gate_analysis: error rates must be non-negative");
  QedcAnalysis a;
  const double first_order = spec.coded_1q * eps1 + spec.coded_2q * eps2;
  a.p_detect = first_order + opt.extra_detection;
  a.residual_ggep = opt.residual_coefficient * first_order * first_order;
  a.pure_ggep = 1.0 - std::pow(1.0 - eps1, spec.uncoded_1q) * std::pow(1.0 - eps2, spec.uncoded_2q);
  a.gamma_qedc = qedc_sof(a.p_detect);
  a.gamma_qem_post = detail::depolarizing_sof_via_hadamard(spec.logical_qubits, a.residual_ggep);
  a.gamma_total = qedc_total_sof(a.gamma_qedc, a.gamma_qem_post);
  a.gamma_pure_qem = detail::depolarizing_sof_via_hadamard(spec.logical_qubits, a.pure_ggep);
  return a;
}

}  // namespace qemsof

#endif  // QEMSOF_CODED_HPP_

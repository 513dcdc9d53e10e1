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

#ifndef QEMSOF_DESCRIPTOR_HPP_
#define QEMSOF_DESCRIPTOR_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qemsof/channel.hpp"
#include "qemsof/qem.hpp"
#include "qemsof/simulator.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

using Json = nlohmann::json;

/// Malformed or inconsistent descriptor.
class DescriptorError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) throw DescriptorError(ctx + ": missing field '" + key + "'");
  return j.at(key);
}

inline double number(const Json& j, const std::string& ctx) {
  if (!j.is_number()) throw DescriptorError(ctx + ": expected a number");
  return j.get<double>();
}

inline double param(const Json& desc, const char* key) {
  return number(field(field(desc, "params", "channel"), key, "params"), std::string("params.") + key);
}

inline std::vector<double> number_list(const Json& j, const std::string& ctx) {
  if (!j.is_array()) throw DescriptorError(ctx + ": expected an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (v.is_array()) {
      auto inner = number_list(v, ctx);
      out.insert(out.end(), inner.begin(), inner.end());
    } else {
      out.push_back(number(v, ctx));
    }
  }
  return out;
}

inline Complex complex_entry(const Json& j, const std::string& ctx) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw DescriptorError(ctx + ": complex entries are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

/// Row-major complex matrix given flat or as nested rows.
inline CMatrix complex_matrix(const Json& j, Eigen::Index dim, const std::string& ctx) {
  if (!j.is_array()) throw DescriptorError(ctx + ": expected an array");
  std::vector<Complex> flat;
  for (const auto& row : j) {
    const bool nested_row = row.is_array() && !row.empty() && row[0].is_array();
    if (nested_row) {
      for (const auto& e : row) flat.push_back(complex_entry(e, ctx));
    } else {
      flat.push_back(complex_entry(row, ctx));
    }
  }
  if (static_cast<Eigen::Index>(flat.size()) != dim * dim) {
    throw DescriptorError(ctx + ": expected " + std::to_string(dim * dim) + " entries");
  }
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = flat[static_cast<std::size_t>(r * dim + c)];
  }
  return m;
}

inline int qubit_count(const Json& desc) {
  if (!desc.contains("n")) return 1;
  const auto& n = desc.at("n");
  if (!n.is_number_integer()) throw DescriptorError("channel: 'n' must be an integer");
  const int q = n.get<int>();
  if (q < 1 || q > kMaxQubits) throw DescriptorError("channel: 'n' must lie in [1, 4]");
  return q;
}

/// Single-qubit families; for n > 1 the same channel acts on every qubit.
inline PTMChannel per_qubit(const PTMChannel& c, int n) { return n == 1 ? c : tensor_power(c, n); }

}  // namespace detail

/// Builds a channel from {kind, n, params}, {kind: "ptm", n, matrix} or
/// {kind: "kraus", n, matrices}.
///
/// amplitude_damping and over_rotation also accept params.ggep, which is
/// calibrated to the native parameter.
inline PTMChannel channel_from_json(const Json& desc) {
  if (!desc.is_object()) throw DescriptorError("channel descriptor must be an object");
  const auto kind = detail::field(desc, "kind", "channel").get<std::string>();
  const int n = detail::qubit_count(desc);
  const bool has_ggep = desc.contains("params") && desc["params"].contains("ggep");
  if (kind == "identity") return PTMChannel::identity(n);
  if (kind == "depolarizing") return depolarizing(n, detail::param(desc, "eps"));
  if (kind == "bit_flip") return detail::per_qubit(bit_flip(detail::param(desc, "p")), n);
  if (kind == "phase_flip") return detail::per_qubit(phase_flip(detail::param(desc, "p")), n);
  if (kind == "amplitude_damping") {
    const double delta = has_ggep ? calibrate_to_ggep(ChannelModel::amplitude_damping, detail::param(desc, "ggep"))
                                  : detail::param(desc, "delta");
    return detail::per_qubit(amplitude_damping(delta), n);
  }
  if (kind == "over_rotation") {
    const double phi = has_ggep ? calibrate_to_ggep(ChannelModel::over_rotation, detail::param(desc, "ggep"))
                                : detail::param(desc, "phi");
    return detail::per_qubit(over_rotation(phi), n);
  }
  if (kind == "pauli") {
    const auto eta = detail::number_list(detail::field(desc["params"], "eta", "params"), "params.eta");
    if (eta.size() != pauli_count(n)) throw DescriptorError("pauli: eta must have 4^n entries");
    return pauli_channel(PauliChannelEta(n, Eigen::Map<const Vector>(eta.data(), static_cast<Eigen::Index>(eta.size()))));
  }
  if (kind == "ptm") {
    const auto vals = detail::number_list(detail::field(desc, "matrix", "ptm"), "matrix");
    const auto d = static_cast<Eigen::Index>(pauli_count(n));
    if (static_cast<Eigen::Index>(vals.size()) != d * d) throw DescriptorError("ptm: matrix must have 16^n entries");
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) m(r, c) = vals[static_cast<std::size_t>(r * d + c)];
    }
    return PTMChannel(n, std::move(m));
  }
  if (kind == "kraus") {
    const auto& mats = detail::field(desc, "matrices", "kraus");
    if (!mats.is_array() || mats.empty()) throw DescriptorError("kraus: 'matrices' must be a non-empty array");
    std::vector<CMatrix> ks;
    for (const auto& m : mats) ks.push_back(detail::complex_matrix(m, static_cast<Eigen::Index>(hilbert_dim(n)), "kraus"));
    return ptm_of_kraus(ks);
  }
  if (kind == "tensor") {
    const auto& parts = detail::field(desc, "channels", "tensor");
    std::vector<PTMChannel> cs;
    for (const auto& p : parts) cs.push_back(channel_from_json(p));
    if (cs.empty()) throw DescriptorError("tensor: no channels");
    return tensor(cs);
  }
  throw DescriptorError("unknown channel kind '" + kind + "'");
}

/// Inline form used on the command line: kind n [params...].
inline Json channel_json_from_args(std::span<const std::string> args) {
  if (args.empty()) throw DescriptorError("missing channel kind");
  Json j;
  j["kind"] = args[0];
  std::vector<double> nums;
  for (std::size_t i = 1; i < args.size(); ++i) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stod(args[i], &used));
      if (used != args[i].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DescriptorError("not a number: '" + args[i] + "'");
    }
  }
  if (nums.empty()) throw DescriptorError("missing qubit count");
  if (nums[0] != static_cast<int>(nums[0])) throw DescriptorError("qubit count must be an integer");
  j["n"] = static_cast<int>(nums[0]);
  nums.erase(nums.begin());
  const std::string& kind = args[0];
  auto one = [&](const char* key) {
    if (nums.size() != 1) throw DescriptorError(kind + " takes exactly one parameter");
    j["params"][key] = nums[0];
  };
  if (kind == "identity") {
    if (!nums.empty()) throw DescriptorError("identity takes no parameters");
  } else if (kind == "depolarizing") {
    one("eps");
  } else if (kind == "bit_flip" || kind == "phase_flip") {
    one("p");
  } else if (kind == "amplitude_damping") {
    one("delta");
  } else if (kind == "over_rotation") {
    one("phi");
  } else if (kind == "pauli") {
    j["params"]["eta"] = nums;
  } else {
    throw DescriptorError("inline form does not support kind '" + kind + "'");
  }
  return j;
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DescriptorError(path + ": " + e.what());
  }
}

/// Everything needed to run one Monte-Carlo simulation.
struct SimulationSpec {
  Circuit circuit{1};
  std::vector<SamplingPlan> plans;
  Observable observable;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
};

namespace detail {

inline SamplingPlan plan_for(const PTMChannel& c, const std::string& basis) {
  if (basis == "pauli") {
    if (!c.is_diagonal()) throw PlanMismatch("pauli basis needs a Pauli channel");
    return pauli_sampling_plan(reduced_pauli_qp(pauli_eta(c)));
  }
  if (basis == "standard") {
    if (c.qubits() > 2) throw PlanMismatch("standard basis supports at most two qubits");
    return sampling_plan(quasi_probability(c, shared_standard_basis(c.qubits())), shared_standard_basis(c.qubits()));
  }
  throw DescriptorError("unknown basis '" + basis + "'");
}

}  // namespace detail

/// Parses {n, elements, observable, shots, seed}. Elements are
/// {type: gate, name, qubits, theta}, {type: gate | channel, channel: <descriptor>}
/// or {type: mitigate, basis, channel?}; a mitigation slot without its own
/// channel inverts the closest preceding noise channel.
inline SimulationSpec simulation_from_json(const Json& j) {
  if (!j.is_object()) throw DescriptorError("circuit file must be an object");
  const int n = detail::qubit_count(j);
  SimulationSpec spec;
  spec.circuit = Circuit(n);
  std::optional<PTMChannel> last_noise;
  for (const auto& e : detail::field(j, "elements", "circuit")) {
    const auto type = detail::field(e, "type", "element").get<std::string>();
    if (type == "gate" && e.contains("name")) {
      const auto name = e["name"].get<std::string>();
      std::vector<int> qubits = e.value("qubits", std::vector<int>{});
      const CMatrix u = gate_unitary(name, e.value("theta", 0.0));
      if (qubits.empty()) {
        for (int q = 0; (Eigen::Index{1} << q) < u.rows(); ++q) qubits.push_back(q);
      }
      spec.circuit.gate(ptm_of_unitary(embed_unitary(u, qubits, n)), name);
    } else if (type == "gate" || type == "channel") {
      const PTMChannel c = channel_from_json(detail::field(e, "channel", type));
      if (type == "gate") {
        spec.circuit.gate(c);
      } else {
        spec.circuit.channel(c, detail::field(e, "channel", type).value("kind", "noise"));
        last_noise = c;
      }
    } else if (type == "mitigate") {
      std::optional<PTMChannel> target = last_noise;
      if (e.contains("channel")) target = channel_from_json(e["channel"]);
      if (!target) throw PlanMismatch("mitigation slot has no channel to invert");
      if (target->qubits() != n) throw PlanMismatch("mitigated channel width differs from circuit width");
      spec.plans.push_back(detail::plan_for(*target, e.value("basis", std::string("standard"))));
      spec.circuit.mitigate(spec.plans.size() - 1);
    } else {
      throw DescriptorError("unknown element type '" + type + "'");
    }
  }
  const auto& obs = detail::field(j, "observable", "circuit");
  if (!obs.is_array() || obs.empty()) throw DescriptorError("observable must be a non-empty array");
  for (const auto& t : obs) {
    const auto p = PauliString::from_letters(detail::field(t, "pauli", "observable").get<std::string>());
    if (p.qubits() != n) throw DescriptorError("observable term width differs from circuit width");
    spec.observable.terms.push_back({t.value("weight", 1.0), p});
  }
  spec.shots = j.value("shots", spec.shots);
  spec.seed = j.value("seed", spec.seed);
  return spec;
}

}  // namespace qemsof

#endif  // QEMSOF_DESCRIPTOR_HPP_

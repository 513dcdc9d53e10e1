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

#ifndef QEMSOF_SWEEP_HPP_
#define QEMSOF_SWEEP_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "qemsof/bounds.hpp"
#include "qemsof/channel.hpp"
#include "qemsof/coded.hpp"
#include "qemsof/descriptor.hpp"
#include "qemsof/qem.hpp"
#include "qemsof/random.hpp"
#include "qemsof/twirl.hpp"
#include "qemsof/version.hpp"

namespace qemsof {

struct GridSpec {
  bool log_spacing = true;
  double min = 1e-4;
  double max = 0.1;
  int points = 20;

  std::vector<double> values() const {
    detail::require(points >= 2, "grid: at least two points required");
    detail::require(max > min, "grid: max must exceed min");
    detail::require(!log_spacing || min > 0.0, "grid: log spacing needs min > 0");
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / (points - 1);
      v[static_cast<std::size_t>(i)] =
          log_spacing ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
    }
    v.front() = min;
    v.back() = max;
    return v;
  }
};

struct SweepConfig {
  std::string id = "fig9a";
  GridSpec grid;
  std::uint64_t seed = 1;
  int channels = 1000;            // pauli-scatter: random channels per grid point
  double gate_noise_ratio = 0.1;  // fig10: twirl-gate GGEP / channel GGEP
  double eps1_ratio = 0.1;        // fig13/14: single- / two-qubit error rate
  GridSpec n_grid{true, 1e2, 1e6, 5};  // fig12: circuit sizes
  int max_stages = 2;             // fig12
  std::string out;
  Json source;                    // original config, hashed into the CSV header
};

struct SweepRow {
  std::size_t grid_index = 0;
  std::string sweep_id;
  std::string x_name;
  double x_value = 0.0;
  std::string series;
  double value = 0.0;
  std::uint64_t seed = 0;
};

inline const std::vector<std::string>& sweep_ids() {
  static const std::vector<std::string> ids = {"fig9a", "fig9b", "fig10", "fig11", "fig12", "fig13", "fig14",
                                               "pauli-scatter"};
  return ids;
}

namespace detail {

inline GridSpec grid_from_json(const Json& g, GridSpec def) {
  if (g.is_null()) return def;
  if (!g.is_object()) throw DescriptorError("grid must be an object");
  const auto spacing = g.value("spacing", std::string(def.log_spacing ? "log" : "linear"));
  if (spacing != "log" && spacing != "linear") throw DescriptorError("grid.spacing must be log or linear");
  def.log_spacing = spacing == "log";
  def.min = g.value("min", def.min);
  def.max = g.value("max", def.max);
  def.points = g.value("points", def.points);
  if (def.points < 2) throw DescriptorError("grid.points must be >= 2");
  return def;
}

/// Runs fn(i) for i in [0, count) on a small pool; the first exception is rethrown.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

inline double full_sof(const PTMChannel& c) {
  return sof(quasi_probability(c, shared_standard_basis(c.qubits()))).gamma;
}

inline double pauli_sof(const PTMChannel& c) { return sof(reduced_pauli_qp(pauli_eta(c))).gamma; }

inline std::string format_g(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

using Series = std::vector<std::pair<std::string, double>>;

inline void add_bounds(Series& s, double eps) {
  s.emplace_back("lower_bound", sof_lower_bound(eps));
  if (eps < 0.5) s.emplace_back("upper_bound", sof_upper_bound(eps));
}

inline Series fig9_point(int n, double eps) {
  Series s;
  const double e1 = n == 1 ? eps : per_qubit_ggep(eps, n);
  const PTMChannel ad = tensor_power(amplitude_damping(calibrate_to_ggep(ChannelModel::amplitude_damping, e1)), n);
  const PTMChannel orot = tensor_power(over_rotation(calibrate_to_ggep(ChannelModel::over_rotation, e1)), n);
  s.emplace_back("amplitude_damping", full_sof(ad));
  s.emplace_back("amplitude_damping_pauli_twirl", full_sof(pauli_twirl(ad)));
  s.emplace_back("over_rotation", full_sof(orot));
  s.emplace_back("over_rotation_pauli_twirl", full_sof(pauli_twirl(orot)));
  s.emplace_back("depolarizing", full_sof(depolarizing(n, eps)));
  if (n > 1) s.emplace_back("depolarizing_product", full_sof(tensor_power(depolarizing(1, e1), n)));
  add_bounds(s, eps);
  return s;
}

inline Series fig10_point(double eps, double ratio) {
  Series s;
  for (int n = 1; n <= 2; ++n) {
    const std::string tag = n == 1 ? "1q:" : "2q:";
    const double e1 = n == 1 ? eps : per_qubit_ggep(eps, n);
    const TwirlConfig cfg{TwirlKind::pauli, ratio * eps};
    const PTMChannel ad = tensor_power(amplitude_damping(calibrate_to_ggep(ChannelModel::amplitude_damping, e1)), n);
    const PTMChannel orot = tensor_power(over_rotation(calibrate_to_ggep(ChannelModel::over_rotation, e1)), n);
    s.emplace_back(tag + "amplitude_damping", full_sof(ad));
    s.emplace_back(tag + "amplitude_damping_pauli_twirl", pauli_sof(pauli_twirl(ad)));
    s.emplace_back(tag + "amplitude_damping_imperfect_twirl", pauli_sof(imperfect_twirl(ad, cfg)));
    s.emplace_back(tag + "over_rotation_pauli_twirl", pauli_sof(pauli_twirl(orot)));
    s.emplace_back(tag + "over_rotation_imperfect_twirl", pauli_sof(imperfect_twirl(orot, cfg)));
    s.emplace_back(tag + "depolarizing", pauli_sof(depolarizing(n, eps)));
  }
  return s;
}

inline Series fig12_point(const SweepConfig& cfg, double eps) {
  Series s;
  const ConcatModel model;
  for (int l = 0; l < cfg.max_stages; ++l) {
    const double fl = concat_ggep(model, eps, l);
    if (model.logical_ggep(fl) < fl) s.emplace_back("critical_l" + std::to_string(l), critical_point(model, eps, l).gates);
  }
  for (double n_gates : cfg.n_grid.values()) {
    s.emplace_back("best_l|N=" + format_g("%.6g", n_gates),
                   best_scheme(model, eps, n_gates, cfg.max_stages).best_stage);
  }
  return s;
}

inline Series qedc_point(const QedcGateSpec& gate, double eps2, double ratio) {
  const auto a = qedc_gate_analysis(gate, ratio * eps2, eps2);
  return {{"qedc", a.gamma_qedc}, {"qem_post", a.gamma_qem_post}, {"total", a.gamma_total}, {"pure_qem", a.gamma_pure_qem}};
}

inline Series scatter_point(const SweepConfig& cfg, std::size_t index, double eps) {
  Series s;
  auto rng = SplitMix64::stream(cfg.seed, index);
  const int width = std::max(4, static_cast<int>(std::to_string(cfg.channels).size()));
  for (int k = 0; k < cfg.channels; ++k) {
    const PauliChannelEta eta = random_pauli_eta(rng, 1, eps);
    std::string name = std::to_string(k);
    name.insert(0, static_cast<std::size_t>(width) - name.size(), '0');
    s.emplace_back("channel_" + name, sof(reduced_pauli_qp(eta)).gamma);
  }
  add_bounds(s, eps);
  return s;
}

}  // namespace detail

inline SweepConfig sweep_config_from_json(const Json& j) {
  if (!j.is_object()) throw DescriptorError("sweep config must be an object");
  SweepConfig cfg;
  cfg.source = j;
  cfg.id = detail::field(j, "sweep", "sweep config").get<std::string>();
  if (std::find(sweep_ids().begin(), sweep_ids().end(), cfg.id) == sweep_ids().end()) {
    throw DescriptorError("unknown sweep '" + cfg.id + "'");
  }
  GridSpec def;
  if (cfg.id == "fig12") def = {true, 1e-5, 3e-3, 20};
  if (cfg.id == "fig13" || cfg.id == "fig14") def = {true, 1e-3, 3e-2, 20};
  if (cfg.id == "fig11") def = {true, 1e-4, 0.4, 20};
  cfg.grid = detail::grid_from_json(j.value("grid", Json()), def);
  cfg.n_grid = detail::grid_from_json(j.value("n_grid", Json()), cfg.n_grid);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.channels = j.value("channels", cfg.channels);
  cfg.gate_noise_ratio = j.value("gate_noise_ratio", cfg.gate_noise_ratio);
  cfg.eps1_ratio = j.value("eps1_ratio", cfg.eps1_ratio);
  cfg.max_stages = j.value("max_stages", cfg.max_stages);
  cfg.out = j.value("out", std::string());
  if (cfg.channels < 1) throw DescriptorError("channels must be >= 1");
  if (cfg.max_stages < 1) throw DescriptorError("max_stages must be >= 1");
  return cfg;
}

/// Evaluates every grid point and returns rows ordered by (grid index, series).
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  const auto xs = cfg.grid.values();
  std::vector<detail::Series> results(xs.size());
  detail::parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    if (cfg.id == "fig9a") results[i] = detail::fig9_point(1, x);
    else if (cfg.id == "fig9b") results[i] = detail::fig9_point(2, x);
    else if (cfg.id == "fig10") results[i] = detail::fig10_point(x, cfg.gate_noise_ratio);
    else if (cfg.id == "fig11") {
      const auto r = proliferation_ratio_bounds(x);
      results[i] = {{"generic", r.generic}, {"depolarizing", r.depolarizing}};
    } else if (cfg.id == "fig12") results[i] = detail::fig12_point(cfg, x);
    else if (cfg.id == "fig13") results[i] = detail::qedc_point(qedc_transversal_cnot(), x, cfg.eps1_ratio);
    else if (cfg.id == "fig14") results[i] = detail::qedc_point(qedc_swap_h2(), x, cfg.eps1_ratio);
    else if (cfg.id == "pauli-scatter") results[i] = detail::scatter_point(cfg, i, x);
    else throw DescriptorError("unknown sweep '" + cfg.id + "'");
  });
  const std::string x_name = (cfg.id == "fig13" || cfg.id == "fig14") ? "eps2" : "ggep";
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (auto& [series, value] : results[i]) rows.push_back({i, cfg.id, x_name, xs[i], series, value, cfg.seed});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.grid_index != b.grid_index ? a.grid_index < b.grid_index : a.series < b.series;
  });
  return rows;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string csv_header_comment(const std::string& what, const Json& config) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return std::string("# qemsof ") + kVersion + " " + what + " config=" + buf + "\n";
}

inline std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return detail::format_g("%.12g", v);
}

inline void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  os << csv_header_comment("sweep=" + cfg.id, cfg.source);
  os << "sweep_id,x_name,x_value,series,value,seed\n";
  for (const auto& r : rows) {
    os << r.sweep_id << ',' << r.x_name << ',' << csv_number(r.x_value) << ',' << r.series << ','
       << csv_number(r.value) << ',' << r.seed << '\n';
  }
}

}  // namespace qemsof

#endif  // QEMSOF_SWEEP_HPP_

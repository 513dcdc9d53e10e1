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

// qemsof: sampling-overhead calculator, sweeps and Monte-Carlo checks.
//
// Exit codes: 0 ok, 1 other failure, 2 bad input, 3 singular channel,
// 4 mitigation plan does not fit the circuit.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qemsof.hpp"
#include "qemsof/descriptor.hpp"
#include "qemsof/sweep.hpp"

namespace {

using namespace qemsof;

enum ExitCode { kOk = 0, kFailure = 1, kBadInput = 2, kSingular = 3, kPlanMismatch = 4 };

struct ChannelInput {
  std::string config;
  std::vector<std::string> inline_args;

  Json descriptor() const {
    if (!config.empty() && !inline_args.empty()) throw DescriptorError("give either --config or inline parameters");
    if (!config.empty()) return load_json(config);
    return channel_json_from_args(inline_args);
  }
};

void add_channel_input(CLI::App* cmd, ChannelInput& in) {
  cmd->add_option("--config", in.config, "channel descriptor file (JSON)");
  cmd->add_option("channel", in.inline_args, "inline channel: kind n [params...]");
}

std::ostream& output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw DescriptorError("cannot write '" + path + "'");
  return file;
}

struct SofResult {
  double one_norm = 1.0;
  double gamma = 0.0;
  double condition = 1.0;
  std::string basis;
};

SofResult compute_sof(const PTMChannel& c, const std::string& basis) {
  std::string b = basis;
  if (b == "auto") b = c.qubits() <= 2 ? "standard" : "pauli";
  QuasiProbability mu;
  double cond = 1.0;
  if (b == "standard") {
    if (c.qubits() > 2) throw DescriptorError("standard basis supports at most two qubits");
    const auto& basis_set = shared_standard_basis(c.qubits());
    mu = quasi_probability(c, basis_set);
    cond = basis_set.condition_number();
  } else if (b == "pauli" || b == "prw") {
    if (!c.is_diagonal()) throw DescriptorError(b + " basis needs a Pauli channel");
    mu = b == "pauli" ? reduced_pauli_qp(pauli_eta(c)) : prw_qp(pauli_eta(c));
  } else {
    throw DescriptorError("unknown basis '" + b + "'");
  }
  return {mu.one_norm, sof(mu).gamma, cond, mu.basis_id};
}

int cmd_sof(const ChannelInput& in, const std::string& basis, const std::string& dep_form, const std::string& out) {
  const Json desc = in.descriptor();
  const PTMChannel c = channel_from_json(desc);
  const auto form = dep_form == "printed" ? DepolarizingForm::printed : DepolarizingForm::derived;
  const SofResult r = compute_sof(c, basis);
  const double eps = std::max(0.0, ggep(c));
  const double d = static_cast<double>(pauli_count(c.qubits()));
  const double upper = (c.qubits() == 1 && eps < 0.5) ? sof_upper_bound(eps) : NAN;
  const double dep = eps < 1.0 - 1.0 / d ? depolarizing_sof(c.qubits(), eps, form) : NAN;
  std::ofstream file;
  auto& os = output(out, file);
  os << csv_header_comment("sof", desc);
  os << "kind,n,ggep,avg_fidelity,one_norm,gamma,lower_bound,upper_bound,depolarizing_gamma,basis,condition_number\n";
  os << desc.value("kind", std::string("?")) << ',' << c.qubits() << ',' << csv_number(eps) << ','
     << csv_number(avg_fidelity(c)) << ',' << csv_number(r.one_norm) << ',' << csv_number(r.gamma) << ','
     << csv_number(eps < 1.0 ? sof_lower_bound(eps) : NAN) << ',' << csv_number(upper) << ',' << csv_number(dep) << ','
     << r.basis << ',' << csv_number(r.condition) << '\n';
  return kOk;
}

int cmd_sweep(const std::string& config, const std::string& out, const std::uint64_t* seed) {
  if (config.empty()) throw DescriptorError("sweep needs --config");
  Json j = load_json(config);
  if (seed != nullptr) j["seed"] = *seed;
  SweepConfig cfg = sweep_config_from_json(j);
  if (!out.empty()) cfg.out = out;
  const auto rows = run_sweep(cfg);
  std::ofstream file;
  write_sweep_csv(output(cfg.out, file), cfg, rows);
  return kOk;
}

int cmd_simulate(const std::string& config, const std::string& out, const std::uint64_t* seed,
                 const std::uint64_t* shots) {
  if (config.empty()) throw DescriptorError("simulate needs --config");
  Json j = load_json(config);
  if (seed != nullptr) j["seed"] = *seed;
  if (shots != nullptr) j["shots"] = *shots;
  const SimulationSpec spec = simulation_from_json(j);
  const Circuit ideal = spec.circuit.noiseless();
  const auto qem = run_qem_monte_carlo(spec.circuit, spec.plans, spec.observable, spec.shots, spec.seed);
  const auto plain = run_monte_carlo(ideal, spec.observable, spec.shots, spec.seed);
  double predicted = 1.0;
  for (const auto& e : spec.circuit.elements()) {
    if (e.kind == CircuitElement::Kind::mitigation) predicted *= std::pow(spec.plans[e.slot].one_norm, 2);
  }
  const double ratio = plain.variance > 0.0 ? qem.variance / plain.variance : NAN;
  std::ofstream file;
  auto& os = output(out, file);
  os << csv_header_comment("simulate", j);
  os << "shots,seed,mean,std_error,exact_noiseless,exact_noisy,exact_mitigated,qem_variance,plain_variance,"
        "variance_ratio,weight_product,empirical_sof,predicted_sof\n";
  os << qem.shots << ',' << qem.rng_seed << ',' << csv_number(qem.mean) << ',' << csv_number(qem.std_error) << ','
     << csv_number(run_exact(ideal, spec.observable)) << ','
     << csv_number(run_exact(spec.circuit.unmitigated(), spec.observable)) << ','
     << csv_number(run_exact(spec.circuit, spec.observable, spec.plans)) << ',' << csv_number(qem.variance) << ','
     << csv_number(plain.variance) << ',' << csv_number(ratio) << ',' << csv_number(qem.weight_product) << ','
     << csv_number(ratio - 1.0) << ',' << csv_number(predicted - 1.0) << '\n';
  return kOk;
}

double gamma_or_nan(const PTMChannel& c) {
  try {
    return compute_sof(c, "auto").gamma;
  } catch (const SingularChannel&) {
    return NAN;
  } catch (const IllConditioned&) {
    return NAN;
  }
}

int cmd_twirl(const ChannelInput& in, const std::string& kind, double gate_noise, const std::string& out) {
  const Json desc = in.descriptor();
  const PTMChannel c = channel_from_json(desc);
  const TwirlConfig cfg{kind == "clifford" ? TwirlKind::clifford : TwirlKind::pauli, gate_noise};
  const PTMChannel t = imperfect_twirl(c, cfg);
  const double eps = std::max(0.0, ggep(c));
  std::ofstream file;
  auto& os = output(out, file);
  os << csv_header_comment("twirl", desc);
  os << "kind,gate_noise,ggep_in,ggep_out,gamma_in,gamma_out,depolarizing_gamma\n";
  os << kind << ',' << csv_number(gate_noise) << ',' << csv_number(eps) << ',' << csv_number(ggep(t)) << ','
     << csv_number(gamma_or_nan(c)) << ',' << csv_number(gamma_or_nan(t)) << ','
     << csv_number(depolarizing_sof(c.qubits(), eps)) << '\n';
  return kOk;
}

int cmd_concat(double eps, double n_gates, int max_stages, int n_code, double threshold, const std::string& out) {
  const ConcatModel model{n_code, threshold, 2};
  const auto choice = best_scheme(model, eps, n_gates, max_stages);
  Json args = {{"mode", "concat"}, {"eps", eps}, {"n_gates", n_gates}, {"max_stages", max_stages},
               {"n_code", n_code}, {"threshold", threshold}};
  std::ofstream file;
  auto& os = output(out, file);
  os << csv_header_comment("coded", args);
  os << "stage,logical_ggep,critical_gates,critical_gates_maclaurin,log_overhead,best\n";
  for (int l = 0; l <= max_stages; ++l) {
    const double fl = concat_ggep(model, eps, l);
    double crit = NAN, mac = NAN;
    if (l < max_stages && model.logical_ggep(fl) < fl) {
      const auto cp = critical_point(model, eps, l);
      crit = cp.gates;
      mac = cp.maclaurin;
    }
    os << l << ',' << csv_number(fl) << ',' << csv_number(crit) << ',' << csv_number(mac) << ','
       << csv_number(choice.log_overheads[static_cast<std::size_t>(l)]) << ',' << (l == choice.best_stage ? 1 : 0)
       << '\n';
  }
  return kOk;
}

int cmd_qedc(const std::string& gate, double eps2, double eps1, const std::string& out) {
  const QedcGateSpec spec = gate == "cnot" ? qedc_transversal_cnot() : gate == "cz" ? qedc_cz() : qedc_swap_h2();
  const auto a = qedc_gate_analysis(spec, eps1, eps2);
  Json args = {{"mode", "qedc"}, {"gate", gate}, {"eps1", eps1}, {"eps2", eps2}};
  std::ofstream file;
  auto& os = output(out, file);
  os << csv_header_comment("coded", args);
  os << "gate,eps1,eps2,p_detect,residual_ggep,pure_ggep,gamma_qedc,gamma_qem_post,gamma_total,gamma_pure_qem\n";
  os << gate << ',' << csv_number(eps1) << ',' << csv_number(eps2) << ',' << csv_number(a.p_detect) << ','
     << csv_number(a.residual_ggep) << ',' << csv_number(a.pure_ggep) << ',' << csv_number(a.gamma_qedc) << ','
     << csv_number(a.gamma_qem_post) << ',' << csv_number(a.gamma_total) << ',' << csv_number(a.gamma_pure_qem)
     << '\n';
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Sampling overhead of quasi-probability error mitigation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ChannelInput sof_in;
  std::string basis = "auto", dep_form = "derived", out, config;
  std::uint64_t seed = 0, shots = 0;
  auto* sof_cmd = app.add_subcommand("sof", "SOF, bounds and basis conditioning of one channel");
  add_channel_input(sof_cmd, sof_in);
  sof_cmd->add_option("--basis", basis, "standard | pauli | prw | auto")->check(CLI::IsMember({"auto", "standard", "pauli", "prw"}));
  sof_cmd->add_option("--dep-form", dep_form, "closed form used for the depolarizing reference column")
      ->check(CLI::IsMember({"derived", "printed"}));
  sof_cmd->add_option("--out", out, "output file (default stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and write CSV");
  sweep_cmd->add_option("--config", config, "sweep config (JSON)")->required();
  auto* sweep_seed = sweep_cmd->add_option("--seed", seed, "override the config seed");
  sweep_cmd->add_option("--out", out, "output file (default: config 'out' or stdout)");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo QEM run of a circuit file");
  sim_cmd->add_option("--config", config, "circuit file (JSON)")->required();
  auto* sim_seed = sim_cmd->add_option("--seed", seed, "override the circuit seed");
  auto* sim_shots = sim_cmd->add_option("--shots", shots, "override the shot count")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", out, "output file (default stdout)");

  ChannelInput twirl_in;
  std::string kind = "pauli";
  double gate_noise = 0.0;
  auto* twirl_cmd = app.add_subcommand("twirl", "SOF before and after twirling");
  add_channel_input(twirl_cmd, twirl_in);
  twirl_cmd->add_option("--kind", kind, "pauli | clifford")->check(CLI::IsMember({"pauli", "clifford"}));
  twirl_cmd->add_option("--gate-noise", gate_noise, "GGEP of each twirl gate")->check(CLI::Range(0.0, 0.75));
  twirl_cmd->add_option("--out", out, "output file (default stdout)");

  std::string mode = "concat", gate = "cnot";
  double eps = 1e-4, eps1 = -1.0, threshold = 1.5e-3, n_gates = 1e3;
  int n_code = 7, max_stages = 2;
  auto* coded_cmd = app.add_subcommand("coded", "concatenated-code or detection-code overheads");
  coded_cmd->add_option("--mode", mode, "concat | qedc")->check(CLI::IsMember({"concat", "qedc"}));
  coded_cmd->add_option("--eps", eps, "physical GGEP (two-qubit GGEP for qedc)")->check(CLI::Range(0.0, 0.5));
  coded_cmd->add_option("--eps1", eps1, "qedc: single-qubit GGEP (default eps/10)");
  coded_cmd->add_option("--n-gates", n_gates, "concat: circuit size")->check(CLI::NonNegativeNumber);
  coded_cmd->add_option("--max-stages", max_stages, "concat: largest concatenation level")->check(CLI::Range(1, 10));
  coded_cmd->add_option("--n-code", n_code, "concat: physical qubits per code block")->check(CLI::Range(2, 1000));
  coded_cmd->add_option("--threshold", threshold, "concat: threshold GGEP")->check(CLI::PositiveNumber);
  coded_cmd->add_option("--gate", gate, "qedc: cnot | cz | swap_h2")->check(CLI::IsMember({"cnot", "cz", "swap_h2"}));
  coded_cmd->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*sof_cmd) return cmd_sof(sof_in, basis, dep_form, out);
    if (*sweep_cmd) return cmd_sweep(config, out, *sweep_seed ? &seed : nullptr);
    if (*sim_cmd) return cmd_simulate(config, out, *sim_seed ? &seed : nullptr, *sim_shots ? &shots : nullptr);
    if (*twirl_cmd) return cmd_twirl(twirl_in, kind, gate_noise, out);
    if (*coded_cmd) {
      return mode == "concat" ? cmd_concat(eps, n_gates, max_stages, n_code, threshold, out)
                              : cmd_qedc(gate, eps, eps1 < 0.0 ? eps / 10.0 : eps1, out);
    }
  } catch (const SingularChannel& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const IllConditioned& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const PlanMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPlanMismatch;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const NotCptp& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

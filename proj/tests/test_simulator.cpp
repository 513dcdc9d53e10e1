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

#include <catch_amalgamated.hpp>

#include <numbers>

#include "oracles.hpp"
#include "qemsof.hpp"

using namespace qemsof;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Observable z1() { return Observable::single(PauliString::from_letters("Z")); }

SamplingPlan plan_for(const PTMChannel& c) {
  const auto& b = shared_standard_basis(c.qubits());
  return sampling_plan(quasi_probability(c, b), b);
}

}  // namespace

TEST_CASE("exact expectation values", "[simulator]") {
  Circuit empty(1);
  CHECK_THAT(run_exact(empty, z1()), WithinAbs(1.0, 1e-15));
  Circuit flip(1);
  flip.gate(gate_ptm("x", std::vector<int>{0}, 1));
  CHECK_THAT(run_exact(flip, z1()), WithinAbs(-1.0, 1e-15));
  Circuit noisy(1);
  noisy.channel(depolarizing(1, 0.03));
  CHECK_THAT(run_exact(noisy, z1()), WithinAbs(1 - 4 * 0.03 / 3, 1e-15));
  Circuit wrong(2);
  CHECK_THROWS_AS(wrong.gate(depolarizing(1, 0.1)), InvalidArgument);
  CHECK_THROWS_AS(run_exact(empty, Observable::single(PauliString::from_letters("ZZ"))), InvalidArgument);
}

TEST_CASE("gates act on the intended qubits", "[simulator]") {
  Circuit c(2);
  c.gate(gate_ptm("x", std::vector<int>{1}, 2));
  CHECK_THAT(run_exact(c, Observable::single(PauliString::from_letters("ZI"))), WithinAbs(1.0, 1e-14));
  CHECK_THAT(run_exact(c, Observable::single(PauliString::from_letters("IZ"))), WithinAbs(-1.0, 1e-14));
  Circuit bell(2);
  bell.gate(gate_ptm("h", std::vector<int>{0}, 2)).gate(gate_ptm("cnot", std::vector<int>{0, 1}, 2));
  CHECK_THAT(run_exact(bell, Observable::single(PauliString::from_letters("ZZ"))), WithinAbs(1.0, 1e-14));
  CHECK_THAT(run_exact(bell, Observable::single(PauliString::from_letters("XX"))), WithinAbs(1.0, 1e-14));
  CHECK_THAT(run_exact(bell, Observable::single(PauliString::from_letters("ZI"))), WithinAbs(0.0, 1e-14));
  // Reversed control: CNOT(1 -> 0) on |01> gives |11>.
  Circuit rev(2);
  rev.gate(gate_ptm("x", std::vector<int>{1}, 2)).gate(gate_ptm("cnot", std::vector<int>{1, 0}, 2));
  CHECK_THAT(run_exact(rev, Observable::single(PauliString::from_letters("ZI"))), WithinAbs(-1.0, 1e-14));
  // The embedded gate equals the dense Kronecker product.
  const CMatrix u = embed_unitary(gate_unitary("ry", 0.3), std::vector<int>{1}, 2);
  CHECK((u - oracle::kron(oracle::sigma(0), gate_unitary("ry", 0.3))).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotation conventions", "[simulator]") {
  const double theta = 0.7;
  Circuit c(1);
  c.gate(gate_ptm("ry", std::vector<int>{0}, 1, theta));
  CHECK_THAT(run_exact(c, z1()), WithinAbs(std::cos(theta), 1e-14));
  CHECK_THAT(run_exact(c, Observable::single(PauliString::from_letters("X"))), WithinAbs(std::sin(theta), 1e-14));
  CHECK_THROWS_AS(gate_unitary("toffoli"), InvalidArgument);
}

TEST_CASE("observable variance", "[simulator]") {
  Circuit zero(1);
  CHECK(observable_variance(zero, z1()) == 0.0);
  Circuit plus(1);
  plus.gate(gate_ptm("h", std::vector<int>{0}, 1));
  CHECK_THAT(observable_variance(plus, z1()), WithinAbs(1.0, 1e-14));
  Observable mix;
  mix.terms = {{0.5, PauliString::from_letters("X")}, {0.25, PauliString::from_letters("Z")}};
  CHECK_THAT(observable_variance(zero, mix), WithinAbs(0.25, 1e-15));
}

TEST_CASE("mitigated exact run recovers the ideal value", "[simulator]") {
  const PTMChannel noise = amplitude_damping(0.1);
  Circuit c(1);
  c.gate(gate_ptm("ry", std::vector<int>{0}, 1, 1.1)).channel(noise).mitigate(0);
  const std::vector<SamplingPlan> plans = {plan_for(noise)};
  CHECK_THAT(run_exact(c, z1(), plans), WithinAbs(run_exact(c.noiseless(), z1()), 1e-10));
  CHECK_THROWS_AS(run_exact(c, z1()), PlanMismatch);
}

TEST_CASE("trivial plans reproduce the plain estimator", "[simulator][mc]") {
  Circuit c(1);
  c.gate(gate_ptm("h", std::vector<int>{0}, 1)).channel(PTMChannel::identity(1)).mitigate(0);
  const std::vector<SamplingPlan> plans = {plan_for(PTMChannel::identity(1))};
  const auto qem = run_qem_monte_carlo(c, plans, z1(), 20000, 3);
  const auto plain = run_monte_carlo(c.noiseless(), z1(), 20000, 3);
  CHECK(qem.mean == plain.mean);
  CHECK(qem.variance == plain.variance);
  CHECK(qem.weight_product == 1.0);
  CHECK(empirical_sof(qem, plain) == 0.0);
}

TEST_CASE("Monte-Carlo runs are deterministic and thread-count independent", "[simulator][mc]") {
  const PTMChannel noise = depolarizing(1, 0.03);
  Circuit c(1);
  c.gate(gate_ptm("ry", std::vector<int>{0}, 1, 0.9)).channel(noise).mitigate(0);
  const std::vector<SamplingPlan> plans = {plan_for(noise)};
  const auto a = run_qem_monte_carlo(c, plans, z1(), 30000, 99, 1);
  const auto b = run_qem_monte_carlo(c, plans, z1(), 30000, 99, 4);
  const auto again = run_qem_monte_carlo(c, plans, z1(), 30000, 99);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.mean == again.mean);
  CHECK_THAT(a.mean_abs_weight, WithinAbs(a.weight_product, 1e-12));
  CHECK_THAT(a.weight_product, WithinAbs(1.0625, 1e-12));
  CHECK_THAT(a.std_error, WithinRel(std::sqrt(a.variance / 30000.0), 1e-14));
  const auto other = run_qem_monte_carlo(c, plans, z1(), 30000, 100);
  CHECK(other.mean != a.mean);
}

TEST_CASE("QEM estimator is unbiased and inflates variance by the squared norm", "[simulator][mc]") {
  const PTMChannel noise = depolarizing(1, 0.03);
  Circuit c(1);
  c.gate(gate_ptm("h", std::vector<int>{0}, 1)).gate(gate_ptm("ry", std::vector<int>{0}, 1, 0.4));
  c.channel(noise).mitigate(0);
  const std::vector<SamplingPlan> plans = {plan_for(noise)};
  const Observable x = Observable::single(PauliString::from_letters("X"));
  const double ideal = run_exact(c.noiseless(), x);
  const auto qem = run_qem_monte_carlo(c, plans, x, 100000, 5);
  const auto plain = run_monte_carlo(c.noiseless(), x, 100000, 5);
  CHECK(std::abs(qem.mean - ideal) <= 4 * qem.std_error);
  // Expected ratio (||mu||^2 - E^2) / (1 - E^2) for a +-1 observable.
  const double norm2 = 1.0625 * 1.0625;
  const double expected = (norm2 - ideal * ideal) / (1 - ideal * ideal);
  CHECK_THAT(qem.variance / plain.variance, WithinRel(expected, 0.05));
}

TEST_CASE("two mitigated gates follow the product law", "[simulator][mc]") {
  const PTMChannel noise = depolarizing(1, 0.03);
  Circuit c(1);
  const double q = std::numbers::pi / 4;
  c.gate(gate_ptm("ry", std::vector<int>{0}, 1, q)).channel(noise).mitigate(0);
  c.gate(gate_ptm("ry", std::vector<int>{0}, 1, q)).channel(noise).mitigate(1);
  const std::vector<SamplingPlan> plans = {plan_for(noise), plan_for(noise)};
  const auto qem = run_qem_monte_carlo(c, plans, z1(), 100000, 8);
  const auto plain = run_monte_carlo(c.noiseless(), z1(), 100000, 8);
  CHECK_THAT(qem.weight_product, WithinAbs(1.0625 * 1.0625, 1e-12));
  const double gamma = 0.12890625;
  CHECK_THAT(empirical_sof(qem, plain), WithinRel((1 + gamma) * (1 + gamma) - 1, 0.15));
}

TEST_CASE("invalid plans are rejected", "[simulator][mc]") {
  Circuit c(1);
  c.channel(depolarizing(1, 0.03)).mitigate(0);
  CHECK_THROWS_AS(run_qem_monte_carlo(c, {}, z1(), 10, 1), PlanMismatch);
  SamplingPlan bad = plan_for(depolarizing(1, 0.03));
  bad.probs[0] += 1e-9;
  const std::vector<SamplingPlan> plans = {bad};
  CHECK_THROWS_AS(run_qem_monte_carlo(c, plans, z1(), 10, 1), PlanMismatch);
  SamplingPlan wide = plan_for(depolarizing(2, 0.03));
  const std::vector<SamplingPlan> wide_plans = {wide};
  CHECK_THROWS_AS(run_qem_monte_carlo(c, wide_plans, z1(), 10, 1), PlanMismatch);
  CHECK_THROWS_AS(run_monte_carlo(Circuit(1), z1(), 0, 1), InvalidArgument);
}

TEST_CASE("trace-decreasing candidates give zero outcomes", "[simulator][mc]") {
  // A plan whose single candidate is the projective pi_z operation on |+>.
  const auto& basis = shared_standard_basis(1);
  SamplingPlan p;
  p.n = 1;
  p.columns = {12};
  p.names = {"pi_z"};
  p.ptms = {basis.ptm(12)};
  p.probs = {1.0};
  p.weights = {1.0};
  Circuit c(1);
  c.gate(gate_ptm("h", std::vector<int>{0}, 1)).mitigate(0);
  const std::vector<SamplingPlan> plans = {p};
  const auto rep = run_qem_monte_carlo(c, plans, z1(), 40000, 2);
  // Survives with probability 1/2 and then reads +1: mean 1/2, variance 1/4.
  CHECK_THAT(rep.mean, WithinAbs(0.5, 0.02));
  CHECK_THAT(rep.variance, WithinAbs(0.25, 0.01));
}

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

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("depolarizing PTM diagonal and quality metrics", "[channel]") {
  for (double eps : {0.0, 0.01, 0.03, 0.5}) {
    const PTMChannel c = depolarizing(1, eps);
    CHECK(c.is_diagonal());
    CHECK_THAT(c.matrix()(0, 0), WithinAbs(1.0, 1e-15));
    for (int i = 1; i < 4; ++i) CHECK_THAT(c.matrix()(i, i), WithinAbs(1.0 - 4.0 * eps / 3.0, 1e-15));
    CHECK_THAT(ggep(c), WithinAbs(eps, 1e-15));
    // Average fidelity from a six-state design.
    CHECK_THAT(avg_fidelity(c), WithinAbs(oracle::design_fidelity(c.kraus()), 1e-12));
  }
  CHECK_THROWS_AS(depolarizing(1, 0.8), InvalidArgument);
  CHECK_THROWS_AS(depolarizing(5, 0.1), InvalidArgument);
}

TEST_CASE("depolarizing kraus form reproduces the exact diagonal", "[channel]") {
  for (int n = 1; n <= 2; ++n) {
    const PTMChannel c = depolarizing(n, 0.07);
    REQUIRE(max_abs(c.matrix() - oracle::ptm(c.kraus())) < 1e-12);
  }
}

TEST_CASE("average fidelity matches the design average on random channels", "[channel]") {
  auto rng = SplitMix64(3);
  for (int t = 0; t < 20; ++t) {
    const PTMChannel c = random_cptp_channel(rng, 1, 2);
    REQUIRE_THAT(avg_fidelity(c), WithinAbs(oracle::design_fidelity(c.kraus()), 1e-12));
    const auto q = quality(c);
    REQUIRE_THAT(q.ggep, WithinAbs(ggep(c), 0.0));
  }
}

TEST_CASE("two-qubit average fidelity against Haar sampling", "[channel]") {
  auto rng = SplitMix64(17);
  const PTMChannel c = random_cptp_channel(rng, 2, 2);
  double acc = 0.0;
  const int samples = 20000;
  for (int s = 0; s < samples; ++s) {
    const CVector psi = random_state(rng, 4);
    const CMatrix rho = psi * psi.adjoint();
    CMatrix out = CMatrix::Zero(4, 4);
    for (const auto& k : c.kraus()) out += k * rho * k.adjoint();
    acc += (psi.adjoint() * out * psi)(0, 0).real();
  }
  CHECK_THAT(avg_fidelity(c), WithinAbs(acc / samples, 0.01));
}

TEST_CASE("amplitude damping PTM entries and GGEP", "[channel]") {
  const double delta = 0.2;
  const PTMChannel c = amplitude_damping(delta);
  Matrix ref = Matrix::Zero(4, 4);
  ref(0, 0) = 1;
  ref(1, 1) = ref(2, 2) = std::sqrt(1 - delta);
  ref(3, 0) = delta;
  ref(3, 3) = 1 - delta;
  CHECK(max_abs(c.matrix() - ref) < 1e-15);
  CHECK(c.is_lower_triangular());
  CHECK(tensor_power(c, 2).is_lower_triangular());
  CHECK_THAT(ggep(c), WithinAbs(1 - (2 + 2 * std::sqrt(1 - delta) - delta) / 4, 1e-15));
  CHECK_THAT(ggep(amplitude_damping(1.0)), WithinAbs(0.75, 1e-15));
}

TEST_CASE("over-rotation GGEP is sin^2 of the half angle", "[channel]") {
  for (double phi : {0.0, 0.01, 0.1, std::numbers::pi / 8}) {
    const double s = std::sin(4 * phi);
    CHECK_THAT(ggep(over_rotation(phi)), WithinAbs(s * s, 1e-14));
    CHECK(is_cptp(over_rotation(phi)).ok());
  }
}

TEST_CASE("Choi matrix equals the Kraus construction", "[channel][choi]") {
  auto rng = SplitMix64(23);
  for (int n = 1; n <= 2; ++n) {
    for (int t = 0; t < 5; ++t) {
      const PTMChannel c = random_cptp_channel(rng, n, 2);
      const CMatrix diff = choi_matrix(c) - oracle::choi(c.kraus());
      REQUIRE(diff.cwiseAbs().maxCoeff() < 1e-12);
      const auto rep = is_cptp(c);
      REQUIRE(rep.ok());
      REQUIRE(rep.min_choi_eigenvalue > -1e-10);
    }
  }
}

TEST_CASE("transpose map is trace preserving but not completely positive", "[channel][choi]") {
  Matrix m = Matrix::Identity(4, 4);
  m(2, 2) = -1.0;
  const auto rep = is_cptp(PTMChannel(1, m));
  CHECK(rep.trace_preserving);
  CHECK_FALSE(rep.completely_positive);
  CHECK_THAT(rep.min_choi_eigenvalue, WithinAbs(-1.0, 1e-12));
}

TEST_CASE("eta and PTM diagonal round trip", "[channel]") {
  auto rng = SplitMix64(31);
  for (int n = 1; n <= 3; ++n) {
    const PauliChannelEta eta = random_pauli_eta(rng, n, 0.2);
    const Vector d = eta_to_diagonal(eta);
    REQUIRE((d - oracle::hadamard(n) * eta.eta()).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE((diagonal_to_eta(n, d).eta() - eta.eta()).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE_THAT(ggep(pauli_channel(eta)), WithinAbs(eta.ggep(), 1e-14));
  }
  CHECK_THROWS_AS(PauliChannelEta(1, Vector{{1.1, -0.1, 0.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(PauliChannelEta(1, Vector{{0.5, 0.1, 0.0, 0.0}}), InvalidArgument);
}

TEST_CASE("bit and phase flip have a single error type", "[channel]") {
  const auto bf = pauli_eta(bit_flip(0.1));
  CHECK_THAT(bf[1], WithinAbs(0.1, 1e-15));
  CHECK(bf[2] == 0.0);
  const auto pf = pauli_eta(phase_flip(0.2));
  CHECK_THAT(pf[3], WithinAbs(0.2, 1e-15));
}

TEST_CASE("tensor product GGEP multiplies fidelities", "[channel]") {
  const std::vector<PTMChannel> zoo = {depolarizing(1, 0.05), amplitude_damping(0.3), over_rotation(0.05),
                                       bit_flip(0.02), phase_flip(0.4), PTMChannel::identity(1)};
  for (const auto& a : zoo) {
    for (const auto& b : zoo) {
      const PTMChannel t = tensor(a, b);
      REQUIRE_THAT(ggep(t), WithinAbs(1 - (1 - ggep(a)) * (1 - ggep(b)), 1e-12));
      std::vector<CMatrix> ks;
      for (const auto& ka : a.kraus())
        for (const auto& kb : b.kraus()) ks.push_back(oracle::kron(ka, kb));
      REQUIRE(max_abs(t.matrix() - oracle::ptm(ks)) < 1e-12);
    }
  }
}

TEST_CASE("composition is the PTM product", "[channel]") {
  const PTMChannel a = amplitude_damping(0.3), b = over_rotation(0.07);
  const PTMChannel ab = compose(a, b);
  CHECK(max_abs(ab.matrix() - a.matrix() * b.matrix()) < 1e-15);
  REQUIRE(ab.has_kraus());
  CHECK(max_abs(ab.matrix() - oracle::ptm(ab.kraus())) < 1e-12);
  CHECK_THROWS_AS(compose(a, depolarizing(2, 0.1)), InvalidArgument);
}

TEST_CASE("coherent-triangular split reconstructs the channel", "[channel][decompose]") {
  auto rng = SplitMix64(41);
  std::vector<PTMChannel> cases = {amplitude_damping(0.3), depolarizing(1, 0.1), over_rotation(0.05)};
  for (int t = 0; t < 50; ++t) {
    const CMatrix u1 = random_unitary(rng, 2), u2 = random_unitary(rng, 2);
    cases.push_back(compose(ptm_of_unitary(u1), compose(random_triangular_channel(rng), ptm_of_unitary(u2))));
  }
  for (const auto& c : cases) {
    const auto parts = coherent_triangular_decompose(c);
    REQUIRE(max_abs(parts.u.matrix() * parts.d.matrix() * parts.v.matrix() - c.matrix()) < 1e-12);
    REQUIRE(parts.d.is_lower_triangular(1e-12));
    for (const PTMChannel* r : {&parts.u, &parts.v}) {
      const Matrix& m = r->matrix();
      REQUIRE(max_abs(m.row(0).transpose() - Vector::Unit(4, 0)) < 1e-15);
      REQUIRE(max_abs(m.col(0) - Vector::Unit(4, 0)) < 1e-15);
      const Eigen::Matrix3d block = m.block<3, 3>(1, 1);
      REQUIRE(max_abs(block.transpose() * block - Eigen::Matrix3d::Identity()) < 1e-12);
      REQUIRE_THAT(block.determinant(), WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("diagonal blocks keep identity rotations", "[channel][decompose]") {
  const auto parts = coherent_triangular_decompose(amplitude_damping(0.4));
  CHECK(max_abs(parts.u.matrix() - Matrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs(parts.d.matrix() - amplitude_damping(0.4).matrix()) < 1e-15);
}

TEST_CASE("calibration hits the requested GGEP", "[channel]") {
  for (double target : {1e-4, 1e-3, 0.03, 0.1, 0.5}) {
    const double delta = calibrate_to_ggep(ChannelModel::amplitude_damping, target);
    REQUIRE_THAT(ggep(amplitude_damping(delta)), WithinAbs(target, 1e-12));
    const double phi = calibrate_to_ggep(ChannelModel::over_rotation, target);
    REQUIRE_THAT(ggep(over_rotation(phi)), WithinAbs(target, 1e-12));
  }
  CHECK(calibrate_to_ggep(ChannelModel::depolarizing, 0.03) == 0.03);
  CHECK_THAT(calibrate_to_ggep(ChannelModel::amplitude_damping, 0.75), WithinAbs(1.0, 1e-12));
  CHECK(calibrate_to_ggep(ChannelModel::over_rotation, 0.0) == 0.0);
  CHECK_THROWS_AS(calibrate_to_ggep(ChannelModel::amplitude_damping, 0.8), InvalidArgument);
}

TEST_CASE("per-qubit split of a product GGEP", "[channel]") {
  const double e1 = per_qubit_ggep(0.1, 2);
  CHECK_THAT(e1, WithinRel(1 - std::sqrt(0.9), 1e-14));
  CHECK_THAT(ggep(tensor_power(depolarizing(1, e1), 2)), WithinAbs(0.1, 1e-14));
}

TEST_CASE("PTM validation rejects bad shapes", "[channel]") {
  CHECK_THROWS_AS(PTMChannel(1, Matrix::Identity(3, 3)), InvalidArgument);
  CHECK_THROWS_AS(PTMChannel(0, Matrix::Identity(1, 1)), InvalidArgument);
  CHECK(PTMChannel::identity(2).is_trace_preserving());
  Matrix m = Matrix::Identity(4, 4);
  m(0, 0) = 0.5;
  CHECK_FALSE(PTMChannel(1, m).is_trace_preserving());
}

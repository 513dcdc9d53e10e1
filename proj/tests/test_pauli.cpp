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

#include "oracles.hpp"
#include "qemsof.hpp"

using namespace qemsof;
using Catch::Matchers::WithinAbs;

TEST_CASE("pauli strings index base 4 with the first qubit most significant", "[pauli]") {
  const auto p = PauliString::from_letters("XZ");
  CHECK(p.index() == 1 * 4 + 3);
  CHECK(p.letter(0) == PauliLetter::X);
  CHECK(p.letter(1) == PauliLetter::Z);
  CHECK(p.letters() == "XZ");
  CHECK(p.weight() == 2);
  CHECK(PauliString::from_letters("IIY").weight() == 1);
  CHECK_THROWS_AS(PauliString::from_letters("XQ"), InvalidArgument);
  CHECK_THROWS_AS(PauliString(1, 4), InvalidArgument);
}

TEST_CASE("pauli matrices agree with the dense construction", "[pauli]") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t i = 0; i < pauli_count(n); ++i) {
      const CMatrix diff = pauli_matrix(PauliString(n, i)) - oracle::pauli(n, static_cast<int>(i));
      REQUIRE(diff.cwiseAbs().maxCoeff() < 1e-15);
    }
  }
}

TEST_CASE("pauli products match brute-force matrix multiplication", "[pauli]") {
  for (int n = 1; n <= 2; ++n) {
    for (int a = 0; a < oracle::dim4(n); ++a) {
      for (int b = 0; b < oracle::dim4(n); ++b) {
        const auto got = pauli_mul(PauliString(n, a), PauliString(n, b));
        const auto [l, phase] = oracle::product(n, a, b);
        REQUIRE(static_cast<int>(got.pauli.index()) == l);
        REQUIRE(std::abs(got.phase() - phase) < 1e-12);
      }
    }
  }
}

TEST_CASE("single-qubit products follow the cyclic rule", "[pauli]") {
  const auto x = PauliString::from_letters("X"), y = PauliString::from_letters("Y"),
             z = PauliString::from_letters("Z");
  const auto xy = pauli_mul(x, y);
  CHECK(xy.pauli == z);
  CHECK(xy.phase_power == 1);
  const auto yx = pauli_mul(y, x);
  CHECK(yx.pauli == z);
  CHECK(yx.phase_power == 3);
  CHECK(pauli_mul(x, x).pauli == PauliString::identity(1));
}

TEST_CASE("kraus to PTM matches the definition", "[pauli]") {
  auto rng = SplitMix64(11);
  for (int n = 1; n <= 2; ++n) {
    for (int t = 0; t < 10; ++t) {
      const PTMChannel c = random_cptp_channel(rng, n, 3);
      const Matrix ref = oracle::ptm(c.kraus());
      REQUIRE((c.matrix() - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("pauli PTMs are diagonal with anticommutation signs", "[pauli]") {
  for (std::uint64_t i = 0; i < 16; ++i) {
    const PauliString p(2, i);
    const Matrix ref = oracle::ptm({oracle::pauli(2, static_cast<int>(i))});
    REQUIRE((pauli_ptm(p).matrix() - ref).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("hadamard transform matches the sign-rule matrix and inverts up to 4^n", "[pauli][hadamard]") {
  for (int n = 1; n <= 3; ++n) {
    const Matrix h = oracle::hadamard(n);
    REQUIRE((hadamard_matrix(n) - h).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE((h * h - pauli_count(n) * Matrix::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff() < 1e-12);
    auto rng = SplitMix64(n);
    Vector v(h.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform() - 0.5;
    REQUIRE((hadamard_transform(v) - h * v).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("vec stacks columns and unvec inverts it", "[pauli]") {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  const Vector v = vec(m);
  CHECK(v(0) == 1);
  CHECK(v(1) == 3);
  CHECK(v(2) == 2);
  CHECK(v(3) == 4);
  CHECK(unvec(v) == m);
}

TEST_CASE("density vectors of the zero state and random states", "[pauli]") {
  for (int n = 1; n <= 3; ++n) {
    const auto z = zero_state_vector(n);
    CMatrix rho = CMatrix::Zero(1 << n, 1 << n);
    rho(0, 0) = 1.0;
    REQUIRE((state_to_vector(rho).x - z.x).cwiseAbs().maxCoeff() < 1e-15);
    auto rng = SplitMix64(5);
    const CVector psi = random_state(rng, 1 << n);
    const auto x = state_to_vector(psi * psi.adjoint()).x;
    REQUIRE_THAT(x(0), WithinAbs(1.0 / std::sqrt(1 << n), 1e-14));
    // Purity: Tr rho^2 = sum x_i^2.
    REQUIRE_THAT(x.squaredNorm(), WithinAbs(1.0, 1e-12));
  }
  CMatrix bad = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(state_to_vector(bad), InvalidArgument);
}

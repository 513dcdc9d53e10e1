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

#ifndef QEMSOF_PAULI_HPP_
#define QEMSOF_PAULI_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qemsof/ptm.hpp"
#include "qemsof/types.hpp"

namespace qemsof {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(PauliLetter p) { return "IXYZ"[static_cast<int>(p)]; }

/// An n-qubit Pauli string without phase.
///
/// The canonical index is base-4 with qubit 0 as the most significant digit,
/// so index 0 is the all-identity string.
class PauliString {
 public:
  PauliString(int n, std::uint64_t index) : n_(n), index_(index) {
    detail::require(n_ >= 1 && n_ <= 16, "Pauli string length out of range");
    detail::require(index_ < pauli_count(n_), "Pauli index out of range");
  }

  static PauliString identity(int n) { return PauliString(n, 0); }

  static PauliString from_letters(std::string_view letters) {
    detail::require(!letters.empty(), "empty Pauli string");
    std::uint64_t idx = 0;
    for (char c : letters) {
      int digit = -1;
      switch (c) {
        case 'I': case 'i': digit = 0; break;
        case 'X': case 'x': digit = 1; break;
        case 'Y': case 'y': digit = 2; break;
        case 'Z': case 'z': digit = 3; break;
        default: break;
      }
      detail::require(digit >= 0, std::string("invalid Pauli letter '") + c + "'");
      idx = idx * 4 + static_cast<std::uint64_t>(digit);
    }
    return PauliString(static_cast<int>(letters.size()), idx);
  }

  int qubits() const { return n_; }
  std::uint64_t index() const { return index_; }

  PauliLetter letter(int q) const {
    detail::require(q >= 0 && q < n_, "qubit out of range");
    return static_cast<PauliLetter>((index_ >> (2 * (n_ - 1 - q))) & 3u);
  }

  std::string letters() const {
    std::string s(static_cast<std::size_t>(n_), 'I');
    for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = to_char(letter(q));
    return s;
  }

  /// Number of non-identity letters.
  int weight() const {
    int w = 0;
    for (int q = 0; q < n_; ++q) w += letter(q) != PauliLetter::I;
    return w;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_;
  std::uint64_t index_;
};

/// A Pauli string times a phase i^k, k in {0,1,2,3}.
struct PhasedPauli {
  PauliString pauli;
  int phase_power = 0;

  Complex phase() const {
    static constexpr std::array<Complex, 4> kPhases = {Complex(1, 0), Complex(0, 1),
                                                       Complex(-1, 0), Complex(0, -1)};
    return kPhases[static_cast<std::size_t>(phase_power & 3)];
  }

  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;
};

/// Group product a*b with its phase.
///
/// Per qubit the letter of the product is the XOR of the two codes, and two
/// distinct non-identity letters pick up +i on the cyclic order X->Y->Z.
inline PhasedPauli pauli_mul(const PauliString& a, const PauliString& b) {
  detail::require(a.qubits() == b.qubits(), "pauli_mul: qubit count mismatch");
  int power = 0;
  for (int q = 0; q < a.qubits(); ++q) {
    const int x = static_cast<int>(a.letter(q));
    const int y = static_cast<int>(b.letter(q));
    if (x == 0 || y == 0 || x == y) continue;
    power += ((y - x + 3) % 3 == 1) ? 1 : 3;
  }
  return {PauliString(a.qubits(), a.index() ^ b.index()), power & 3};
}

inline PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b) {
  PhasedPauli p = pauli_mul(a.pauli, b.pauli);
  p.phase_power = (p.phase_power + a.phase_power + b.phase_power) & 3;
  return p;
}

/// Single-qubit Pauli matrix S_I, S_X, S_Y or S_Z.
inline CMatrix pauli_matrix(PauliLetter p) {
  CMatrix m(2, 2);
  const Complex i(0, 1);
  switch (p) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << 0, -i, i, 0; break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

template <class Derived1, class Derived2>
auto kron(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using Scalar = typename Derived1::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Dense 2^n x 2^n matrix of a Pauli string (qubit 0 is the leftmost factor).
inline CMatrix pauli_matrix(const PauliString& p) {
  CMatrix m = pauli_matrix(p.letter(0));
  for (int q = 1; q < p.qubits(); ++q) m = kron(m, pauli_matrix(p.letter(q)));
  return m;
}

/// All 4^n Pauli matrices in canonical order.
inline std::vector<CMatrix> pauli_basis(int n) {
  std::vector<CMatrix> out;
  out.reserve(pauli_count(n));
  for (std::uint64_t i = 0; i < pauli_count(n); ++i) out.push_back(pauli_matrix(PauliString(n, i)));
  return out;
}

/// PTM of conjugation by a Pauli string: diagonal with entries +-1.
///
/// Entry j is +1 when P_j commutes with p and -1 otherwise.
inline PTMChannel pauli_ptm(const PauliString& p) {
  const int n = p.qubits();
  const auto d = static_cast<Eigen::Index>(pauli_count(n));
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const PauliString s(n, static_cast<std::uint64_t>(j));
    int anticommuting = 0;
    for (int q = 0; q < n; ++q) {
      const auto a = p.letter(q);
      const auto b = s.letter(q);
      anticommuting += (a != PauliLetter::I && b != PauliLetter::I && a != b);
    }
    m(j, j) = (anticommuting % 2 == 0) ? 1.0 : -1.0;
  }
  return PTMChannel(n, std::move(m), {pauli_matrix(p)});
}

namespace detail {

inline int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  require(dim >= 2 && (Eigen::Index{1} << n) == dim,
          "matrix dimension " + std::to_string(dim) + " is not a power of 2");
  return n;
}

// Tr{A B} without forming the product.
inline Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

}  // namespace detail

/// PTM of the operator-sum map rho -> sum_k K_k rho K_k^dagger.
///
/// [C]_{ij} = 2^-n Tr{S_i sum_k K_k S_j K_k^dagger}. An imaginary residue up to
/// 1e-12 is discarded; anything larger means the Kraus set is not a valid map.
inline PTMChannel ptm_of_kraus(std::span<const CMatrix> kraus) {
  detail::require(!kraus.empty(), "ptm_of_kraus: empty Kraus set");
  const Eigen::Index h = kraus.front().rows();
  for (const auto& k : kraus) {
    detail::require(k.rows() == h && k.cols() == h, "ptm_of_kraus: Kraus operators must be square "
                                                    "and of equal dimension");
  }
  const int n = detail::qubits_for_dim(h);
  detail::require_qubits(n);
  const auto paulis = pauli_basis(n);
  const auto d = static_cast<Eigen::Index>(paulis.size());
  const double scale = 1.0 / static_cast<double>(h);

  Matrix m(d, d);
  double worst_imag = 0.0;
  CMatrix image(h, h);
  for (Eigen::Index j = 0; j < d; ++j) {
    image.setZero();
    for (const auto& k : kraus) image.noalias() += k * paulis[static_cast<std::size_t>(j)] * k.adjoint();
    for (Eigen::Index i = 0; i < d; ++i) {
      const Complex v = scale * detail::trace_of_product(paulis[static_cast<std::size_t>(i)], image);
      worst_imag = std::max(worst_imag, std::abs(v.imag()));
      m(i, j) = v.real();
    }
  }
  if (worst_imag > 1e-12) {
    throw InvalidArgument("ptm_of_kraus: PTM has imaginary residue " + std::to_string(worst_imag) +
                          "; not a valid Kraus set");
  }
  return PTMChannel(n, std::move(m), std::vector<CMatrix>(kraus.begin(), kraus.end()));
}

inline PTMChannel ptm_of_kraus(std::initializer_list<CMatrix> kraus) {
  return ptm_of_kraus(std::span<const CMatrix>(kraus.begin(), kraus.size()));
}

inline PTMChannel ptm_of_unitary(const CMatrix& u) { return ptm_of_kraus({u}); }

/// Single-qubit Hadamard-transform block; column c is the PTM diagonal of Pauli c.
inline Matrix hadamard_block() {
  Matrix h(4, 4);
  h << 1, 1, 1, 1,
       1, 1, -1, -1,
       1, -1, 1, -1,
       1, -1, -1, 1;
  return h;
}

/// H_n = H_1^{(x)n}; satisfies H_n H_n = 4^n I.
inline Matrix hadamard_matrix(int n) {
  detail::require(n >= 1, "hadamard_matrix: n must be >= 1");
  Matrix h = hadamard_block();
  for (int q = 1; q < n; ++q) h = kron(h, hadamard_block());
  return h;
}

/// In-place fast transform v <- H_n v, length 4^n.
inline void hadamard_transform(std::span<double> v) {
  const std::size_t size = v.size();
  detail::require(size >= 4 && (size & (size - 1)) == 0 && (std::countr_zero(size) % 2 == 0),
                  "hadamard_transform: length must be 4^n");
  for (std::size_t stride = 1; stride < size; stride *= 4) {
    for (std::size_t base = 0; base < size; base += 4 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t i = base + off;
        const double a = v[i], b = v[i + stride], c = v[i + 2 * stride], e = v[i + 3 * stride];
        v[i] = a + b + c + e;
        v[i + stride] = a + b - c - e;
        v[i + 2 * stride] = a - b + c - e;
        v[i + 3 * stride] = a - b - c + e;
      }
    }
  }
}

inline Vector hadamard_transform(Vector v) {
  hadamard_transform(std::span<double>(v.data(), static_cast<std::size_t>(v.size())));
  return v;
}

/// Column-stacking vectorization.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> vec(const Eigen::MatrixBase<Derived>& m) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> tmp = m;
  return Eigen::Map<const Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>>(tmp.data(),
                                                                                      tmp.size());
}

inline Matrix unvec(const Vector& v, Eigen::Index dim) {
  detail::require(dim > 0 && v.size() == dim * dim,
                  "unvec: length " + std::to_string(v.size()) + " is not " + std::to_string(dim) + "^2");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

inline Matrix unvec(const Vector& v) {
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  return unvec(v, dim);
}

/// PTM coordinates of a density matrix: x_i = Tr{S_i rho} / sqrt(2^n).
struct DensityVector {
  int n = 1;
  Vector x;
};

inline DensityVector state_to_vector(const CMatrix& rho) {
  detail::require(rho.rows() == rho.cols(), "state_to_vector: density matrix must be square");
  const int n = detail::qubits_for_dim(rho.rows());
  detail::require_qubits(n);
  const Complex tr = rho.trace();
  detail::require(std::abs(tr - Complex(1.0, 0.0)) <= 1e-10,
                  "state_to_vector: trace must be 1, got " + std::to_string(tr.real()));
  const auto paulis = pauli_basis(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(hilbert_dim(n)));
  Vector x(static_cast<Eigen::Index>(paulis.size()));
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    x(static_cast<Eigen::Index>(i)) = norm * detail::trace_of_product(paulis[i], rho).real();
  }
  return {n, std::move(x)};
}

/// |0...0><0...0| in PTM coordinates: 1/sqrt(2^n) on every string made of I and Z only.
inline DensityVector zero_state_vector(int n) {
  detail::require_qubits(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(hilbert_dim(n)));
  Vector x = Vector::Zero(static_cast<Eigen::Index>(pauli_count(n)));
  for (std::uint64_t i = 0; i < pauli_count(n); ++i) {
    const PauliString p(n, i);
    bool diagonal = true;
    for (int q = 0; q < n; ++q) {
      const auto l = p.letter(q);
      diagonal = diagonal && (l == PauliLetter::I || l == PauliLetter::Z);
    }
    if (diagonal) x(static_cast<Eigen::Index>(i)) = norm;
  }
  return {n, std::move(x)};
}

}  // namespace qemsof

#endif  // QEMSOF_PAULI_HPP_

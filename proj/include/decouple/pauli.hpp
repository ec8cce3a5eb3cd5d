// Copyright 2026 The Decouple Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace decouple {

/// Single-site Pauli letter. The numeric value packs (x, z) as x | (z << 1).
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char letter_char(Letter l);

/// Largest register for which dense matrices are produced.
inline constexpr int kMaxDenseQubits = 12;
/// Largest register representable by the bitmask encoding.
inline constexpr int kMaxQubits = 64;

/// Nonzero entry of a monomial (one nonzero per column) matrix.
struct MonomialEntry {
  std::uint64_t row;
  std::complex<double> value;
};

/// Element of the n-qubit Pauli group: i^phase times a tensor product of
/// {I, X, Y, Z}. Letters live in two bitmasks and the phase is an exponent
/// mod 4, so all products are exact.
///
/// Qubits are indexed 0..n-1 in code and 1..n in text. Qubit 0 is the most
/// significant factor of the Kronecker product (leftmost in X ⊗ I ⊗ ...).
class PauliString {
 public:
  explicit PauliString(int n_qubits);

  static PauliString identity(int n_qubits) { return PauliString(n_qubits); }
  static PauliString single(int n_qubits, int qubit, Letter letter);
  /// Dense letter form such as "IXZY" (one character per qubit, qubit 0 first).
  static PauliString from_letters(std::string_view letters, int phase = 0);

  /// Parses the text grammar "<phase> <sites>", e.g. "+1 Z3Z4Y5" or "-i X1".
  /// Phase is one of +1, +i, -1, -i; sites use 1-based indices; "I" alone
  /// denotes the identity.
  static PauliString parse(std::string_view text, int n_qubits);
  /// Builds from Kronecker-order masks (see x_mask()).
  static PauliString from_masks(int n_qubits, std::uint64_t x, std::uint64_t z,
                                int phase = 0);

  int n_qubits() const { return n_qubits_; }
  /// Exponent k of the i^k prefactor, in [0, 4).
  int phase() const { return phase_; }
  std::complex<double> phase_value() const;

  Letter letter(int qubit) const;
  void set_letter(int qubit, Letter letter);
  PauliString with_phase(int phase) const;

  /// Number of non-identity sites.
  int weight() const;
  bool is_identity() const { return x_ == 0 && z_ == 0 && phase_ == 0; }
  bool letters_identity() const { return x_ == 0 && z_ == 0; }
  bool same_letters(const PauliString& other) const {
    return x_ == other.x_ && z_ == other.z_;
  }
  bool commutes_with(const PauliString& other) const;

  PauliString dagger() const;

  /// Masks in Kronecker bit order: qubit q sits at bit (n_qubits - 1 - q).
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  /// Image of computational basis state |column>.
  MonomialEntry apply(std::uint64_t column) const;

  Eigen::MatrixXcd to_matrix() const;

  std::string to_string() const;
  /// Dense letter form without phase, e.g. "IXZY".
  std::string letters() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_qubits_ == b.n_qubits_ && a.x_ == b.x_ && a.z_ == b.z_ &&
           a.phase_ == b.phase_;
  }

 private:
  std::uint64_t bit(int qubit) const;

  int n_qubits_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

/// Exact product a·b with tracked phase (XY = iZ, YZ = iX, ZX = iY).
PauliString pauli_mul(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return pauli_mul(a, b);
}

/// g† · term · g. Letters of the result equal those of term; only the sign
/// can change, and the phase of g drops out.
PauliString conjugate_term(const PauliString& g, const PauliString& term);

/// Dense matrix of p, guarded at kMaxDenseQubits.
Eigen::MatrixXcd pauli_to_matrix(const PauliString& p);

/// Hash on letters only (phase ignored); useful for projective lookups.
struct LetterHash {
  std::size_t operator()(const PauliString& p) const noexcept;
};
struct LetterEqual {
  bool operator()(const PauliString& a, const PauliString& b) const noexcept {
    return a.same_letters(b);
  }
};

}  // namespace decouple

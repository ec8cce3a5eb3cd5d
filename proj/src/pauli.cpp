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

#include "decouple/pauli.hpp"

#include <bit>
#include <cctype>
#include <sstream>

#include "decouple/errors.hpp"

namespace decouple {

namespace {

constexpr std::complex<double> kPhases[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("Pauli strings act on " +
                         std::to_string(a.n_qubits()) + " and " +
                         std::to_string(b.n_qubits()) + " qubits");
  }
}

Letter letter_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I':
      return Letter::I;
    case 'X':
      return Letter::X;
    case 'Y':
      return Letter::Y;
    case 'Z':
      return Letter::Z;
    default:
      throw ConfigError(std::string("invalid Pauli letter '") + c + "'");
  }
}

int parse_phase(std::string_view token) {
  if (token == "+1" || token == "1") return 0;
  if (token == "+i" || token == "i") return 1;
  if (token == "-1") return 2;
  if (token == "-i") return 3;
  throw ConfigError("invalid Pauli phase '" + std::string(token) + "'");
}

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I:
      return 'I';
    case Letter::X:
      return 'X';
    case Letter::Y:
      return 'Y';
    case Letter::Z:
      return 'Z';
  }
  return '?';
}

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ResourceError("Pauli strings support 1.." +
                        std::to_string(kMaxQubits) + " qubits, got " +
                        std::to_string(n_qubits));
  }
}

PauliString PauliString::single(int n_qubits, int qubit, Letter letter) {
  PauliString p(n_qubits);
  p.set_letter(qubit, letter);
  return p;
}

PauliString PauliString::from_masks(int n_qubits, std::uint64_t x,
                                    std::uint64_t z, int phase) {
  PauliString p(n_qubits);
  const std::uint64_t valid =
      n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
  if ((x | z) & ~valid) {
    throw DimensionError("Pauli masks exceed " + std::to_string(n_qubits) +
                         " qubits");
  }
  p.x_ = x;
  p.z_ = z;
  p.phase_ = ((phase % 4) + 4) % 4;
  return p;
}

PauliString PauliString::from_letters(std::string_view letters, int phase) {
  PauliString p(static_cast<int>(letters.size()));
  for (std::size_t q = 0; q < letters.size(); ++q) {
    p.set_letter(static_cast<int>(q), letter_from_char(letters[q]));
  }
  p.phase_ = ((phase % 4) + 4) % 4;
  return p;
}

PauliString PauliString::parse(std::string_view text, int n_qubits) {
  std::istringstream in{std::string(text)};
  std::string phase_token;
  if (!(in >> phase_token)) throw ConfigError("empty Pauli string");
  PauliString p(n_qubits);
  p.phase_ = parse_phase(phase_token);

  std::string rest;
  std::string chunk;
  while (in >> chunk) rest += chunk;
  if (rest.empty()) throw ConfigError("Pauli string '" + std::string(text) +
                                      "' has no sites (use 'I' for identity)");
  if (rest == "I" || rest == "i") return p;

  std::size_t pos = 0;
  while (pos < rest.size()) {
    const Letter l = letter_from_char(rest[pos++]);
    std::size_t start = pos;
    while (pos < rest.size() &&
           std::isdigit(static_cast<unsigned char>(rest[pos]))) {
      ++pos;
    }
    if (start == pos) {
      throw ConfigError("missing qubit index in '" + std::string(text) + "'");
    }
    const int site = std::stoi(rest.substr(start, pos - start));
    if (site < 1 || site > n_qubits) {
      throw DimensionError("qubit index " + std::to_string(site) +
                           " outside 1.." + std::to_string(n_qubits));
    }
    if (p.letter(site - 1) != Letter::I) {
      throw ConfigError("qubit " + std::to_string(site) + " repeated in '" +
                        std::string(text) + "'");
    }
    if (l == Letter::I) continue;
    p.set_letter(site - 1, l);
  }
  return p;
}

std::uint64_t PauliString::bit(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw DimensionError("qubit " + std::to_string(qubit) + " outside 0.." +
                         std::to_string(n_qubits_ - 1));
  }
  return std::uint64_t{1} << (n_qubits_ - 1 - qubit);
}

std::complex<double> PauliString::phase_value() const {
  return kPhases[phase_];
}

Letter PauliString::letter(int qubit) const {
  const std::uint64_t b = bit(qubit);
  const unsigned v = ((x_ & b) ? 1u : 0u) | ((z_ & b) ? 2u : 0u);
  return static_cast<Letter>(v);
}

void PauliString::set_letter(int qubit, Letter letter) {
  const std::uint64_t b = bit(qubit);
  const auto v = static_cast<unsigned>(letter);
  x_ = (v & 1u) ? (x_ | b) : (x_ & ~b);
  z_ = (v & 2u) ? (z_ | b) : (z_ & ~b);
}

PauliString PauliString::with_phase(int phase) const {
  PauliString p = *this;
  p.phase_ = ((phase % 4) + 4) % 4;
  return p;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

bool PauliString::commutes_with(const PauliString& other) const {
  require_same_size(*this, other);
  const int anti = std::popcount((x_ & other.z_) ^ (z_ & other.x_));
  return anti % 2 == 0;
}

PauliString PauliString::dagger() const { return with_phase(4 - phase_); }

MonomialEntry PauliString::apply(std::uint64_t column) const {
  // Y = iXZ, so the operator is i^(phase + #Y) X^x Z^z.
  const int exponent =
      phase_ + std::popcount(x_ & z_) + 2 * std::popcount(column & z_);
  return {column ^ x_, kPhases[exponent & 3]};
}

Eigen::MatrixXcd PauliString::to_matrix() const { return pauli_to_matrix(*this); }

std::string PauliString::to_string() const {
  static constexpr const char* kNames[4] = {"+1", "+i", "-1", "-i"};
  std::string out = kNames[phase_];
  out += ' ';
  if (letters_identity()) return out + "I";
  for (int q = 0; q < n_qubits_; ++q) {
    const Letter l = letter(q);
    if (l == Letter::I) continue;
    out += letter_char(l);
    out += std::to_string(q + 1);
  }
  return out;
}

std::string PauliString::letters() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(n_qubits_));
  for (int q = 0; q < n_qubits_; ++q) out += letter_char(letter(q));
  return out;
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  const std::uint64_t ax = a.x_mask(), az = a.z_mask();
  const std::uint64_t bx = b.x_mask(), bz = b.z_mask();
  const std::uint64_t a_x = ax & ~az, a_y = ax & az, a_z = az & ~ax;
  const std::uint64_t b_x = bx & ~bz, b_y = bx & bz, b_z = bz & ~bx;
  // Cyclic pairs XY, YZ, ZX contribute +i; the reversed pairs contribute -i.
  const std::uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
  const std::uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
  const int phase = a.phase() + b.phase() + std::popcount(plus) -
                    std::popcount(minus);

  return PauliString::from_masks(a.n_qubits(), ax ^ bx, az ^ bz, phase);
}

PauliString conjugate_term(const PauliString& g, const PauliString& term) {
  require_same_size(g, term);
  return g.commutes_with(term) ? term : term.with_phase(term.phase() + 2);
}

Eigen::MatrixXcd pauli_to_matrix(const PauliString& p) {
  if (p.n_qubits() > kMaxDenseQubits) {
    throw ResourceError("dense Pauli matrix limited to " +
                        std::to_string(kMaxDenseQubits) + " qubits, got " +
                        std::to_string(p.n_qubits()));
  }
  const std::uint64_t dim = std::uint64_t{1} << p.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::uint64_t c = 0; c < dim; ++c) {
    const MonomialEntry e = p.apply(c);
    m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(c)) = e.value;
  }
  return m;
}

std::size_t LetterHash::operator()(const PauliString& p) const noexcept {
  std::uint64_t h = p.x_mask() * 0x9E3779B97F4A7C15ULL;
  h ^= p.z_mask() + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(p.n_qubits()));
}

}  // namespace decouple

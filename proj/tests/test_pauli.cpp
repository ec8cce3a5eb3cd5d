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

#include <random>

#include "decouple/errors.hpp"
#include "decouple/groups.hpp"
#include "decouple/pauli.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace decouple;

namespace {

PauliString random_string(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letter(0, 3), phase(0, 3);
  PauliString p(n);
  for (int q = 0; q < n; ++q) p.set_letter(q, static_cast<Letter>(letter(rng)));
  return p.with_phase(phase(rng));
}

oracle::Mat dense_of(const PauliString& p) {
  return p.phase_value() * oracle::letters_op(p.letters());
}

}  // namespace

TEST_CASE("single-site products follow XY = iZ, YZ = iX, ZX = iY") {
  const auto x = PauliString::from_letters("X");
  const auto y = PauliString::from_letters("Y");
  const auto z = PauliString::from_letters("Z");
  CHECK(x * y == PauliString::from_letters("Z", 1));
  CHECK(y * z == PauliString::from_letters("X", 1));
  CHECK(z * x == PauliString::from_letters("Y", 1));
  // XZ = -iY
  CHECK(x * z == PauliString::from_letters("Y", 3));
  CHECK(x * x == PauliString::identity(1));
}

TEST_CASE("g times its adjoint is the +1 identity for every G8 element") {
  const GroupPtr group = g8_group();
  for (const auto& g : group->elements()) {
    for (int ph = 0; ph < 4; ++ph) {
      const PauliString p = g.with_phase(ph);
      const PauliString e = p * p.dagger();
      CHECK(e.letters_identity());
      CHECK(e.phase() == 0);
    }
  }
}

TEST_CASE("G8 product matches the dense-matrix decomposition") {
  // Frozen from a 256x256 matrix product decomposed back into letters.
  const auto a = PauliString::parse("+1 Z3Z4Y5Y6X7X8", 8);
  const auto b = PauliString::parse("+1 Z2Y3X4Z6Y7X8", 8);
  CHECK((a * b).to_string() == "-1 Z2X3Y4Y5X6Z7");
  CHECK((dense_of(a) * dense_of(b) - dense_of(a * b)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pauli_mul rejects mismatched sizes") {
  CHECK_THROWS_AS(PauliString(2) * PauliString(3), DimensionError);
  CHECK_THROWS_AS(conjugate_term(PauliString(2), PauliString(3)), DimensionError);
}

TEST_CASE("dense matrices") {
  SUBCASE("Z is diag(1, -1)") {
    const auto m = pauli_to_matrix(PauliString::from_letters("Z"));
    CHECK(m(0, 0) == std::complex<double>(1, 0));
    CHECK(m(1, 1) == std::complex<double>(-1, 0));
    CHECK(m(0, 1) == std::complex<double>(0, 0));
  }
  SUBCASE("X2 on two qubits is I (x) X") {
    const auto m = pauli_to_matrix(PauliString::single(2, 1, Letter::X));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(0, 1) = expected(1, 0) = expected(2, 3) = expected(3, 2) = 1.0;
    CHECK(m == expected);
  }
  SUBCASE("non-identity strings are traceless and unitary") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
      PauliString p = random_string(4, rng);
      if (p.letters_identity()) continue;
      const auto m = pauli_to_matrix(p);
      CHECK(std::abs(m.trace()) == 0.0);
      CHECK((m.adjoint() * m - Eigen::MatrixXcd::Identity(16, 16)).norm() < 1e-14);
    }
  }
  SUBCASE("guard above 12 qubits") {
    CHECK_THROWS_AS(pauli_to_matrix(PauliString(13)), ResourceError);
  }
}

TEST_CASE("to_matrix is a homomorphism including phases") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < 40; ++k) {
      const auto a = random_string(n, rng);
      const auto b = random_string(n, rng);
      CHECK((pauli_to_matrix(a * b) - pauli_to_matrix(a) * pauli_to_matrix(b))
                .cwiseAbs()
                .maxCoeff() == 0.0);
      CHECK((pauli_to_matrix(a) - dense_of(a)).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("associativity: exhaustive on one qubit, sampled up to eight") {
  std::vector<PauliString> all;
  for (int l = 0; l < 4; ++l) {
    for (int ph = 0; ph < 4; ++ph) {
      all.push_back(PauliString::single(1, 0, static_cast<Letter>(l)).with_phase(ph));
    }
  }
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all) CHECK((a * b) * c == a * (b * c));

  std::mt19937_64 rng(7);
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k < 20; ++k) {
      const auto a = random_string(n, rng), b = random_string(n, rng),
                 c = random_string(n, rng);
      const PauliString left = (a * b) * c;
      CHECK(left == a * (b * c));
      if (n <= 6) {
        CHECK((dense_of(a) * dense_of(b) * dense_of(c) - dense_of(left))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
      }
    }
  }
}

TEST_CASE("conjugate_term") {
  SUBCASE("XZX = -Z") {
    const auto r = conjugate_term(PauliString::from_letters("X"),
                                  PauliString::from_letters("Z"));
    CHECK(r == PauliString::from_letters("Z", 2));
  }
  SUBCASE("X2 flips Z1Z2") {
    const auto r = conjugate_term(PauliString::single(2, 1, Letter::X),
                                  PauliString::from_letters("ZZ"));
    CHECK(r == PauliString::from_letters("ZZ", 2));
  }
  SUBCASE("identity term is fixed") {
    std::mt19937_64 rng(5);
    const auto g = random_string(5, rng);
    CHECK(conjugate_term(g, PauliString(5)) == PauliString(5));
  }
  SUBCASE("independent of the phase of g and matches g† t g densely") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
      const auto g = random_string(4, rng);
      const auto t = random_string(4, rng);
      const auto r = conjugate_term(g, t);
      CHECK(r.same_letters(t));
      CHECK((r.phase() - t.phase() + 4) % 2 == 0);
      for (int ph = 0; ph < 4; ++ph) CHECK(conjugate_term(g.with_phase(ph), t) == r);
      CHECK((dense_of(g).adjoint() * dense_of(t) * dense_of(g) - dense_of(r))
                .cwiseAbs()
                .maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("text grammar") {
  const auto p = PauliString::parse("+1 Z3Z4Y5Y6X7X8", 8);
  CHECK(p.letters() == "IIZZYYXX");
  CHECK(p.to_string() == "+1 Z3Z4Y5Y6X7X8");
  CHECK(PauliString(3).to_string() == "+1 I");
  CHECK(PauliString::parse("+1 I", 3) == PauliString(3));
  CHECK(PauliString::parse("-i X1 Y3", 3).to_string() == "-i X1Y3");

  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const auto q = random_string(1 + k % 9, rng);
    CHECK(PauliString::parse(q.to_string(), q.n_qubits()) == q);
  }

  CHECK_THROWS_AS(PauliString::parse("+1 X9", 8), DimensionError);
  CHECK_THROWS_AS(PauliString::parse("+2 X1", 8), ConfigError);
  CHECK_THROWS_AS(PauliString::parse("+1 X1X1", 8), ConfigError);
  CHECK_THROWS_AS(PauliString::parse("+1 Q1", 8), ConfigError);
  CHECK_THROWS_AS(PauliString::parse("", 8), ConfigError);
}

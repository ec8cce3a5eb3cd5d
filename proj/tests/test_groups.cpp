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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "decouple/errors.hpp"
#include "decouple/groups.hpp"
#include "decouple/hamiltonian.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace decouple;

namespace {

oracle::Mat dense_of(const PauliString& p) {
  return p.phase_value() * oracle::letters_op(p.letters());
}

oracle::Mat dense_average(const std::vector<PauliString>& frames, const oracle::Mat& h) {
  oracle::Mat avg = oracle::Mat::Zero(h.rows(), h.cols());
  for (const auto& g : frames) {
    const oracle::Mat m = dense_of(g);
    avg += m.adjoint() * h * m;
  }
  return avg / static_cast<double>(frames.size());
}

/// -i/(2 T_c) Σ_{n>m}[H_n, H_m] dt², straight from the definition.
double dense_second_order(const std::vector<PauliString>& frames, const oracle::Mat& h,
                          double dt) {
  std::vector<oracle::Mat> toggled;
  for (const auto& g : frames) {
    const oracle::Mat m = dense_of(g);
    toggled.push_back(m.adjoint() * h * m);
  }
  oracle::Mat sum = oracle::Mat::Zero(h.rows(), h.cols());
  for (std::size_t n = 0; n < toggled.size(); ++n) {
    for (std::size_t m = 0; m < n; ++m) {
      sum += toggled[n] * toggled[m] - toggled[m] * toggled[n];
    }
  }
  const double tc = dt * static_cast<double>(frames.size());
  oracle::Mat c = oracle::cd(0, -dt * dt / (2.0 * tc)) * sum;
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(0.5 * (c + c.adjoint()));
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

oracle::Mat fig2_hamiltonian() {
  return oracle::heisenberg(8, [](int i, int j) {
    return std::pow(static_cast<double>(std::abs(i - j)), -3.0);
  });
}

oracle::Mat nn_heisenberg(int n) {
  return oracle::heisenberg(n, [](int i, int j) { return std::abs(i - j) == 1 ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("nested Pauli group") {
  const auto g2 = nested_pauli_group(2);
  REQUIRE(g2->size() == 4);
  CHECK(g2->elements()[0].to_string() == "+1 I");
  CHECK(g2->elements()[1].to_string() == "+1 X2");
  CHECK(g2->elements()[2].to_string() == "+1 Z2");
  CHECK(g2->elements()[3].to_string() == "+1 Y2");
  CHECK(nested_pauli_group(3)->size() == 16);
  CHECK(nested_pauli_group(5)->size() == 256);
  CHECK_THROWS_AS(nested_pauli_group(1), ResourceError);
  CHECK_THROWS_AS(nested_pauli_group(9), ResourceError);

  // Every σ_i^a σ_j^b with j >= 2 averages to zero over the N = 3 group.
  const auto g3 = nested_pauli_group(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = std::max(1, i + 1); j < 3; ++j) {
      for (char a : {'X', 'Y', 'Z'}) {
        for (char b : {'X', 'Y', 'Z'}) {
          const oracle::Mat term = oracle::kron_op(3, {{i, a}, {j, b}});
          CHECK(dense_average(g3->elements(), term).cwiseAbs().maxCoeff() < 1e-15);
        }
      }
    }
  }
}

TEST_CASE("G8") {
  const auto g = g8_group();
  REQUIRE(g->size() == 8);
  CHECK(g->elements()[1].to_string() == "+1 Z3Z4Y5Y6X7X8");
  CHECK(g->elements()[7].to_string() == "+1 X2X3Z5Y6Y7Z8");

  // Closure: every product, formed densely, is ± or ±i times a listed element.
  std::vector<oracle::Mat> dense;
  for (const auto& e : g->elements()) dense.push_back(dense_of(e));
  for (const auto& a : dense) {
    for (const auto& b : dense) {
      const oracle::Mat p = a * b;
      int matches = 0;
      for (const auto& c : dense) {
        const oracle::cd overlap = (c.adjoint() * p).trace() / 256.0;
        if (std::abs(std::abs(overlap) - 1.0) < 1e-12) ++matches;
      }
      CHECK(matches == 1);
    }
  }
  CHECK(is_projectively_closed(g->elements()));

  const oracle::Mat h = fig2_hamiltonian();
  CHECK(oracle::traceless_norm(dense_average(g->elements(), h)) < 1e-10);
  CHECK(verify_first_order(g->elements(), h) < 1e-10);
}

TEST_CASE("collective nearest-neighbour group") {
  const auto g = nn_collective_group(8);
  REQUIRE(g->size() == 4);
  CHECK(g->elements()[1].to_string() == "+1 Z1Z3Z5Z7");
  CHECK(g->elements()[2].letters() == "ZYZYZYZY");
  CHECK(g->elements()[3].to_string() == "+1 Y2Y4Y6Y8");
  CHECK_THROWS_AS(nn_collective_group(5), DomainError);

  const auto g4 = nn_collective_group(4);
  for (int i = 0; i + 1 < 4; ++i) {
    for (char a : {'X', 'Y', 'Z'}) {
      const oracle::Mat term = oracle::kron_op(4, {{i, a}, {i + 1, a}});
      CHECK(dense_average(g4->elements(), term).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  const oracle::Mat next_nearest = oracle::kron_op(4, {{0, 'X'}, {2, 'X'}});
  CHECK(dense_average(g4->elements(), next_nearest).norm() > 0.5);
}

TEST_CASE("group invariants are enforced") {
  CHECK_THROWS_AS(make_group("no-identity", {PauliString::from_letters("X")}), ConfigError);
  CHECK_THROWS_AS(make_group("dup", {PauliString(1), PauliString::from_letters("X"),
                                     PauliString::from_letters("X", 2)}),
                  ConfigError);
  CHECK_THROWS_AS(make_group("open", {PauliString(1), PauliString::from_letters("X"),
                                      PauliString::from_letters("Z")}),
                  ConfigError);
  CHECK(full_pauli_group(3)->size() == 64);
}

TEST_CASE("Gray code path") {
  const auto p2 = gray_code_path(nested_pauli_group(2));
  CHECK(p2.order() == std::vector<std::size_t>{0, 1, 2, 3});

  for (int n : {3, 4, 5}) {
    const auto path = gray_code_path(nested_pauli_group(n));
    const auto frames = path.frames();
    CHECK(frames.front().letters_identity());
    for (std::size_t k = 0; k < frames.size(); ++k) {
      const auto& next = frames[(k + 1) % frames.size()];
      const PauliString pulse = next * frames[k].dagger();
      CHECK(pulse.weight() == 1);
    }
  }
  CHECK_THROWS_AS(gray_code_path(g8_group()), UnsupportedError);
}

TEST_CASE("symmetrized path") {
  const auto path = listed_path(nested_pauli_group(2));
  const auto sym = symmetrize_path(path);
  REQUIRE(sym.size() == 8);
  const char* expected[8] = {"+1 I", "+1 X2", "+1 Z2", "+1 Y2", "+1 Y2", "+1 Z2", "+1 X2", "+1 I"};
  for (std::size_t k = 0; k < 8; ++k) CHECK(sym[k].to_string() == expected[k]);
}

TEST_CASE("first-order verifier") {
  const oracle::Mat h2 = nn_heisenberg(2);
  const auto identity_only = std::vector<PauliString>{PauliString(2)};
  CHECK(verify_first_order(identity_only, h2) ==
        doctest::Approx(oracle::traceless_norm(h2)).epsilon(1e-12));
  CHECK(verify_first_order(nested_pauli_group(2)->elements(), h2) < 1e-12);
  CHECK_THROWS_AS(verify_first_order({}, h2), ConfigError);
  CHECK_THROWS_AS(verify_first_order(identity_only, nn_heisenberg(3)), DimensionError);
}

TEST_CASE("second-order verifier") {
  // The bare two-qubit Heisenberg toggles into mutually commuting terms, so a
  // field is added to make the unsymmetrized term nonzero.
  const oracle::Mat h2 = oracle::heisenberg(2, [](int, int) { return 1.0; }, 0.7);
  const auto path = listed_path(nested_pauli_group(2));
  const double dt = 0.1;

  const double pdd = verify_second_order(path.frames(), h2, dt);
  CHECK(pdd > 1e-3);
  CHECK(pdd == doctest::Approx(dense_second_order(path.frames(), h2, dt)).epsilon(1e-10));
  CHECK(verify_second_order(symmetrize_path(path), h2, dt) <= 1e-12);

  // H commuting with every frame.
  const oracle::Mat zz = oracle::kron_op(2, {{0, 'Z'}, {1, 'Z'}});
  const std::vector<PauliString> z_frames{PauliString(2), PauliString::from_letters("ZZ"),
                                          PauliString::from_letters("IZ")};
  CHECK(verify_second_order(z_frames, zz, dt) == 0.0);

  // Larger symmetrized sequences cancel exactly as well.
  const auto g8 = listed_path(g8_group());
  CHECK(verify_second_order(symmetrize_path(g8), fig2_hamiltonian(), 0.05) <= 1e-12);
  std::mt19937_64 rng(8);
  const auto random = random_path(nested_pauli_group(3), rng);
  CHECK(verify_second_order(symmetrize_path(random), nn_heisenberg(3), 0.02) <= 1e-12);
}

TEST_CASE("frame files") {
  const std::string path = "groups_test_frames.txt";
  {
    std::ofstream out(path);
    out << "# nested N=2\n+1 I\n+1 X2\n\n+1 Z2  # comment\n+1 Y2\n";
  }
  const auto frames = load_frames_file(path, 2);
  REQUIRE(frames.size() == 4);
  CHECK(frames[3].to_string() == "+1 Y2");
  {
    std::ofstream out(path);
    out << "+1 I\n+1 X5\n";
  }
  CHECK_THROWS_AS(load_frames_file(path, 2), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_frames_file("does-not-exist.txt", 2), ConfigError);
}

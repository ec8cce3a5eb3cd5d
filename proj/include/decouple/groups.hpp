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

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "decouple/pauli.hpp"

namespace decouple {

/// Residual tolerance for built-in (exact) decoupling certificates.
inline constexpr double kExactResidualTol = 1e-10;
/// Residual tolerance applied to user-supplied paths.
inline constexpr double kUserPathTol = 1e-8;

/// Projective Pauli group used as a decoupling resource. Element 0 is the
/// identity; elements are distinct up to phase and closed up to phase.
class DecouplingGroup {
 public:
  /// Validates the invariants and throws ConfigError when one fails.
  DecouplingGroup(std::string label, std::vector<PauliString> elements);

  const std::string& label() const { return label_; }
  const std::vector<PauliString>& elements() const { return elements_; }
  const PauliString& operator[](std::size_t k) const { return elements_[k]; }
  std::size_t size() const { return elements_.size(); }
  int n_qubits() const { return elements_.front().n_qubits(); }

 private:
  std::string label_;
  std::vector<PauliString> elements_;
};

using GroupPtr = std::shared_ptr<const DecouplingGroup>;

/// Closure up to phase. Pauli strings modulo phase form a GF(2) vector space,
/// so a duplicate-free set containing the identity is a group exactly when
/// its size equals 2^rank of its symplectic vectors.
bool is_projectively_closed(const std::vector<PauliString>& elements);

/// Ordering of a group's elements used as one DD cycle; order[0] = 0.
class ControlPath {
 public:
  ControlPath(GroupPtr group, std::vector<std::size_t> order);

  const GroupPtr& group() const { return group_; }
  const std::vector<std::size_t>& order() const { return order_; }
  std::size_t size() const { return order_.size(); }
  const PauliString& frame(std::size_t k) const { return (*group_)[order_[k]]; }
  std::vector<PauliString> frames() const;

 private:
  GroupPtr group_;
  std::vector<std::size_t> order_;
};

/// {1, X_q, Z_q, Y_q} on qubits 2..N (1-based) tensored together, identity
/// on qubit 1. The last qubit varies fastest. Requires 2 <= N <= 8.
GroupPtr nested_pauli_group(int n_qubits);

/// The eight-element group for N = 8 in its published order.
GroupPtr g8_group();

/// {1, Z_odd, Z_odd·Y_even, Y_even} for an even chain (1-based parity).
GroupPtr nn_collective_group(int n_qubits);

/// All 4^N Pauli strings (N <= 8); the natural irreducible outer group.
GroupPtr full_pauli_group(int n_qubits);

/// Group built from explicit strings, listed order preserved.
GroupPtr make_group(std::string label, std::vector<PauliString> elements);

/// Path in the group's listed order.
ControlPath listed_path(GroupPtr group);

/// Base-4 reflected Gray code over the nested group: consecutive elements,
/// including the wrap back to the identity, differ on exactly one qubit.
ControlPath gray_code_path(GroupPtr group);

/// Uniformly random ordering with the identity first.
ControlPath random_path(GroupPtr group, std::mt19937_64& rng);

/// Path followed by its reversal (length 2|G|).
std::vector<PauliString> symmetrize_path(const ControlPath& path);

/// Frames from a text file, one Pauli string per line ('#' comments).
std::vector<PauliString> load_frames_file(const std::string& path, int n_qubits);

/// Spectral norm of the traceless part of (1/n) Σ g_n† H g_n.
double verify_first_order(const std::vector<PauliString>& frames,
                          const Eigen::MatrixXcd& h);

/// Spectral norm of the first Magnus correction
///   -i/(2 T_c) Σ_{n>m} [g_n† H g_n, g_m† H g_m] dt²,  T_c = n dt.
/// Counts of ordered frame pairs are accumulated as integers before any
/// matrix work, so palindromic sequences give exactly zero.
double verify_second_order(const std::vector<PauliString>& frames,
                           const Eigen::MatrixXcd& h, double dt);

/// g† M g computed by exact row/column permutation with unit phases.
Eigen::MatrixXcd conjugate_matrix(const PauliString& g, const Eigen::MatrixXcd& m);

}  // namespace decouple

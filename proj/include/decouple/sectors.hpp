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

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "decouple/hamiltonian.hpp"
#include "decouple/pauli.hpp"

namespace decouple {

/// Block-diagonal operator, one dense block per symmetry sector.
using Blocks = std::vector<Eigen::MatrixXcd>;
using SparseBlock = Eigen::SparseMatrix<std::complex<double>>;

/// Action of a Pauli string in a sector basis: block s maps sector s into
/// sector target[s].
struct PauliAction {
  std::vector<std::size_t> target;
  std::vector<SparseBlock> forward;
  std::vector<SparseBlock> backward;  // adjoint of forward, maps target[s] -> s
};

/// Orthonormal real basis adapted to the global parities ΠZ and ΠX.
///
/// Every Pauli term of a Hamiltonian that commutes with one of these
/// parities also commutes with it after conjugation by any Pauli frame
/// (conjugation only flips signs), so every toggled propagator is block
/// diagonal in this basis and the logical propagator stays block diagonal
/// for all protocols. Each basis vector has at most two nonzero entries.
class SectorBasis {
 public:
  /// Uses each parity that commutes with all terms; for odd qubit counts
  /// ΠX and ΠZ anticommute and only ΠZ is kept.
  static SectorBasis for_terms(const TermList& terms);
  static SectorBasis trivial(int n_qubits);
  SectorBasis(int n_qubits, bool use_z_parity, bool use_x_parity);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return dim_; }
  std::size_t sector_count() const { return offsets_.size() - 1; }
  Eigen::Index offset(std::size_t s) const { return offsets_[s]; }
  Eigen::Index sector_size(std::size_t s) const { return offsets_[s + 1] - offsets_[s]; }
  bool uses_z_parity() const { return z_parity_; }
  bool uses_x_parity() const { return x_parity_; }

  /// Diagonal blocks of V^T M V. Off-diagonal blocks are assumed zero.
  Blocks project(const Eigen::MatrixXcd& dense) const;
  /// V B V^T.
  Eigen::MatrixXcd expand(const Blocks& blocks) const;
  /// Max-abs weight of M outside the sector blocks (sanity check).
  double off_block_residual(const Eigen::MatrixXcd& dense) const;

  PauliAction action(const PauliString& g) const;
  Blocks identity() const;

 private:
  struct Entry {
    std::uint64_t index = 0;
    double value = 0.0;
  };
  struct Column {
    std::array<Entry, 2> entries;
    int count = 0;
  };

  std::size_t sector_of_column(Eigen::Index c) const;

  int n_qubits_;
  Eigen::Index dim_;
  bool z_parity_;
  bool x_parity_;
  std::vector<Eigen::Index> offsets_;
  std::vector<Column> columns_;
  /// For each computational index, the basis columns touching it.
  std::vector<Column> rows_;
};

double blocks_trace_abs2(const Blocks& blocks, double dim);
/// Frobenius norm of U†U - 1 over all blocks.
double unitarity_residual(const Blocks& blocks);

}  // namespace decouple

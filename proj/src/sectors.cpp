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

#include "decouple/sectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "decouple/errors.hpp"

namespace decouple {

namespace {

constexpr double kDropTol = 1e-14;

}  // namespace

SectorBasis SectorBasis::for_terms(const TermList& terms) {
  bool z_ok = true;
  bool x_ok = true;
  for (const auto& t : terms.terms) {
    // ΠZ has x = 0, z = all, so it commutes with t iff t has an even number
    // of X/Y sites; ΠX likewise with Z/Y sites.
    if (std::popcount(t.op.x_mask()) % 2 != 0) z_ok = false;
    if (std::popcount(t.op.z_mask()) % 2 != 0) x_ok = false;
  }
  if (terms.n_qubits % 2 != 0 && z_ok && x_ok) x_ok = false;
  return SectorBasis(terms.n_qubits, z_ok, x_ok);
}

SectorBasis SectorBasis::trivial(int n_qubits) {
  return SectorBasis(n_qubits, false, false);
}

SectorBasis::SectorBasis(int n_qubits, bool use_z_parity, bool use_x_parity)
    : n_qubits_(n_qubits), z_parity_(use_z_parity), x_parity_(use_x_parity) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw ResourceError("sector basis limited to 1.." +
                        std::to_string(kMaxDenseQubits) + " qubits");
  }
  if (z_parity_ && x_parity_ && n_qubits % 2 != 0) {
    throw DomainError("ΠX and ΠZ anticommute for an odd qubit count");
  }
  const std::uint64_t d = std::uint64_t{1} << n_qubits;
  const std::uint64_t all = d - 1;
  dim_ = static_cast<Eigen::Index>(d);
  const double r = 1.0 / std::sqrt(2.0);

  // Sector key: (z parity, x sign) flattened to z * 2 + x.
  std::vector<std::vector<Column>> sectors(4);
  for (std::uint64_t b = 0; b < d; ++b) {
    const int zp = z_parity_ ? std::popcount(b) % 2 : 0;
    if (x_parity_) {
      const std::uint64_t partner = b ^ all;
      if (b > partner) continue;
      Column plus, minus;
      plus.entries = {Entry{b, r}, Entry{partner, r}};
      minus.entries = {Entry{b, r}, Entry{partner, -r}};
      plus.count = minus.count = 2;
      sectors[static_cast<std::size_t>(zp * 2)].push_back(plus);
      sectors[static_cast<std::size_t>(zp * 2 + 1)].push_back(minus);
    } else {
      Column c;
      c.entries[0] = Entry{b, 1.0};
      c.count = 1;
      sectors[static_cast<std::size_t>(zp * 2)].push_back(c);
    }
  }
  offsets_.push_back(0);
  for (auto& s : sectors) {
    if (s.empty()) continue;
    for (auto& c : s) columns_.push_back(c);
    offsets_.push_back(static_cast<Eigen::Index>(columns_.size()));
  }
  rows_.assign(d, Column{});
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const Column& col = columns_[c];
    for (int e = 0; e < col.count; ++e) {
      Column& row = rows_[col.entries[static_cast<std::size_t>(e)].index];
      row.entries[static_cast<std::size_t>(row.count++)] =
          Entry{c, col.entries[static_cast<std::size_t>(e)].value};
    }
  }
}

std::size_t SectorBasis::sector_of_column(Eigen::Index c) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), c);
  return static_cast<std::size_t>(it - offsets_.begin() - 1);
}

Blocks SectorBasis::project(const Eigen::MatrixXcd& dense) const {
  if (dense.rows() != dim_ || dense.cols() != dim_) {
    throw DimensionError("matrix does not match the sector basis dimension");
  }
  Blocks out;
  out.reserve(sector_count());
  for (std::size_t s = 0; s < sector_count(); ++s) {
    const Eigen::Index off = offsets_[s];
    const Eigen::Index n = sector_size(s);
    Eigen::MatrixXcd b(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Column& cj = columns_[static_cast<std::size_t>(off + j)];
      for (Eigen::Index i = 0; i < n; ++i) {
        const Column& ci = columns_[static_cast<std::size_t>(off + i)];
        std::complex<double> acc = 0.0;
        for (int a = 0; a < ci.count; ++a) {
          for (int c = 0; c < cj.count; ++c) {
            const Entry& ea = ci.entries[static_cast<std::size_t>(a)];
            const Entry& ec = cj.entries[static_cast<std::size_t>(c)];
            acc += ea.value * ec.value *
                   dense(static_cast<Eigen::Index>(ea.index),
                         static_cast<Eigen::Index>(ec.index));
          }
        }
        b(i, j) = acc;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

Eigen::MatrixXcd SectorBasis::expand(const Blocks& blocks) const {
  if (blocks.size() != sector_count()) {
    throw DimensionError("block count does not match the sector basis");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (std::size_t s = 0; s < sector_count(); ++s) {
    const Eigen::Index off = offsets_[s];
    const Eigen::Index n = sector_size(s);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Column& cj = columns_[static_cast<std::size_t>(off + j)];
      for (Eigen::Index i = 0; i < n; ++i) {
        const Column& ci = columns_[static_cast<std::size_t>(off + i)];
        const std::complex<double> v = blocks[s](i, j);
        for (int a = 0; a < ci.count; ++a) {
          for (int c = 0; c < cj.count; ++c) {
            const Entry& ea = ci.entries[static_cast<std::size_t>(a)];
            const Entry& ec = cj.entries[static_cast<std::size_t>(c)];
            out(static_cast<Eigen::Index>(ea.index),
                static_cast<Eigen::Index>(ec.index)) += ea.value * ec.value * v;
          }
        }
      }
    }
  }
  return out;
}

double SectorBasis::off_block_residual(const Eigen::MatrixXcd& dense) const {
  const Eigen::MatrixXcd back = expand(project(dense));
  return (dense - back).cwiseAbs().maxCoeff();
}

PauliAction SectorBasis::action(const PauliString& g) const {
  if (g.n_qubits() != n_qubits_) {
    throw DimensionError("frame acts on " + std::to_string(g.n_qubits()) +
                         " qubits, basis on " + std::to_string(n_qubits_));
  }
  const std::size_t ns = sector_count();
  PauliAction act;
  act.target.assign(ns, ns);
  act.forward.resize(ns);
  act.backward.resize(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const Eigen::Index off = offsets_[s];
    const Eigen::Index n = sector_size(s);
    std::vector<Eigen::Triplet<std::complex<double>>> triplets;
    triplets.reserve(static_cast<std::size_t>(2 * n));
    for (Eigen::Index j = 0; j < n; ++j) {
      const Column& cj = columns_[static_cast<std::size_t>(off + j)];
      // Accumulate V^T g v_j over at most four (row, column) contributions.
      std::array<std::pair<std::size_t, std::complex<double>>, 4> acc{};
      int used = 0;
      for (int e = 0; e < cj.count; ++e) {
        const Entry& en = cj.entries[static_cast<std::size_t>(e)];
        const MonomialEntry image = g.apply(en.index);
        const Column& row = rows_[image.row];
        for (int k = 0; k < row.count; ++k) {
          const Entry& re = row.entries[static_cast<std::size_t>(k)];
          const std::complex<double> v = re.value * en.value * image.value;
          int slot = 0;
          while (slot < used && acc[static_cast<std::size_t>(slot)].first != re.index) ++slot;
          if (slot == used) acc[static_cast<std::size_t>(used++)] = {re.index, 0.0};
          acc[static_cast<std::size_t>(slot)].second += v;
        }
      }
      for (int k = 0; k < used; ++k) {
        const auto& [col, v] = acc[static_cast<std::size_t>(k)];
        if (std::abs(v) < kDropTol) continue;
        const std::size_t t = sector_of_column(static_cast<Eigen::Index>(col));
        if (act.target[s] == ns) act.target[s] = t;
        if (act.target[s] != t) {
          throw NumericalError("Pauli frame does not map sectors to sectors");
        }
        triplets.emplace_back(static_cast<Eigen::Index>(col) - offsets_[t], j, v);
      }
    }
    const std::size_t t = act.target[s];
    SparseBlock fwd(sector_size(t), n);
    fwd.setFromTriplets(triplets.begin(), triplets.end());
    fwd.makeCompressed();
    act.backward[s] = fwd.adjoint();
    act.forward[s] = std::move(fwd);
  }
  return act;
}

Blocks SectorBasis::identity() const {
  Blocks out;
  for (std::size_t s = 0; s < sector_count(); ++s) {
    out.push_back(Eigen::MatrixXcd::Identity(sector_size(s), sector_size(s)));
  }
  return out;
}

double blocks_trace_abs2(const Blocks& blocks, double dim) {
  std::complex<double> tr = 0.0;
  for (const auto& b : blocks) tr += b.trace();
  return std::norm(tr / dim);
}

double unitarity_residual(const Blocks& blocks) {
  double sq = 0.0;
  for (const auto& b : blocks) {
    Eigen::MatrixXcd e = b.adjoint() * b;
    e.diagonal().array() -= 1.0;
    sq += e.squaredNorm();
  }
  return std::sqrt(sq);
}

}  // namespace decouple

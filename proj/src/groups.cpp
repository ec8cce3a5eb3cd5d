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

#include "decouple/groups.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "decouple/errors.hpp"

namespace decouple {

namespace {

using Symplectic = unsigned __int128;

Symplectic symplectic(const PauliString& p) {
  return (static_cast<Symplectic>(p.x_mask()) << 64) | p.z_mask();
}

int gf2_rank(const std::vector<PauliString>& elements) {
  std::array<Symplectic, 128> pivots{};
  int rank = 0;
  for (const auto& p : elements) {
    Symplectic v = symplectic(p);
    for (int bit = 127; bit >= 0 && v != 0; --bit) {
      if (!((v >> bit) & 1)) continue;
      if (pivots[static_cast<std::size_t>(bit)] == 0) {
        pivots[static_cast<std::size_t>(bit)] = v;
        ++rank;
        break;
      }
      v ^= pivots[static_cast<std::size_t>(bit)];
    }
  }
  return rank;
}

/// Digit d in {0,1,2,3} maps to I, X, Z, Y, matching the Letter encoding.
GroupPtr nested_from_digits(int n_qubits) {
  const int digits = n_qubits - 1;
  const std::size_t count = std::size_t{1} << (2 * digits);
  std::vector<PauliString> elements;
  elements.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    PauliString p(n_qubits);
    for (int i = 0; i < digits; ++i) {
      const auto d = static_cast<unsigned>((k >> (2 * (digits - 1 - i))) & 3u);
      p.set_letter(1 + i, static_cast<Letter>(d));
    }
    elements.push_back(p);
  }
  return make_group("nested" + std::to_string(n_qubits), std::move(elements));
}

}  // namespace

DecouplingGroup::DecouplingGroup(std::string label,
                                 std::vector<PauliString> elements)
    : label_(std::move(label)), elements_(std::move(elements)) {
  if (elements_.empty()) throw ConfigError("group '" + label_ + "' is empty");
  const int n = elements_.front().n_qubits();
  if (!elements_.front().letters_identity()) {
    throw ConfigError("group '" + label_ + "': element 0 must be the identity");
  }
  std::unordered_set<PauliString, LetterHash, LetterEqual> seen;
  for (const auto& e : elements_) {
    if (e.n_qubits() != n) {
      throw DimensionError("group '" + label_ + "' mixes qubit counts");
    }
    if (!seen.insert(e).second) {
      throw ConfigError("group '" + label_ + "' repeats " + e.to_string());
    }
  }
  if (!is_projectively_closed(elements_)) {
    throw ConfigError("group '" + label_ + "' is not closed under products");
  }
}

bool is_projectively_closed(const std::vector<PauliString>& elements) {
  if (elements.empty()) return false;
  std::unordered_set<PauliString, LetterHash, LetterEqual> seen;
  bool has_identity = false;
  for (const auto& e : elements) {
    if (!seen.insert(e).second) return false;
    has_identity = has_identity || e.letters_identity();
  }
  if (!has_identity) return false;
  const int rank = gf2_rank(elements);
  if (rank >= 63) return false;
  return elements.size() == (std::size_t{1} << rank);
}

ControlPath::ControlPath(GroupPtr group, std::vector<std::size_t> order)
    : group_(std::move(group)), order_(std::move(order)) {
  if (!group_) throw ConfigError("control path without a group");
  if (order_.size() != group_->size()) {
    throw ConfigError("path length " + std::to_string(order_.size()) +
                      " differs from group size " +
                      std::to_string(group_->size()));
  }
  std::vector<bool> used(order_.size(), false);
  for (std::size_t k : order_) {
    if (k >= used.size() || used[k]) {
      throw ConfigError("path is not a permutation of the group elements");
    }
    used[k] = true;
  }
  if (order_.front() != 0) throw ConfigError("path must start at the identity");
}

std::vector<PauliString> ControlPath::frames() const {
  std::vector<PauliString> out;
  out.reserve(order_.size());
  for (std::size_t k : order_) out.push_back((*group_)[k]);
  return out;
}

GroupPtr make_group(std::string label, std::vector<PauliString> elements) {
  return std::make_shared<const DecouplingGroup>(std::move(label),
                                                 std::move(elements));
}

GroupPtr nested_pauli_group(int n_qubits) {
  if (n_qubits < 2 || n_qubits > 8) {
    throw ResourceError("nested Pauli group supports 2..8 qubits, got " +
                        std::to_string(n_qubits));
  }
  return nested_from_digits(n_qubits);
}

GroupPtr g8_group() {
  static const char* kElements[8] = {
      "+1 I",
      "+1 Z3Z4Y5Y6X7X8",
      "+1 Z2Y3X4Z6Y7X8",
      "+1 Z2X3Y4Y5X6Z7",
      "+1 Y2Y4X5Z6X7Z8",
      "+1 Y2Z3X4Z5X6Y8",
      "+1 X2Y3Z4X5Z7Y8",
      "+1 X2X3Z5Y6Y7Z8",
  };
  std::vector<PauliString> elements;
  for (const char* e : kElements) elements.push_back(PauliString::parse(e, 8));
  return make_group("g8", std::move(elements));
}

GroupPtr nn_collective_group(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw DomainError("collective nearest-neighbour group needs an even "
                      "qubit count >= 2, got " + std::to_string(n_qubits));
  }
  PauliString z_odd(n_qubits), y_even(n_qubits);
  for (int q = 0; q < n_qubits; q += 2) z_odd.set_letter(q, Letter::Z);
  for (int q = 1; q < n_qubits; q += 2) y_even.set_letter(q, Letter::Y);
  PauliString both = pauli_mul(z_odd, y_even);
  return make_group("nn" + std::to_string(n_qubits),
                    {PauliString(n_qubits), z_odd, both, y_even});
}

GroupPtr full_pauli_group(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 8) {
    throw ResourceError("full Pauli group enumeration supports 1..8 qubits");
  }
  const std::uint64_t count = std::uint64_t{1} << (2 * n_qubits);
  std::vector<PauliString> elements;
  elements.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    elements.push_back(PauliString::from_masks(
        n_qubits, k >> n_qubits, k & ((std::uint64_t{1} << n_qubits) - 1)));
  }
  return make_group("pauli" + std::to_string(n_qubits), std::move(elements));
}

ControlPath listed_path(GroupPtr group) {
  std::vector<std::size_t> order(group->size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return ControlPath(std::move(group), std::move(order));
}

ControlPath gray_code_path(GroupPtr group) {
  const int n = group->n_qubits();
  if (n < 2 || n > 8) throw UnsupportedError("Gray code path needs a nested group");
  const GroupPtr reference = nested_from_digits(n);
  if (reference->elements() != group->elements()) {
    throw UnsupportedError("Gray code path is defined only for the nested "
                           "Pauli group");
  }
  // Reflected base-4 code: each digit value d lists the lower digits forward
  // for even d and backwards for odd d, so the last entry is one step from 0.
  std::vector<std::size_t> order{0};
  for (int level = 1; level < n; ++level) {
    std::vector<std::size_t> next;
    next.reserve(order.size() * 4);
    const std::size_t shift = 2 * static_cast<std::size_t>(level - 1);
    for (std::size_t d = 0; d < 4; ++d) {
      const std::size_t top = d << shift;
      if (d % 2 == 0) {
        for (auto it = order.begin(); it != order.end(); ++it) next.push_back(top | *it);
      } else {
        for (auto it = order.rbegin(); it != order.rend(); ++it) next.push_back(top | *it);
      }
    }
    order = std::move(next);
  }
  return ControlPath(std::move(group), std::move(order));
}

ControlPath random_path(GroupPtr group, std::mt19937_64& rng) {
  std::vector<std::size_t> order(group->size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin() + 1, order.end(), rng);
  return ControlPath(std::move(group), std::move(order));
}

std::vector<PauliString> symmetrize_path(const ControlPath& path) {
  std::vector<PauliString> out = path.frames();
  out.insert(out.end(), out.rbegin(), out.rend());
  return out;
}

std::vector<PauliString> load_frames_file(const std::string& path,
                                          int n_qubits) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open frame file '" + path + "'");
  std::vector<PauliString> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(PauliString::parse(line, n_qubits));
    } catch (const Error& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.empty()) throw ConfigError("frame file '" + path + "' is empty");
  return out;
}

Eigen::MatrixXcd conjugate_matrix(const PauliString& g,
                                  const Eigen::MatrixXcd& m) {
  const Eigen::Index dim = m.rows();
  if (m.cols() != dim || dim != (Eigen::Index{1} << g.n_qubits())) {
    throw DimensionError("matrix of size " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " does not match a " +
                         std::to_string(g.n_qubits()) + "-qubit frame");
  }
  std::vector<MonomialEntry> col(static_cast<std::size_t>(dim));
  for (Eigen::Index c = 0; c < dim; ++c) {
    col[static_cast<std::size_t>(c)] = g.apply(static_cast<std::uint64_t>(c));
  }
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const MonomialEntry& eb = col[static_cast<std::size_t>(b)];
    for (Eigen::Index a = 0; a < dim; ++a) {
      const MonomialEntry& ea = col[static_cast<std::size_t>(a)];
      out(a, b) = std::conj(ea.value) *
                  m(static_cast<Eigen::Index>(ea.row),
                    static_cast<Eigen::Index>(eb.row)) *
                  eb.value;
    }
  }
  return out;
}

namespace {

struct DistinctFrames {
  std::vector<PauliString> frames;
  std::vector<std::size_t> index;  // position -> distinct id
};

DistinctFrames distinct(const std::vector<PauliString>& frames) {
  DistinctFrames out;
  std::unordered_map<PauliString, std::size_t, LetterHash, LetterEqual> ids;
  for (const auto& f : frames) {
    auto [it, inserted] = ids.try_emplace(f, out.frames.size());
    if (inserted) out.frames.push_back(f);
    out.index.push_back(it->second);
  }
  return out;
}

double hermitian_norm(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

double verify_first_order(const std::vector<PauliString>& frames,
                          const Eigen::MatrixXcd& h) {
  if (frames.empty()) throw ConfigError("empty frame sequence");
  const DistinctFrames d = distinct(frames);
  std::vector<double> counts(d.frames.size(), 0.0);
  for (std::size_t id : d.index) counts[id] += 1.0;
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
  for (std::size_t k = 0; k < d.frames.size(); ++k) {
    avg += counts[k] * conjugate_matrix(d.frames[k], h);
  }
  avg /= static_cast<double>(frames.size());
  const std::complex<double> mean_eig = avg.trace() / static_cast<double>(avg.rows());
  avg.diagonal().array() -= mean_eig;
  return hermitian_norm(avg);
}

double verify_second_order(const std::vector<PauliString>& frames,
                           const Eigen::MatrixXcd& h, double dt) {
  if (frames.empty()) throw ConfigError("empty frame sequence");
  const DistinctFrames d = distinct(frames);
  const std::size_t k_count = d.frames.size();
  // pairs[k][l] = #{(n, m) : n > m, frame n = k, frame m = l}
  std::vector<std::vector<long long>> pairs(k_count,
                                            std::vector<long long>(k_count, 0));
  std::vector<long long> seen(k_count, 0);
  for (std::size_t id : d.index) {
    for (std::size_t l = 0; l < k_count; ++l) pairs[id][l] += seen[l];
    ++seen[id];
  }
  std::vector<Eigen::MatrixXcd> toggled;
  toggled.reserve(k_count);
  for (const auto& f : d.frames) toggled.push_back(conjugate_matrix(f, h));

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
  for (std::size_t k = 0; k < k_count; ++k) {
    Eigen::MatrixXcd partner = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
    bool any = false;
    for (std::size_t l = k + 1; l < k_count; ++l) {
      const long long weight = pairs[k][l] - pairs[l][k];
      if (weight == 0) continue;
      partner += static_cast<double>(weight) * toggled[l];
      any = true;
    }
    if (!any) continue;
    sum += toggled[k] * partner - partner * toggled[k];
  }
  const double n = static_cast<double>(frames.size());
  // -i/(2 T_c) · sum · dt² with T_c = n dt.
  Eigen::MatrixXcd correction = std::complex<double>(0.0, -dt / (2.0 * n)) * sum;
  return hermitian_norm(correction);
}

}  // namespace decouple

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

#include "decouple/hamiltonian.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "decouple/errors.hpp"

namespace decouple {

namespace {

constexpr Letter kAxes[3] = {Letter::X, Letter::Y, Letter::Z};

void check_site(int site, int n_qubits) {
  if (site < 0 || site >= n_qubits) {
    throw DomainError("site " + std::to_string(site) + " outside 0.." +
                      std::to_string(n_qubits - 1));
  }
}

double detuning(const HamiltonianSpec& spec, int q) {
  if (spec.detunings.empty()) return 0.0;
  return spec.detunings[static_cast<std::size_t>(q)];
}

void validate(const HamiltonianSpec& spec) {
  if (spec.n_qubits < 1) throw ConfigError("n_qubits must be positive");
  if (!spec.detunings.empty() &&
      spec.detunings.size() != static_cast<std::size_t>(spec.n_qubits)) {
    throw ConfigError("detuning list has " +
                      std::to_string(spec.detunings.size()) +
                      " entries for " + std::to_string(spec.n_qubits) +
                      " qubits");
  }
  if (spec.anisotropy && spec.anisotropy->harmonics < 1) {
    throw ConfigError("anisotropy.harmonics must be positive");
  }
  if (spec.anisotropy && spec.anisotropy->r_lo > spec.anisotropy->r_hi) {
    throw ConfigError("anisotropy.r_lo exceeds anisotropy.r_hi");
  }
}

}  // namespace

bool TermList::time_dependent() const {
  for (const auto& t : terms) {
    if (t.modulated) return true;
  }
  return false;
}

Eigen::MatrixXcd TermList::matrix(double delta) const {
  if (n_qubits > kMaxDenseQubits) {
    throw ResourceError("dense Hamiltonian limited to " +
                        std::to_string(kMaxDenseQubits) + " qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& term : terms) {
    const double c = term.modulated ? term.coeff * delta : term.coeff;
    if (c == 0.0) continue;
    for (std::uint64_t col = 0; col < dim; ++col) {
      const MonomialEntry e = term.op.apply(col);
      h(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(col)) +=
          c * e.value;
    }
  }
  return h;
}

TermList TermList::conjugated(const PauliString& g) const {
  TermList out{n_qubits, {}};
  out.terms.reserve(terms.size());
  for (const auto& t : terms) {
    out.terms.push_back({conjugate_term(g, t.op), t.coeff, t.modulated});
  }
  return out;
}

double coupling_profile(CouplingKind kind, int i, int j, int n_qubits,
                        double strength, double exponent) {
  check_site(i, n_qubits);
  check_site(j, n_qubits);
  if (i == j) throw DomainError("coupling profile undefined for i == j");
  const int dist = std::abs(i - j);
  switch (kind) {
    case CouplingKind::DipolarPowerLaw:
      return strength * std::pow(static_cast<double>(dist), -exponent);
    case CouplingKind::NearestNeighbor:
      return dist == 1 ? strength : 0.0;
    case CouplingKind::ExplicitTable:
      break;
  }
  throw DomainError("explicit tables have no distance profile");
}

std::vector<PairCoupling> coupling_table(const HamiltonianSpec& spec) {
  validate(spec);
  std::vector<PairCoupling> out;
  if (spec.coupling_kind == CouplingKind::ExplicitTable) {
    for (PairCoupling p : spec.table) {
      check_site(p.i, spec.n_qubits);
      check_site(p.j, spec.n_qubits);
      if (p.i == p.j) throw ConfigError("coupling table has a diagonal entry");
      if (p.i > p.j) std::swap(p.i, p.j);
      out.push_back(p);
    }
    return out;
  }
  for (int i = 0; i < spec.n_qubits; ++i) {
    for (int j = i + 1; j < spec.n_qubits; ++j) {
      const double c =
          coupling_profile(spec.coupling_kind, i, j, spec.n_qubits,
                           spec.coupling_strength, spec.coupling_exponent);
      if (c != 0.0) out.push_back({i, j, {c, c, c}});
    }
  }
  return out;
}

AnisotropyRealization sample_anisotropy(const AnisotropyConfig& cfg,
                                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(cfg.r_lo, cfg.r_hi);
  AnisotropyRealization r;
  r.rates.reserve(static_cast<std::size_t>(cfg.harmonics));
  for (int k = 0; k < cfg.harmonics; ++k) r.rates.push_back(dist(rng));
  return r;
}

double anisotropy_delta(double t, const AnisotropyRealization& real,
                        double base_rate) {
  double sum = 0.0;
  for (double r : real.rates) sum += std::sin(base_rate * r * t);
  return sum;
}

TermList hamiltonian_terms(const HamiltonianSpec& spec) {
  validate(spec);
  const int n = spec.n_qubits;
  TermList list{n, {}};
  for (int q = 0; q < n; ++q) {
    const double w = spec.omega + detuning(spec, q);
    if (w != 0.0) {
      list.terms.push_back({PauliString::single(n, q, Letter::Z), w / 2.0});
    }
  }
  for (const PairCoupling& p : coupling_table(spec)) {
    for (int a = 0; a < 3; ++a) {
      PauliString op = PauliString::single(n, p.i, kAxes[a]);
      op.set_letter(p.j, kAxes[a]);
      const bool modulated =
          spec.anisotropy && a == 2 && std::abs(p.i - p.j) == 1;
      if (modulated) {
        list.terms.push_back({op, spec.coupling_strength, true});
      } else if (p.axes[static_cast<std::size_t>(a)] != 0.0) {
        list.terms.push_back({op, p.axes[static_cast<std::size_t>(a)], false});
      }
    }
  }
  return list;
}

BuiltHamiltonian build_hamiltonian(
    const HamiltonianSpec& spec, double t,
    const std::optional<AnisotropyRealization>& real) {
  const TermList list = hamiltonian_terms(spec);
  double delta = 0.0;
  if (spec.anisotropy) {
    if (!real) {
      throw ConfigError(
          "anisotropy configured but no realization of the rates supplied");
    }
    delta = anisotropy_delta(t, *real, spec.anisotropy->base_rate);
  }
  BuiltHamiltonian out;
  for (const auto& term : list.terms) {
    out.terms.emplace_back(term.op,
                           term.modulated ? term.coeff * delta : term.coeff);
  }
  out.matrix = list.matrix(delta);
  return out;
}

RotatingFrame rotating_frame_hamiltonian(const HamiltonianSpec& spec) {
  validate(spec);
  RotatingFrame out{spec, false};
  if (spec.omega == 0.0) return out;
  for (const PairCoupling& p : coupling_table(spec)) {
    if (p.axes[0] != p.axes[1]) {
      out.requires_time_resolved = true;
      return out;
    }
  }
  out.spec.omega = 0.0;
  return out;
}

double hermiticity_residual(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw DimensionError("matrix is not square");
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXcd& h) {
  if (hermiticity_residual(h) > 1e-10) {
    throw ValidationError("spectral_norm expects a Hermitian matrix");
  }
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace decouple

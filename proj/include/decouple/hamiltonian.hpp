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
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "decouple/pauli.hpp"

namespace decouple {

// Energies are in units of the reference coupling J and times in units of
// 1/J, so J = 1 throughout.

enum class CouplingKind { DipolarPowerLaw, NearestNeighbor, ExplicitTable };

/// Per-axis couplings (x, y, z) for the pair (i, j), 0-based, i < j.
struct PairCoupling {
  int i = 0;
  int j = 0;
  std::array<double, 3> axes{0.0, 0.0, 0.0};
};

/// Time-dependent anisotropy Δ(t) = Σ_k sin(base_rate · R_k · t) applied to
/// the z couplings of nearest-neighbour pairs.
struct AnisotropyConfig {
  int harmonics = 5;
  double base_rate = 10.0 * std::numbers::pi;
  double r_lo = 0.9;
  double r_hi = 1.1;
};

struct AnisotropyRealization {
  std::vector<double> rates;
};

struct HamiltonianSpec {
  int n_qubits = 1;
  /// Common Larmor frequency ω.
  double omega = 0.0;
  /// Optional per-qubit offsets δ_i so that ω_i = ω + δ_i. Empty means zero.
  std::vector<double> detunings;
  CouplingKind coupling_kind = CouplingKind::NearestNeighbor;
  double coupling_exponent = 3.0;
  double coupling_strength = 1.0;
  /// Used when coupling_kind == ExplicitTable.
  std::vector<PairCoupling> table;
  std::optional<AnisotropyConfig> anisotropy;
};

/// One Pauli term. When `modulated` is set the coefficient is multiplied by
/// the anisotropy Δ(t).
struct PauliTerm {
  PauliString op;
  double coeff = 0.0;
  bool modulated = false;
};

/// Hamiltonian as a list of Pauli terms with real coefficients.
struct TermList {
  int n_qubits = 1;
  std::vector<PauliTerm> terms;

  bool time_dependent() const;
  /// Dense matrix with modulated coefficients scaled by `delta`.
  Eigen::MatrixXcd matrix(double delta = 0.0) const;
  /// Same list with every term conjugated by g (signs only).
  TermList conjugated(const PauliString& g) const;
};

struct BuiltHamiltonian {
  /// Terms with coefficients evaluated at the requested time.
  std::vector<std::pair<PauliString, double>> terms;
  Eigen::MatrixXcd matrix;
};

/// Coupling strength between sites i and j (0-based) for the profile kind.
/// Dipolar: J|i-j|^(-exponent); nearest neighbour: J when |i-j| = 1 else 0.
double coupling_profile(CouplingKind kind, int i, int j, int n_qubits,
                        double strength = 1.0, double exponent = 3.0);

/// Nonzero pair couplings, i < j. Anisotropic z couplings are reported with
/// their static value (they are replaced by J·Δ(t) in the term list).
std::vector<PairCoupling> coupling_table(const HamiltonianSpec& spec);

AnisotropyRealization sample_anisotropy(const AnisotropyConfig& cfg,
                                        std::mt19937_64& rng);

double anisotropy_delta(double t, const AnisotropyRealization& real,
                        double base_rate = 10.0 * std::numbers::pi);

/// Structural term list: ω_i/2 Z_i plus Σ J_ij^(a) σ_i^a σ_j^a.
TermList hamiltonian_terms(const HamiltonianSpec& spec);

/// Evaluates the Hamiltonian at time t. `real` is required exactly when the
/// spec carries an anisotropy.
BuiltHamiltonian build_hamiltonian(
    const HamiltonianSpec& spec, double t,
    const std::optional<AnisotropyRealization>& real = std::nullopt);

struct RotatingFrame {
  HamiltonianSpec spec;
  /// Set when the uniform rotation does not commute with the couplings
  /// (J^x != J^y on some pair) so the frame Hamiltonian is time dependent.
  bool requires_time_resolved = false;
};

/// Removes the common ω Z/2 terms, keeping the detunings δ_i.
RotatingFrame rotating_frame_hamiltonian(const HamiltonianSpec& spec);

/// max |eig(H)| for Hermitian H (tolerance 1e-10 on H - H†).
double spectral_norm(const Eigen::MatrixXcd& h);

/// max |H - H†| entry.
double hermiticity_residual(const Eigen::MatrixXcd& h);

}  // namespace decouple

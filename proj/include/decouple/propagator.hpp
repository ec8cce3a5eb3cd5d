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
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "decouple/hamiltonian.hpp"
#include "decouple/protocols.hpp"
#include "decouple/sectors.hpp"

namespace decouple {

/// Unitarity tolerance enforced on every sampled logical propagator.
inline constexpr double kUnitarityTol = 1e-8;

struct EvolutionConfig {
  /// Interval length Δt in 1/J.
  double dt = 0.05;
  /// Integrator substeps per interval for time-dependent Hamiltonians.
  int substeps = 1;
  /// Intervals between samples; 0 means the frame sequence's cycle length.
  std::size_t sample_stride = 0;

  void validate() const;
};

/// Smallest substep count giving at least `per_period` substeps per period
/// of the fastest anisotropy harmonic.
int default_substeps(const AnisotropyConfig& cfg, double dt, int per_period = 50);

/// exp(-i H dt) via Hermitian eigendecomposition.
Eigen::MatrixXcd step_unitary(const Eigen::MatrixXcd& h, double dt);

/// |tr(U)/d|^2.
double entanglement_fidelity(const Eigen::MatrixXcd& u);

/// Untoggled interval propagators W_m for one system, in its sector basis.
/// For a static Hamiltonian W = exp(-i H dt) is computed once; otherwise
/// W_m is the ordered product over substeps of fourth-order commutator-free
/// Magnus steps (two exponentials at the Gauss points).
class IntervalPropagator {
 public:
  IntervalPropagator(const TermList& terms, double dt, int substeps,
                     double base_rate = 10.0 * std::numbers::pi);

  const SectorBasis& basis() const { return basis_; }
  bool time_dependent() const { return time_dependent_; }
  double dt() const { return dt_; }
  int substeps() const { return substeps_; }

  /// W for a static system.
  const Blocks& static_interval() const { return static_w_; }
  /// W_m for interval m (time-dependent systems need `real`).
  Blocks interval(std::size_t m, const AnisotropyRealization* real) const;

 private:
  SectorBasis basis_;
  double dt_;
  int substeps_;
  double base_rate_;
  bool time_dependent_;
  bool real_blocks_ = false;
  Blocks static_w_;
  Blocks fixed_part_;
  Blocks modulated_part_;
};

/// Bounded cache of Pauli actions keyed by letters.
class PauliActionCache {
 public:
  explicit PauliActionCache(const SectorBasis& basis, std::size_t capacity = 4096)
      : basis_(basis), capacity_(capacity) {}
  const PauliAction& get(const PauliString& g);

 private:
  const SectorBasis& basis_;
  std::size_t capacity_;
  std::unordered_map<PauliString, PauliAction, LetterHash, LetterEqual> cache_;
};

/// Logical propagator Ũ in block form, advanced one interval at a time by
/// Ũ <- g† W g Ũ with the frame applied as an exact sparse map.
class ToggledTrajectory {
 public:
  explicit ToggledTrajectory(const SectorBasis& basis);
  void step(const PauliAction& frame, const Blocks& w);
  const Blocks& blocks() const { return u_; }
  double fidelity() const;
  double unitarity_residual() const;

 private:
  double dim_;
  Blocks u_;
  Blocks scratch_;
};

struct FidelitySample {
  double time = 0.0;
  double fidelity = 0.0;
  double unitarity_residual = 0.0;
};

/// Advances several frame sequences in lockstep through the same interval
/// propagators, sampling every `stride` intervals. All sequences must have
/// at least n_intervals frames. Throws NumericalError (with the sequence
/// index) when a sample violates kUnitarityTol.
std::vector<std::vector<FidelitySample>> evolve_fidelities(
    const IntervalPropagator& prop, const std::vector<const FrameSequence*>& seqs,
    std::size_t n_intervals, std::size_t stride,
    const AnisotropyRealization* real);

struct EvolutionSample {
  double time = 0.0;
  Eigen::MatrixXcd unitary;
};

/// Ũ(T_n) = Π_{m < n·stride} g_m† U_m g_m at every sample point, as dense
/// matrices. Intended for small systems and verification.
std::vector<EvolutionSample> toggled_evolution(
    const TermList& system, const FrameSequence& frames,
    const EvolutionConfig& cfg,
    const std::optional<AnisotropyRealization>& real = std::nullopt,
    double base_rate = 10.0 * std::numbers::pi);

}  // namespace decouple

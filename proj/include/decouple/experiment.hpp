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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "decouple/hamiltonian.hpp"
#include "decouple/propagator.hpp"
#include "decouple/protocols.hpp"

namespace decouple {

/// Infidelities at or below this are excluded from scaling fits.
inline constexpr double kInfidelityFloor = 1e-12;

/// Environment variable holding the default worker count.
inline constexpr const char* kThreadsEnv = "DECOUPLE_THREADS";

struct RunConfig {
  /// Curve label; protocol_name(kind) when empty.
  std::string label;
  HamiltonianSpec system;
  ProtocolSpec protocol;
  EvolutionConfig evolution;
  std::size_t n_realizations = 100;
  /// J·T, rounded to a whole number of intervals.
  double total_time = 1.0;
  std::uint64_t master_seed = 1;
  /// Use one anisotropy draw for every realization.
  bool freeze_disorder = false;

  RunConfig(HamiltonianSpec sys, ProtocolSpec proto)
      : system(std::move(sys)), protocol(std::move(proto)) {}

  /// Throws ConfigError or DimensionError.
  void validate() const;
  std::string display_label() const;
  std::size_t n_intervals() const;
  /// Intervals between samples: evolution.sample_stride, or |G| when unset.
  std::size_t stride() const;
  /// Realizations actually run: 1 for a deterministic protocol on a static
  /// system, n_realizations otherwise.
  std::size_t realizations() const;
};

/// splitmix64 finalizer over (master, realization, stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t realization,
                          std::uint64_t stream);
inline constexpr std::uint64_t kControlStream = 0;
inline constexpr std::uint64_t kDisorderStream = 1;

/// Worker count from DECOUPLE_THREADS, else the hardware concurrency.
int default_threads();

struct TraceRecord {
  double t = 0.0;
  double fe_mean = 0.0;
  double fe_stderr = 0.0;
  std::size_t n_real = 0;
};

struct FidelityTrace {
  std::string label;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
  /// Largest unitarity residual seen at any sample of any realization.
  double max_unitarity_residual = 0.0;
  std::vector<std::string> warnings;

  /// Record at time t (relative tolerance 1e-9); throws ConfigError if absent.
  const TraceRecord& at(double t) const;
};

/// Mean and standard error of ⟨⟨F_e⟩⟩ over realizations.
FidelityTrace run_protocol(const RunConfig& cfg, int threads = 0);

/// Runs several protocols on one system. Configs sharing Δt, substeps and
/// (for time-dependent systems) the disorder seed advance in lockstep
/// through the same interval propagators, so every protocol sees the same
/// disorder realizations. All traces must share one sampling grid.
std::vector<FidelityTrace> run_comparison(const std::vector<RunConfig>& cfgs,
                                          int threads = 0);

/// Per-realization F_e at every sample time, realization-major.
struct RealizationTraces {
  std::vector<double> times;
  std::vector<std::vector<double>> fidelity;
  double max_unitarity_residual = 0.0;
};
RealizationTraces run_realizations(const RunConfig& cfg, std::size_t count,
                                   int threads = 0);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  /// 95% confidence interval from the Student t distribution.
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t points = 0;
  std::vector<std::string> warnings;
};

/// Least-squares slope of log(1 - F_e) against log(Δt) at t_probe.
ScalingFit scaling_fit(const std::vector<double>& dts,
                       const std::vector<FidelityTrace>& traces, double t_probe);

struct Candidate {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
};

struct DerandomizeResult {
  Candidate best;
  FidelityTrace best_trace;
  /// All candidates, best first (ties by index).
  std::vector<Candidate> ranking;
};

/// Candidate k is control realization k of `cfg`; the winner maximizes F_e
/// at t_objective.
DerandomizeResult derandomize(const RunConfig& cfg, std::size_t n_candidates,
                              double t_objective, int threads = 0);

/// `protocol,seed,n_real,t_J,fe_mean,fe_stderr` with 17 significant digits,
/// rows ordered by trace then time.
void write_csv(std::ostream& out, const std::vector<FidelityTrace>& traces);
/// Inverse of write_csv; traces are grouped by consecutive protocol label.
std::vector<FidelityTrace> read_csv(std::istream& in);

struct Preset {
  std::string name;
  std::string description;
  std::vector<RunConfig> runs;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
Preset make_preset(const std::string& name);

}  // namespace decouple

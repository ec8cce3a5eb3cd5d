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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "decouple/groups.hpp"
#include "decouple/pauli.hpp"

namespace decouple {

enum class ProtocolKind { Free, Pdd, Sdd, Cdd, Nrd, Emd, Rpd, Srpd, Interpolated };

std::string_view protocol_name(ProtocolKind kind);
/// Case-insensitive inverse of protocol_name; throws ConfigError.
ProtocolKind parse_protocol_kind(std::string_view text);
bool is_randomized(ProtocolKind kind);

struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::Free;
  /// Inner path; its group is also the sampling group of NRD/RPD/SRPD and
  /// fixes |G| (hence the cycle length) for every kind, FREE included.
  ControlPath inner_path;
  /// Bordering-pulse group for EMD.
  GroupPtr outer_group;
  /// Concatenation level for CDD and the deterministic part of INTERPOLATED.
  int level = 1;
  /// Outer pulses per concatenation level; 0 means |G|.
  std::size_t arity = 0;
  /// First interval of the randomized part of INTERPOLATED; a multiple of |G|.
  std::size_t switch_index = 0;

  explicit ProtocolSpec(ControlPath path) : inner_path(std::move(path)) {}
  ProtocolSpec(ProtocolKind k, ControlPath path)
      : kind(k), inner_path(std::move(path)) {}

  std::size_t group_size() const { return inner_path.size(); }
  std::size_t effective_arity() const { return arity == 0 ? group_size() : arity; }
  /// Throws ConfigError when a parameter required by `kind` is missing or
  /// out of range.
  void validate() const;
};

/// Control frame g_n for each interval n; frames[0] is the identity.
struct FrameSequence {
  std::vector<PauliString> frames;
  /// Intervals per reporting cycle.
  std::size_t cycle_len = 1;
  std::vector<std::string> warnings;
};

/// Frames for n_intervals intervals. `rng` must be non-null for randomized
/// kinds and is ignored otherwise.
FrameSequence control_frames(const ProtocolSpec& spec, std::size_t n_intervals,
                             std::mt19937_64* rng);

/// Length of one level-`level` concatenated block.
std::size_t cdd_block_length(std::size_t group_size, std::size_t arity, int level);

/// P_k = frames[k] · frames[k-1]† for k = 1..n-1.
std::vector<PauliString> pulses_from_frames(const FrameSequence& seq);

/// Inverse of pulses_from_frames given the first frame.
std::vector<PauliString> frames_from_pulses(const PauliString& first,
                                            const std::vector<PauliString>& pulses);

}  // namespace decouple

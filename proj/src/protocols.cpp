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

#include "decouple/protocols.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <numeric>

#include "decouple/errors.hpp"

namespace decouple {

namespace {

constexpr std::array<std::pair<ProtocolKind, std::string_view>, 9> kNames = {{
    {ProtocolKind::Free, "free"},
    {ProtocolKind::Pdd, "pdd"},
    {ProtocolKind::Sdd, "sdd"},
    {ProtocolKind::Cdd, "cdd"},
    {ProtocolKind::Nrd, "nrd"},
    {ProtocolKind::Emd, "emd"},
    {ProtocolKind::Rpd, "rpd"},
    {ProtocolKind::Srpd, "srpd"},
    {ProtocolKind::Interpolated, "interpolated"},
}};

std::size_t draw_index(std::size_t size, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dist(0, size - 1);
  return dist(rng);
}

std::vector<std::size_t> shuffled_order(std::size_t size, std::mt19937_64& rng) {
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin() + 1, order.end(), rng);
  return order;
}

/// Frame of interval n inside a repeated level-`level` concatenated block.
PauliString cdd_frame(const ProtocolSpec& spec, std::size_t n) {
  const ControlPath& path = spec.inner_path;
  const std::size_t base = path.size();
  const std::size_t arity = spec.effective_arity();
  n %= cdd_block_length(base, arity, spec.level);
  PauliString frame = path.frame(n % base);
  n /= base;
  for (int l = 1; l < spec.level; ++l) {
    frame = frame * path.frame(n % arity);
    n /= arity;
  }
  return frame;
}

void append_srpd(const GroupPtr& group, std::size_t count, std::mt19937_64& rng,
                 std::vector<PauliString>& out) {
  const std::size_t g = group->size();
  std::vector<std::size_t> order;
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t pos = n % (2 * g);
    if (pos == 0) order = shuffled_order(g, rng);
    const std::size_t k = pos < g ? order[pos] : order[2 * g - 1 - pos];
    out.push_back((*group)[k]);
  }
}

}  // namespace

std::string_view protocol_name(ProtocolKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ProtocolKind parse_protocol_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& [k, name] : kNames) {
    if (name == lower) return k;
  }
  throw ConfigError("unknown protocol kind '" + std::string(text) + "'");
}

bool is_randomized(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Nrd:
    case ProtocolKind::Emd:
    case ProtocolKind::Rpd:
    case ProtocolKind::Srpd:
    case ProtocolKind::Interpolated:
      return true;
    default:
      return false;
  }
}

void ProtocolSpec::validate() const {
  const std::size_t g = group_size();
  const bool uses_level =
      kind == ProtocolKind::Cdd || kind == ProtocolKind::Interpolated;
  if (uses_level) {
    if (level < 1) throw ConfigError("protocol.level must be >= 1");
    const std::size_t a = effective_arity();
    if (a < 2 || a > g) {
      throw ConfigError("protocol.arity must lie in 2.." + std::to_string(g));
    }
  }
  if (kind == ProtocolKind::Emd) {
    if (!outer_group) throw ConfigError("EMD requires protocol.outer_group");
    if (outer_group->n_qubits() != inner_path.group()->n_qubits()) {
      throw DimensionError("outer group acts on a different register");
    }
  }
  if (kind == ProtocolKind::Interpolated && switch_index % g != 0) {
    throw ConfigError("protocol switch point must be a whole number of cycles");
  }
}

std::size_t cdd_block_length(std::size_t group_size, std::size_t arity,
                             int level) {
  std::size_t len = group_size;
  for (int l = 1; l < level; ++l) {
    if (len > std::numeric_limits<std::size_t>::max() / arity) {
      return std::numeric_limits<std::size_t>::max();
    }
    len *= arity;
  }
  return len;
}

FrameSequence control_frames(const ProtocolSpec& spec, std::size_t n_intervals,
                             std::mt19937_64* rng) {
  spec.validate();
  if (n_intervals == 0) throw ConfigError("n_intervals must be >= 1");
  if (is_randomized(spec.kind) && rng == nullptr) {
    throw ConfigError(std::string(protocol_name(spec.kind)) +
                      " needs a random number generator");
  }
  const ControlPath& path = spec.inner_path;
  const GroupPtr& group = path.group();
  const std::size_t g = path.size();
  const int n_qubits = group->n_qubits();

  FrameSequence seq;
  seq.cycle_len = g;
  seq.frames.reserve(n_intervals);
  auto& frames = seq.frames;

  switch (spec.kind) {
    case ProtocolKind::Free:
      frames.assign(n_intervals, PauliString(n_qubits));
      break;
    case ProtocolKind::Pdd:
      for (std::size_t n = 0; n < n_intervals; ++n) frames.push_back(path.frame(n % g));
      break;
    case ProtocolKind::Sdd: {
      seq.cycle_len = 2 * g;
      const std::vector<PauliString> sym = symmetrize_path(path);
      for (std::size_t n = 0; n < n_intervals; ++n) frames.push_back(sym[n % sym.size()]);
      break;
    }
    case ProtocolKind::Cdd: {
      const std::size_t block =
          cdd_block_length(g, spec.effective_arity(), spec.level);
      if (block > n_intervals) {
        seq.warnings.push_back(
            "level-" + std::to_string(spec.level) + " block of " +
            std::to_string(block) + " intervals truncated to " +
            std::to_string(n_intervals));
      }
      for (std::size_t n = 0; n < n_intervals; ++n) frames.push_back(cdd_frame(spec, n));
      break;
    }
    case ProtocolKind::Nrd:
      frames.push_back(PauliString(n_qubits));
      for (std::size_t n = 1; n < n_intervals; ++n) {
        frames.push_back((*group)[draw_index(g, *rng)]);
      }
      break;
    case ProtocolKind::Rpd: {
      std::vector<std::size_t> order;
      for (std::size_t n = 0; n < n_intervals; ++n) {
        if (n % g == 0) order = shuffled_order(g, *rng);
        frames.push_back((*group)[order[n % g]]);
      }
      break;
    }
    case ProtocolKind::Srpd:
      seq.cycle_len = 2 * g;
      append_srpd(group, n_intervals, *rng, frames);
      break;
    case ProtocolKind::Emd: {
      const DecouplingGroup& outer = *spec.outer_group;
      PauliString border(n_qubits);
      for (std::size_t n = 0; n < n_intervals; ++n) {
        // The first cycle is unbordered so that frames[0] is the identity.
        if (n % g == 0 && n > 0) border = outer[draw_index(outer.size(), *rng)];
        frames.push_back(border * path.frame(n % g));
      }
      break;
    }
    case ProtocolKind::Interpolated: {
      const std::size_t head = std::min(spec.switch_index, n_intervals);
      for (std::size_t n = 0; n < head; ++n) frames.push_back(cdd_frame(spec, n));
      append_srpd(group, n_intervals - head, *rng, frames);
      break;
    }
  }
  return seq;
}

std::vector<PauliString> pulses_from_frames(const FrameSequence& seq) {
  if (seq.frames.empty()) throw ConfigError("empty frame sequence");
  std::vector<PauliString> pulses;
  pulses.reserve(seq.frames.size() - 1);
  for (std::size_t k = 1; k < seq.frames.size(); ++k) {
    pulses.push_back(seq.frames[k] * seq.frames[k - 1].dagger());
  }
  return pulses;
}

std::vector<PauliString> frames_from_pulses(const PauliString& first,
                                            const std::vector<PauliString>& pulses) {
  std::vector<PauliString> frames{first};
  frames.reserve(pulses.size() + 1);
  for (const auto& p : pulses) frames.push_back(p * frames.back());
  return frames;
}

}  // namespace decouple

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

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "decouple/errors.hpp"
#include "decouple/groups.hpp"
#include "decouple/protocols.hpp"
#include "doctest.h"

using namespace decouple;

namespace {

std::vector<std::string> letters_of(const std::vector<PauliString>& frames) {
  std::vector<std::string> out;
  for (const auto& f : frames) out.push_back(f.letters());
  return out;
}

/// Recursive expansion: level l+1 repeats level l once per outer frame h_j.
std::vector<PauliString> cdd_reference(const ControlPath& path, std::size_t arity, int level) {
  std::vector<PauliString> block = path.frames();
  for (int l = 1; l < level; ++l) {
    std::vector<PauliString> next;
    for (std::size_t j = 0; j < arity; ++j) {
      for (const auto& f : block) next.push_back(f * path.frame(j));
    }
    block = std::move(next);
  }
  return block;
}

ProtocolSpec nested2(ProtocolKind kind) {
  return ProtocolSpec(kind, listed_path(nested_pauli_group(2)));
}

}  // namespace

TEST_CASE("protocol names") {
  for (auto kind : {ProtocolKind::Free, ProtocolKind::Pdd, ProtocolKind::Sdd, ProtocolKind::Cdd,
                    ProtocolKind::Nrd, ProtocolKind::Emd, ProtocolKind::Rpd, ProtocolKind::Srpd,
                    ProtocolKind::Interpolated}) {
    CHECK(parse_protocol_kind(protocol_name(kind)) == kind);
  }
  CHECK(parse_protocol_kind("SRPD") == ProtocolKind::Srpd);
  CHECK_THROWS_AS(parse_protocol_kind("udd"), ConfigError);
  CHECK(is_randomized(ProtocolKind::Emd));
  CHECK_FALSE(is_randomized(ProtocolKind::Cdd));
}

TEST_CASE("deterministic protocols") {
  const auto free = control_frames(nested2(ProtocolKind::Free), 5, nullptr);
  CHECK(free.frames.size() == 5);
  for (const auto& f : free.frames) CHECK(f.letters_identity());
  CHECK(free.cycle_len == 4);

  const auto pdd = control_frames(nested2(ProtocolKind::Pdd), 8, nullptr);
  CHECK(letters_of(pdd.frames) ==
        std::vector<std::string>{"II", "IX", "IZ", "IY", "II", "IX", "IZ", "IY"});

  const auto sdd = control_frames(nested2(ProtocolKind::Sdd), 10, nullptr);
  CHECK(sdd.cycle_len == 8);
  CHECK(letters_of(sdd.frames) == std::vector<std::string>{"II", "IX", "IZ", "IY", "IY", "IZ",
                                                           "IX", "II", "II", "IX"});
}

TEST_CASE("concatenated DD") {
  const auto path = listed_path(nested_pauli_group(3));
  ProtocolSpec spec(ProtocolKind::Cdd, path);

  spec.level = 1;
  const auto pdd = control_frames(ProtocolSpec(ProtocolKind::Pdd, path), 40, nullptr);
  CHECK(control_frames(spec, 40, nullptr).frames == pdd.frames);

  for (int level : {2, 3}) {
    for (std::size_t arity : {std::size_t{0}, std::size_t{4}}) {
      spec.level = level;
      spec.arity = arity;
      const std::size_t a = spec.effective_arity();
      const auto ref = cdd_reference(path, a, level);
      CHECK(cdd_block_length(16, a, level) == ref.size());
      const auto seq = control_frames(spec, 2 * ref.size() + 3, nullptr);
      CHECK(seq.warnings.empty());
      for (std::size_t n = 0; n < seq.frames.size(); ++n) {
        CHECK(seq.frames[n] == ref[n % ref.size()]);
      }
    }
  }

  // Four-pulse levels on G8 stay inside the group.
  ProtocolSpec g8(ProtocolKind::Cdd, listed_path(g8_group()));
  g8.level = 5;
  g8.arity = 4;
  CHECK(cdd_block_length(8, 4, 5) == 2048);
  const auto seq = control_frames(g8, 2048, nullptr);
  CHECK(seq.warnings.empty());
  std::set<std::string> seen;
  for (const auto& f : seq.frames) seen.insert(f.letters());
  CHECK(seen.size() == 8);

  const auto truncated = control_frames(g8, 100, nullptr);
  CHECK(truncated.warnings.size() == 1);

  g8.arity = 1;
  CHECK_THROWS_AS(control_frames(g8, 10, nullptr), ConfigError);
  g8.arity = 9;
  CHECK_THROWS_AS(control_frames(g8, 10, nullptr), ConfigError);
  g8.arity = 0;
  g8.level = 0;
  CHECK_THROWS_AS(control_frames(g8, 10, nullptr), ConfigError);
}

TEST_CASE("naive random decoupling is uniform") {
  std::mt19937_64 rng(2024);
  const auto seq = control_frames(nested2(ProtocolKind::Nrd), 40001, &rng);
  CHECK(seq.frames[0].letters_identity());
  std::map<std::string, int> counts;
  for (std::size_t n = 1; n < seq.frames.size(); ++n) ++counts[seq.frames[n].letters()];
  REQUIRE(counts.size() == 4);
  double chi2 = 0.0;
  for (const auto& [letters, c] : counts) {
    const double expected = 10000.0;
    chi2 += (c - expected) * (c - expected) / expected;
    // Multinomial 3σ band: sqrt(40000 · 0.25 · 0.75) ≈ 86.6.
    CHECK(std::abs(c - expected) < 3 * 86.6);
  }
  // 99.9% quantile of chi-square with 3 degrees of freedom.
  CHECK(chi2 < 16.27);

  CHECK_THROWS_AS(control_frames(nested2(ProtocolKind::Nrd), 4, nullptr), ConfigError);
}

TEST_CASE("random path protocols") {
  const auto group = nested_pauli_group(3);
  std::mt19937_64 rng(7);

  const auto rpd = control_frames(ProtocolSpec(ProtocolKind::Rpd, listed_path(group)), 160, &rng);
  CHECK(rpd.cycle_len == 16);
  std::set<std::vector<std::string>> distinct_cycles;
  for (std::size_t c = 0; c < 10; ++c) {
    std::vector<std::string> cycle;
    for (std::size_t k = 0; k < 16; ++k) cycle.push_back(rpd.frames[16 * c + k].letters());
    CHECK(cycle.front() == "III");
    distinct_cycles.insert(cycle);
    std::sort(cycle.begin(), cycle.end());
    CHECK(std::unique(cycle.begin(), cycle.end()) == cycle.end());
    CHECK(cycle.size() == 16);
  }
  CHECK(distinct_cycles.size() > 1);

  const auto srpd =
      control_frames(ProtocolSpec(ProtocolKind::Srpd, listed_path(group)), 96, &rng);
  CHECK(srpd.cycle_len == 32);
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<std::string> cycle;
    for (std::size_t k = 0; k < 32; ++k) cycle.push_back(srpd.frames[32 * c + k].letters());
    CHECK(cycle.front() == "III");
    CHECK(std::equal(cycle.begin(), cycle.end(), cycle.rbegin()));
    std::map<std::string, int> counts;
    for (const auto& l : cycle) ++counts[l];
    CHECK(counts.size() == 16);
    for (const auto& [l, c2] : counts) CHECK(c2 == 2);
  }
}

TEST_CASE("embedded decoupling") {
  const auto inner = listed_path(g8_group());
  ProtocolSpec spec(ProtocolKind::Emd, inner);
  CHECK_THROWS_AS(control_frames(spec, 8, nullptr), ConfigError);
  spec.outer_group = full_pauli_group(8);
  CHECK_THROWS_AS(control_frames(spec, 8, nullptr), ConfigError);

  std::mt19937_64 rng(99);
  const auto seq = control_frames(spec, 80, &rng);
  CHECK(seq.frames[0].letters_identity());
  std::set<std::string> borders;
  for (std::size_t c = 0; c < 10; ++c) {
    const PauliString b = seq.frames[8 * c];
    borders.insert(b.letters());
    for (std::size_t k = 0; k < 8; ++k) {
      const PauliString stripped = b.dagger() * seq.frames[8 * c + k];
      CHECK(stripped.same_letters(inner.frame(k)));
    }
  }
  CHECK(borders.size() > 2);

  ProtocolSpec mismatched(ProtocolKind::Emd, inner);
  mismatched.outer_group = full_pauli_group(2);
  std::mt19937_64 rng2(1);
  CHECK_THROWS_AS(control_frames(mismatched, 8, &rng2), DimensionError);
}

TEST_CASE("interpolated protocol") {
  const auto path = listed_path(g8_group());
  ProtocolSpec spec(ProtocolKind::Interpolated, path);
  spec.level = 2;
  spec.arity = 4;
  spec.switch_index = 32;
  std::mt19937_64 rng(3);
  const auto seq = control_frames(spec, 64, &rng);
  const auto ref = cdd_reference(path, 4, 2);
  for (std::size_t n = 0; n < 32; ++n) CHECK(seq.frames[n] == ref[n]);
  CHECK(seq.frames[32].letters_identity());
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(seq.frames[32 + k].same_letters(seq.frames[47 - k]));
  }
  spec.switch_index = 12;
  CHECK_THROWS_AS(control_frames(spec, 64, &rng), ConfigError);
}

TEST_CASE("randomized frames are reproducible") {
  const auto path = listed_path(nested_pauli_group(4));
  for (auto kind : {ProtocolKind::Nrd, ProtocolKind::Rpd, ProtocolKind::Srpd}) {
    std::mt19937_64 a(123), b(123), c(124);
    const ProtocolSpec spec(kind, path);
    const auto fa = control_frames(spec, 500, &a);
    const auto fb = control_frames(spec, 500, &b);
    const auto fc = control_frames(spec, 500, &c);
    CHECK(fa.frames == fb.frames);
    CHECK(fa.frames != fc.frames);
  }
}

TEST_CASE("pulses") {
  FrameSequence constant;
  constant.frames.assign(4, PauliString::from_letters("XZ"));
  for (const auto& p : pulses_from_frames(constant)) CHECK(p.is_identity());

  FrameSequence two;
  two.frames = {PauliString(2), PauliString::parse("+1 X2", 2)};
  CHECK(pulses_from_frames(two).at(0).to_string() == "+1 X2");

  FrameSequence three;
  three.frames = {PauliString(2), PauliString::parse("+1 X2", 2), PauliString::parse("+1 Z2", 2)};
  CHECK(pulses_from_frames(three).at(1).to_string() == "+i Y2");

  std::mt19937_64 rng(5);
  const auto seq =
      control_frames(ProtocolSpec(ProtocolKind::Nrd, listed_path(full_pauli_group(3))), 200, &rng);
  CHECK(frames_from_pulses(seq.frames[0], pulses_from_frames(seq)) == seq.frames);
  CHECK_THROWS_AS(pulses_from_frames(FrameSequence{}), ConfigError);
}

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

#include <functional>
#include <map>

#include "decouple/errors.hpp"
#include "decouple/experiment.hpp"

namespace decouple {

namespace {

HamiltonianSpec dipolar_chain(int n) {
  HamiltonianSpec s;
  s.n_qubits = n;
  s.coupling_kind = CouplingKind::DipolarPowerLaw;
  return s;
}

HamiltonianSpec nn_chain(int n, bool anisotropic) {
  HamiltonianSpec s;
  s.n_qubits = n;
  s.coupling_kind = CouplingKind::NearestNeighbor;
  if (anisotropic) s.anisotropy = AnisotropyConfig{};
  return s;
}

RunConfig make_run(const std::string& label, const HamiltonianSpec& sys, ProtocolKind kind,
                   const ControlPath& path, double dt, double total_time,
                   std::size_t realizations = 100) {
  RunConfig cfg(sys, ProtocolSpec(kind, path));
  cfg.label = label;
  cfg.evolution.dt = dt;
  cfg.total_time = total_time;
  cfg.n_realizations = realizations;
  return cfg;
}

/// Inner paths of G8 used to expose the EMD path dependence: the listed
/// order followed by fixed random orderings.
std::vector<ControlPath> g8_paths(std::size_t count) {
  const GroupPtr g = g8_group();
  std::vector<ControlPath> paths{listed_path(g)};
  std::mt19937_64 rng(derive_seed(8, 0, 2));
  while (paths.size() < count) paths.push_back(random_path(g, rng));
  return paths;
}

// fig1 presets: nested-group PDD at Δt, Δt/2, Δt/4 against NRD at Δt. The
// PDD path is the Gray code, which never pulses two qubits at once.
Preset fig1_main(const std::string& name, int n, double dt, double total_time) {
  Preset p{name, "", {}};
  const HamiltonianSpec sys = dipolar_chain(n);
  const ControlPath path = gray_code_path(nested_pauli_group(n));
  const std::size_t g = path.size();
  p.description = "N=" + std::to_string(n) +
                  " dipolar chain, nested group: NRD at fixed dt vs PDD at dt, dt/2, dt/4";
  p.runs.push_back(make_run("free", sys, ProtocolKind::Free, path, dt, total_time));
  p.runs.push_back(make_run("nrd", sys, ProtocolKind::Nrd, path, dt, total_time));
  for (int div : {1, 2, 4}) {
    RunConfig r = make_run("pdd-dt/" + std::to_string(div), sys, ProtocolKind::Pdd, path,
                           dt / div, total_time);
    r.evolution.sample_stride = g * static_cast<std::size_t>(div);
    p.runs.push_back(std::move(r));
  }
  return p;
}

Preset fig1_inset(const std::string& name, int n, double dt) {
  Preset p{name, "", {}};
  const HamiltonianSpec sys = dipolar_chain(n);
  const ControlPath path = gray_code_path(nested_pauli_group(n));
  const double tc = static_cast<double>(path.size()) * dt;
  p.description = "N=" + std::to_string(n) +
                  " dipolar chain, one cycle sampled every interval: PDD, NRD, RPD";
  for (auto [label, kind] : {std::pair{"pdd", ProtocolKind::Pdd},
                             std::pair{"nrd", ProtocolKind::Nrd},
                             std::pair{"rpd", ProtocolKind::Rpd}}) {
    RunConfig r = make_run(label, sys, kind, path, dt, tc);
    r.evolution.sample_stride = 1;
    p.runs.push_back(std::move(r));
  }
  return p;
}

constexpr double kFig2Dt = 0.05;
constexpr double kFig2Time = 102.4;

Preset fig2() {
  Preset p{"fig2", "N=8 dipolar chain, G8, dt=0.05: deterministic vs randomized DD", {}};
  const HamiltonianSpec sys = dipolar_chain(8);
  const ControlPath path = listed_path(g8_group());
  auto add = [&](const std::string& label, ProtocolKind kind) -> RunConfig& {
    p.runs.push_back(make_run(label, sys, kind, path, kFig2Dt, kFig2Time));
    return p.runs.back();
  };
  add("free", ProtocolKind::Free);
  add("pdd", ProtocolKind::Pdd);
  add("sdd", ProtocolKind::Sdd);
  RunConfig& cdd = add("cdd", ProtocolKind::Cdd);
  cdd.protocol.level = 5;
  cdd.protocol.arity = 4;
  add("nrd", ProtocolKind::Nrd);
  add("emd", ProtocolKind::Emd).protocol.outer_group = full_pauli_group(8);
  add("srpd", ProtocolKind::Srpd);
  return p;
}

Preset fig2_cdd() {
  Preset p{"fig2-cdd", "fig2 system: CDD at levels 3, 4 and 5 (four pulses per level)", {}};
  const HamiltonianSpec sys = dipolar_chain(8);
  const ControlPath path = listed_path(g8_group());
  for (int level : {3, 4, 5}) {
    RunConfig r = make_run("cdd-l" + std::to_string(level), sys, ProtocolKind::Cdd, path,
                           kFig2Dt, kFig2Time);
    r.protocol.level = level;
    r.protocol.arity = 4;
    p.runs.push_back(std::move(r));
  }
  return p;
}

Preset fig2_paths() {
  Preset p{"fig2-paths",
           "fig2 system: EMD over five inner paths and SRPD over five independent seeds", {}};
  const HamiltonianSpec sys = dipolar_chain(8);
  const auto paths = g8_paths(5);
  for (std::size_t k = 0; k < paths.size(); ++k) {
    RunConfig r = make_run("emd-path" + std::to_string(k), sys, ProtocolKind::Emd, paths[k],
                           kFig2Dt, kFig2Time);
    r.protocol.outer_group = full_pauli_group(8);
    p.runs.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < paths.size(); ++k) {
    RunConfig r = make_run("srpd-seed" + std::to_string(k), sys, ProtocolKind::Srpd,
                           paths.front(), kFig2Dt, kFig2Time);
    r.master_seed = 1 + k;
    p.runs.push_back(std::move(r));
  }
  return p;
}

constexpr double kFig3Time = 10.0;

Preset fig3(const std::string& name, double dt) {
  Preset p{name, "", {}};
  p.description = "N=8 nearest-neighbour chain with time-dependent anisotropy, |G|=4, dt=" +
                  std::to_string(dt);
  const HamiltonianSpec sys = nn_chain(8, true);
  const ControlPath path = listed_path(nn_collective_group(8));
  const int substeps = default_substeps(*sys.anisotropy, dt);
  auto add = [&](const std::string& label, ProtocolKind kind) -> RunConfig& {
    p.runs.push_back(make_run(label, sys, kind, path, dt, kFig3Time));
    p.runs.back().evolution.substeps = substeps;
    return p.runs.back();
  };
  add("free", ProtocolKind::Free);
  add("pdd", ProtocolKind::Pdd);
  add("sdd", ProtocolKind::Sdd);
  add("cdd", ProtocolKind::Cdd).protocol.level = 3;
  add("nrd", ProtocolKind::Nrd);
  add("rpd", ProtocolKind::Rpd);
  add("srpd", ProtocolKind::Srpd);
  return p;
}

Preset scaling_nn4() {
  Preset p{"scaling-nn4",
           "N=4 isotropic nearest-neighbour chain, |G|=4: PDD, SDD, NRD for dt scans", {}};
  const HamiltonianSpec sys = nn_chain(4, false);
  const ControlPath path = listed_path(nn_collective_group(4));
  p.runs.push_back(make_run("pdd", sys, ProtocolKind::Pdd, path, 0.01, 1.6));
  p.runs.push_back(make_run("sdd", sys, ProtocolKind::Sdd, path, 0.01, 1.6));
  p.runs.push_back(make_run("nrd", sys, ProtocolKind::Nrd, path, 0.01, 1.6));
  return p;
}

const std::map<std::string, std::function<Preset()>>& registry() {
  static const std::map<std::string, std::function<Preset()>> presets = {
      {"fig1", [] { return fig1_main("fig1", 6, 1e-3, 20.48); }},
      {"fig1-inset", [] { return fig1_inset("fig1-inset", 6, 1e-3); }},
      {"fig1-smoke", [] { return fig1_main("fig1-smoke", 4, 0.01, 24.0); }},
      {"fig1-smoke-inset", [] { return fig1_inset("fig1-smoke-inset", 4, 1e-2); }},
      {"fig2", fig2},
      {"fig2-cdd", fig2_cdd},
      {"fig2-paths", fig2_paths},
      {"fig3", [] { return fig3("fig3", 0.05); }},
      {"fig3-inset", [] { return fig3("fig3-inset", 0.025); }},
      {"scaling-nn4", scaling_nn4},
  };
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, make] : registry()) names.push_back(name);
  return names;
}

Preset make_preset(const std::string& name) {
  const auto& presets = registry();
  const auto it = presets.find(name);
  if (it == presets.end()) throw ConfigError("unknown preset '" + name + "'");
  return it->second();
}

}  // namespace decouple

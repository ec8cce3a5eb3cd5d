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

#include <string>

#include "decouple/config.hpp"
#include "decouple/errors.hpp"
#include "decouple/plot.hpp"
#include "doctest.h"

using namespace decouple;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config") {
  const RunConfig cfg = parse_config(
      "# a comment\n"
      "n_qubits = 3\n"
      "coupling.kind = dipolar   # trailing comment\n"
      "protocol.kind = nrd\n"
      "evolution.dt = 0.025\n"
      "run.realizations = 12\n"
      "run.total_time = 0.4\n");
  CHECK(cfg.system.n_qubits == 3);
  CHECK(cfg.system.coupling_kind == CouplingKind::DipolarPowerLaw);
  CHECK(cfg.protocol.kind == ProtocolKind::Nrd);
  CHECK(cfg.protocol.group_size() == 16);
  CHECK(cfg.evolution.dt == 0.025);
  CHECK(cfg.n_realizations == 12);
  CHECK(cfg.n_intervals() == 16);
}

TEST_CASE("config errors") {
  CHECK(error_of("n_qubits = 3\n").find("protocol.kind") != std::string::npos);
  const std::string unknown = error_of("protocol.kind = pdd\n\nevolution.dtt = 0.1\n");
  CHECK(unknown.find("line 3") != std::string::npos);
  CHECK(unknown.find("evolution.dtt") != std::string::npos);
  CHECK(error_of("protocol.kind = pdd\nn_qubits 3\n").find("line 2") != std::string::npos);
  CHECK_FALSE(error_of("protocol.kind = pdd\nevolution.dt = fast\n").empty());
  CHECK_FALSE(error_of("protocol.kind = warp\n").empty());
  CHECK_THROWS_AS(parse_config("protocol.kind = cdd\nprotocol.level = 0\n"), ConfigError);
}

TEST_CASE("echo round trips") {
  const RunConfig cfg = parse_config(
      "n_qubits = 4\n"
      "coupling.kind = dipolar\n"
      "omega = 0.3\n"
      "protocol.kind = cdd\n"
      "protocol.level = 2\n"
      "protocol.inner_path = gray\n"
      "evolution.dt = 0.1\n"
      "run.total_time = 25.6\n");
  const std::string echo = echo_config(cfg);
  CHECK(echo.find("evolution.dt = 0.1\n") != std::string::npos);
  const RunConfig back = parse_config(echo);
  CHECK(echo_config(back) == echo);
  CHECK(back.evolution.dt == cfg.evolution.dt);
  CHECK(back.protocol.level == 2);
  CHECK(back.protocol.inner_path.frames() == cfg.protocol.inner_path.frames());
}

TEST_CASE("preset expansion with overrides") {
  Settings s;
  s.parse_text("preset = fig3\nrun.realizations = 5\n");
  s.set("protocol.kind=srpd");
  const RunConfig cfg = s.build();
  const RunConfig ref = make_preset("fig3").runs.front();
  CHECK(cfg.protocol.kind == ProtocolKind::Srpd);
  CHECK(cfg.n_realizations == 5);
  CHECK(cfg.system.n_qubits == ref.system.n_qubits);
  CHECK(cfg.system.anisotropy.has_value());
  CHECK(cfg.evolution.dt == ref.evolution.dt);
  CHECK(cfg.evolution.substeps == ref.evolution.substeps);
  CHECK(cfg.total_time == ref.total_time);

  Settings unknown;
  unknown.parse_text("preset = fig9\nprotocol.kind = pdd\n");
  CHECK_THROWS_AS(unknown.build(), ConfigError);
}

TEST_CASE("coupling table") {
  const RunConfig cfg = parse_config(
      "n_qubits = 3\n"
      "coupling.kind = table\n"
      "coupling.table = 1-2:1,1,0.5; 2-3:0.2,0.2,0.2\n"
      "protocol.kind = free\n");
  const auto table = coupling_table(cfg.system);
  REQUIRE(table.size() == 2);
  CHECK(table[0].i == 0);
  CHECK(table[0].j == 1);
  CHECK(table[0].axes[2] == 0.5);
  CHECK_THROWS_AS(parse_config("n_qubits = 3\ncoupling.kind = table\n"
                               "coupling.table = 1-4:1,1,1\nprotocol.kind = free\n"),
                  Error);
}

TEST_CASE("plot outputs") {
  FidelityTrace a;
  a.label = "nrd";
  a.records = {{0.1, 0.9, 0.01, 4}, {0.2, 0.8, 0.02, 4}};
  FidelityTrace b;
  b.label = "pdd";
  b.records = {{0.1, 0.95, 0.0, 1}, {0.2, 0.7, 0.0, 1}};
  const std::string svg = render_svg({a, b}, "demo");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("nrd") != std::string::npos);
  CHECK(svg.find("pdd") != std::string::npos);
  CHECK(svg.find("demo") != std::string::npos);
  const std::string gp = gnuplot_script({a, b}, "out.csv", "out.png");
  CHECK(gp.find("out.csv") != std::string::npos);
  CHECK(gp.find("out.png") != std::string::npos);
  CHECK(gp.find("title 'nrd'") != std::string::npos);
}

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

// Command-line front end: run, compare, verify, scaling, derandomize, plot.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "decouple/config.hpp"
#include "decouple/errors.hpp"
#include "decouple/experiment.hpp"
#include "decouple/groups.hpp"
#include "decouple/plot.hpp"

using namespace decouple;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

void write_traces(const std::string& path, const std::vector<FidelityTrace>& traces) {
  std::ostringstream csv;
  write_csv(csv, traces);
  if (path.empty() || path == "-") {
    std::cout << csv.str();
  } else {
    write_file(path, csv.str());
  }
}

void echo(const RunConfig& cfg) {
  std::istringstream lines(echo_config(cfg));
  std::string line;
  while (std::getline(lines, line)) std::cerr << "# " << line << '\n';
}

RunConfig with_overrides(const RunConfig& cfg, const std::vector<std::string>& sets) {
  if (sets.empty()) return cfg;
  Settings s;
  s.parse_text(echo_config(cfg));
  for (const auto& kv : sets) s.set(kv);
  return s.build();
}

void report_warnings(const std::vector<FidelityTrace>& traces) {
  for (const auto& t : traces) {
    for (const auto& w : t.warnings) std::cerr << "warning: " << t.label << ": " << w << '\n';
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw ConfigError("--dt-grid: '" + item + "' is not a number");
    }
  }
  return out;
}

GroupPtr load_group(const std::string& spec, int n) {
  if (spec == "nested") return nested_pauli_group(n);
  if (spec == "g8") return g8_group();
  if (spec == "nn") return nn_collective_group(n);
  if (spec == "pauli") return full_pauli_group(n);
  return make_group(spec, load_frames_file(spec, n));
}

int cmd_verify(const std::string& group_spec, const std::string& model_path, double dt) {
  Settings s;
  s.parse_text(read_file(model_path));
  const HamiltonianSpec sys = s.build_system();
  if (sys.anisotropy) throw ConfigError("verify needs a static model");
  const Eigen::MatrixXcd h = build_hamiltonian(sys, 0.0).matrix;
  const GroupPtr group = load_group(group_spec, sys.n_qubits);
  const ControlPath path = listed_path(group);
  const bool builtin = group_spec == "nested" || group_spec == "g8" || group_spec == "nn" ||
                       group_spec == "pauli";
  const double tol = builtin ? kExactResidualTol : kUserPathTol;

  const double first = verify_first_order(path.frames(), h);
  const double second = verify_second_order(path.frames(), h, dt);
  const double second_sym = verify_second_order(symmetrize_path(path), h, dt);
  std::printf("group %s: %zu elements, closed up to phase\n", group->label().c_str(),
              group->size());
  std::printf("first-order residual      %.3e  (tolerance %.0e)  %s\n", first, tol,
              first < tol ? "ok" : "FAIL");
  std::printf("second-order, path        %.3e\n", second);
  std::printf("second-order, symmetrized %.3e  (tolerance 1e-12)  %s\n", second_sym,
              second_sym <= 1e-12 ? "ok" : "FAIL");
  return first < tol && second_sym <= 1e-12 ? 0 : kExitNumerical;
}

int cmd_scaling(const std::string& preset_name, const std::vector<double>& grid, double t_probe,
                const std::string& out, const std::vector<std::string>& sets, int threads) {
  const Preset preset = make_preset(preset_name);
  std::vector<FidelityTrace> all;
  for (const RunConfig& base : preset.runs) {
    std::vector<FidelityTrace> traces;
    for (double dt : grid) {
      RunConfig cfg = with_overrides(base, sets);
      cfg.evolution.dt = dt;
      cfg.total_time = t_probe;
      cfg.label = base.display_label() + "@dt=" + std::to_string(dt);
      traces.push_back(run_protocol(cfg, threads));
    }
    const ScalingFit fit = scaling_fit(grid, traces, t_probe);
    std::printf("%-8s slope %.3f  95%% CI [%.3f, %.3f]  (%zu points)\n",
                base.display_label().c_str(), fit.slope, fit.ci_low, fit.ci_high, fit.points);
    for (const auto& w : fit.warnings) std::cerr << "warning: " << w << '\n';
    all.insert(all.end(), traces.begin(), traces.end());
  }
  if (!out.empty()) write_traces(out, all);
  return 0;
}

int cmd_derandomize(const std::string& config_path, const std::vector<std::string>& sets,
                    std::size_t candidates, double t_objective, const std::string& out,
                    int threads) {
  Settings s;
  s.parse_text(read_file(config_path));
  for (const auto& kv : sets) s.set(kv);
  const RunConfig cfg = s.build();
  echo(cfg);
  const DerandomizeResult res = derandomize(cfg, candidates, t_objective, threads);
  std::ostringstream ranking;
  ranking << "rank,candidate,seed,fe\n";
  char buf[64];
  for (std::size_t k = 0; k < res.ranking.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", res.ranking[k].objective);
    ranking << k << ',' << res.ranking[k].index << ',' << res.ranking[k].seed << ',' << buf
            << '\n';
  }
  if (out.empty()) {
    std::cout << ranking.str();
  } else {
    write_file(out, ranking.str());
  }
  std::fprintf(stderr, "best candidate %zu (seed %llu): F_e = %.12f at t = %g\n",
               res.best.index, static_cast<unsigned long long>(res.best.seed),
               res.best.objective, t_objective);
  return 0;
}

std::string keys_help() {
  std::string text = "Config keys (key = value, '#' comments):\n";
  for (const auto& k : config_keys()) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-24s %-10s %s\n", k.name.c_str(),
                  k.default_value.empty() ? "\"\"" : k.default_value.c_str(), k.help.c_str());
    text += line;
  }
  text += "Environment: " + std::string(kThreadsEnv) + " sets the default worker count.\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic and randomized dynamical decoupling simulator"};
  app.require_subcommand(1);
  app.footer(keys_help());
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: $DECOUPLE_THREADS or all cores)");

  std::string config_path, out, plot_path, preset, group_spec, model_path, grid_text, in_path;
  std::vector<std::string> sets, configs;
  double t_probe = 0.0, t_objective = 0.0, dt = 0.05;
  std::size_t candidates = 16;

  auto* run = app.add_subcommand("run", "simulate one protocol and write a CSV trace");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--set", sets, "override key=value");
  run->add_option("--out", out, "CSV output (default: stdout)");

  auto* compare = app.add_subcommand("compare", "run several protocols on one system");
  auto* preset_opt = compare->add_option("--preset", preset, "preset name");
  compare->add_option("--config", configs, "config files (instead of a preset)")
      ->excludes(preset_opt);
  compare->add_option("--set", sets, "override key=value for every run");
  compare->add_option("--out", out, "CSV output (default: stdout)");
  compare->add_option("--plot", plot_path, "also write a gnuplot script");

  auto* verify = app.add_subcommand("verify", "decoupling certificates for a group");
  verify->add_option("--group", group_spec, "nested | g8 | nn | pauli | frame file")->required();
  verify->add_option("--model", model_path, "config file describing the system")->required();
  verify->add_option("--dt", dt, "interval length for the second-order term");

  auto* scaling = app.add_subcommand("scaling", "infidelity scaling exponents in dt");
  scaling->add_option("--preset", preset, "preset name")->required();
  scaling->add_option("--dt-grid", grid_text, "comma-separated dt values")->required();
  scaling->add_option("--t-probe", t_probe, "probe time J*t")->required();
  scaling->add_option("--set", sets, "override key=value for every run");
  scaling->add_option("--out", out, "CSV with every trace");

  auto* derand = app.add_subcommand("derandomize", "post-select the best control realization");
  derand->add_option("--config", config_path, "config file")->required();
  derand->add_option("--set", sets, "override key=value");
  derand->add_option("--candidates", candidates, "number of candidate seeds")->required();
  derand->add_option("--t-objective", t_objective, "objective time J*t")->required();
  derand->add_option("--out", out, "ranking CSV (default: stdout)");

  auto* plot = app.add_subcommand("plot", "render a CSV as SVG (or a gnuplot script for .gp)");
  plot->add_option("--in", in_path, "CSV input")->required();
  plot->add_option("--out", out, "output .svg or .gp")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      Settings s;
      s.parse_text(read_file(config_path));
      for (const auto& kv : sets) s.set(kv);
      const RunConfig cfg = s.build();
      echo(cfg);
      const std::vector<FidelityTrace> traces{run_protocol(cfg, threads)};
      report_warnings(traces);
      write_traces(out, traces);
    } else if (*compare) {
      std::vector<RunConfig> cfgs;
      std::string title;
      if (!preset.empty()) {
        const Preset p = make_preset(preset);
        title = p.name + ": " + p.description;
        for (const auto& r : p.runs) cfgs.push_back(with_overrides(r, sets));
      } else {
        if (configs.empty()) throw ConfigError("compare needs --preset or --config");
        for (const auto& path : configs) {
          Settings s;
          s.parse_text(read_file(path));
          for (const auto& kv : sets) s.set(kv);
          cfgs.push_back(s.build());
        }
        title = "comparison";
      }
      for (const auto& c : cfgs) echo(c);
      const auto traces = run_comparison(cfgs, threads);
      report_warnings(traces);
      write_traces(out, traces);
      if (!plot_path.empty()) {
        const std::string csv = out.empty() ? "data.csv" : out;
        write_file(plot_path, gnuplot_script(traces, csv, csv + ".png"));
      }
    } else if (*verify) {
      return cmd_verify(group_spec, model_path, dt);
    } else if (*scaling) {
      return cmd_scaling(preset, parse_grid(grid_text), t_probe, out, sets, threads);
    } else if (*derand) {
      return cmd_derandomize(config_path, sets, candidates, t_objective, out, threads);
    } else if (*plot) {
      std::ifstream in(in_path);
      if (!in) throw ConfigError("cannot open '" + in_path + "'");
      const auto traces = read_csv(in);
      if (out.size() >= 3 && out.compare(out.size() - 3, 3, ".gp") == 0) {
        write_file(out, gnuplot_script(traces, in_path, in_path + ".png"));
      } else {
        write_file(out, render_svg(traces, in_path));
      }
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}

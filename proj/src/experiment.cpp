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

#include "decouple/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "decouple/errors.hpp"

namespace decouple {

namespace {

bool same_time(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
}

bool same_anisotropy(const std::optional<AnisotropyConfig>& a,
                     const std::optional<AnisotropyConfig>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->harmonics == b->harmonics && a->base_rate == b->base_rate &&
         a->r_lo == b->r_lo && a->r_hi == b->r_hi;
}

bool same_system(const HamiltonianSpec& a, const HamiltonianSpec& b) {
  if (a.n_qubits != b.n_qubits || a.omega != b.omega || a.detunings != b.detunings ||
      a.coupling_kind != b.coupling_kind || a.coupling_exponent != b.coupling_exponent ||
      a.coupling_strength != b.coupling_strength || a.table.size() != b.table.size() ||
      !same_anisotropy(a.anisotropy, b.anisotropy)) {
    return false;
  }
  for (std::size_t k = 0; k < a.table.size(); ++k) {
    if (a.table[k].i != b.table[k].i || a.table[k].j != b.table[k].j ||
        a.table[k].axes != b.table[k].axes) {
      return false;
    }
  }
  return true;
}

double base_rate_of(const HamiltonianSpec& s) {
  return s.anisotropy ? s.anisotropy->base_rate : 10.0 * std::numbers::pi;
}

struct Member {
  const RunConfig* cfg;
  std::size_t realizations;
};

struct GroupResult {
  std::vector<double> times;
  /// [member][realization][sample]
  std::vector<std::vector<std::vector<double>>> fidelity;
  std::vector<std::vector<std::string>> warnings;
  double max_residual = 0.0;
};

/// Runs realizations of several protocols in lockstep on a pool of workers.
GroupResult run_lockstep(const std::vector<Member>& members, int threads) {
  const RunConfig& lead = *members.front().cfg;
  const std::size_t n_intervals = lead.n_intervals();
  const std::size_t stride = lead.stride();
  for (const Member& m : members) {
    if (m.cfg->n_intervals() != n_intervals || m.cfg->stride() != stride) {
      throw ConfigError("mismatched sampling grids between '" + lead.display_label() +
                        "' and '" + m.cfg->display_label() + "'");
    }
  }
  const TermList terms = hamiltonian_terms(lead.system);
  const IntervalPropagator prop(terms, lead.evolution.dt, lead.evolution.substeps,
                                base_rate_of(lead.system));

  std::size_t total = 0;
  for (const Member& m : members) total = std::max(total, m.realizations);

  GroupResult out;
  out.fidelity.resize(members.size());
  out.warnings.resize(members.size());
  for (std::size_t p = 0; p < members.size(); ++p) {
    out.fidelity[p].resize(members[p].realizations);
  }
  std::vector<double> residual(total, 0.0);
  std::vector<std::exception_ptr> errors(total);

  auto work = [&](std::size_t r) {
    std::optional<AnisotropyRealization> disorder;
    if (terms.time_dependent()) {
      std::mt19937_64 rng(derive_seed(lead.master_seed, lead.freeze_disorder ? 0 : r,
                                      kDisorderStream));
      disorder = sample_anisotropy(*lead.system.anisotropy, rng);
    }
    std::vector<std::size_t> active;
    std::vector<FrameSequence> seqs;
    for (std::size_t p = 0; p < members.size(); ++p) {
      if (r >= members[p].realizations) continue;
      const RunConfig& cfg = *members[p].cfg;
      std::mt19937_64 rng(derive_seed(cfg.master_seed, r, kControlStream));
      seqs.push_back(control_frames(cfg.protocol, n_intervals, &rng));
      active.push_back(p);
    }
    std::vector<const FrameSequence*> ptrs;
    for (const auto& s : seqs) ptrs.push_back(&s);
    std::vector<std::vector<FidelitySample>> samples;
    try {
      samples = evolve_fidelities(prop, ptrs, n_intervals, stride,
                                  disorder ? &*disorder : nullptr);
    } catch (const NumericalError& e) {
      throw NumericalError("realization " + std::to_string(r) + ": " + e.what());
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
      const std::size_t p = active[a];
      std::vector<double> fe;
      fe.reserve(samples[a].size());
      for (const auto& s : samples[a]) {
        fe.push_back(s.fidelity);
        residual[r] = std::max(residual[r], s.unitarity_residual);
      }
      out.fidelity[p][r] = std::move(fe);
      if (r == 0) out.warnings[p] = seqs[a].warnings;
    }
    if (r == 0) {
      for (const auto& s : samples.front()) out.times.push_back(s.time);
    }
  };

  const int workers =
      std::max(1, std::min<int>(threads > 0 ? threads : default_threads(),
                                static_cast<int>(total)));
  std::atomic<std::size_t> next{0};
  auto loop = [&]() {
    for (std::size_t r = next++; r < total; r = next++) {
      try {
        work(r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (double v : residual) out.max_residual = std::max(out.max_residual, v);
  return out;
}

FidelityTrace reduce(const RunConfig& cfg, const std::vector<double>& times,
                     const std::vector<std::vector<double>>& fidelity) {
  FidelityTrace trace;
  trace.label = cfg.display_label();
  trace.seed = cfg.master_seed;
  const std::size_t n = fidelity.size();
  for (std::size_t k = 0; k < times.size(); ++k) {
    double sum = 0.0;
    for (const auto& f : fidelity) sum += f[k];
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& f : fidelity) ss += (f[k] - mean) * (f[k] - mean);
    const double se =
        n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    trace.records.push_back({times[k], mean, se, n});
  }
  return trace;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void RunConfig::validate() const {
  protocol.validate();
  evolution.validate();
  if (n_realizations < 1) throw ConfigError("run.realizations must be >= 1");
  if (!(total_time > 0.0)) throw ConfigError("run.total_time must be positive");
  if (protocol.inner_path.group()->n_qubits() != system.n_qubits) {
    throw DimensionError("protocol group acts on " +
                         std::to_string(protocol.inner_path.group()->n_qubits()) +
                         " qubits but the system has " + std::to_string(system.n_qubits));
  }
  if (n_intervals() < stride()) {
    throw ConfigError("run.total_time is shorter than one sampling stride");
  }
}

std::string RunConfig::display_label() const {
  return label.empty() ? std::string(protocol_name(protocol.kind)) : label;
}

std::size_t RunConfig::n_intervals() const {
  const double n = std::round(total_time / evolution.dt);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

std::size_t RunConfig::stride() const {
  return evolution.sample_stride == 0 ? protocol.group_size() : evolution.sample_stride;
}

std::size_t RunConfig::realizations() const {
  const bool time_dependent = system.anisotropy.has_value();
  if (!is_randomized(protocol.kind) && !time_dependent) return 1;
  if (!is_randomized(protocol.kind) && freeze_disorder) return 1;
  return n_realizations;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t realization,
                          std::uint64_t stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ realization) ^ (stream * 0xd1b54a32d192ed03ULL));
}

int default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

const TraceRecord& FidelityTrace::at(double t) const {
  for (const auto& r : records) {
    if (same_time(r.t, t)) return r;
  }
  throw ConfigError("trace '" + label + "' has no sample at t = " + std::to_string(t));
}

FidelityTrace run_protocol(const RunConfig& cfg, int threads) {
  return run_comparison({cfg}, threads).front();
}

std::vector<FidelityTrace> run_comparison(const std::vector<RunConfig>& cfgs,
                                          int threads) {
  if (cfgs.empty()) throw ConfigError("nothing to run");
  for (const auto& c : cfgs) {
    c.validate();
    if (!same_system(c.system, cfgs.front().system)) {
      throw ConfigError("'" + c.display_label() + "' uses a different system than '" +
                        cfgs.front().display_label() + "'");
    }
  }
  const bool time_dependent = cfgs.front().system.anisotropy.has_value();

  // Lockstep groups: same interval propagators and, when they matter, the
  // same disorder draws.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < cfgs.size(); ++k) {
    bool placed = false;
    for (auto& g : groups) {
      const RunConfig& a = cfgs[g.front()];
      const RunConfig& b = cfgs[k];
      bool same = a.evolution.dt == b.evolution.dt &&
                  a.evolution.substeps == b.evolution.substeps &&
                  a.n_intervals() == b.n_intervals() && a.stride() == b.stride();
      if (time_dependent) {
        same = same && a.master_seed == b.master_seed &&
               a.freeze_disorder == b.freeze_disorder;
      }
      if (same) {
        g.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({k});
  }

  std::vector<FidelityTrace> traces(cfgs.size());
  for (const auto& g : groups) {
    std::vector<Member> members;
    for (std::size_t k : g) members.push_back({&cfgs[k], cfgs[k].realizations()});
    const GroupResult res = run_lockstep(members, threads);
    for (std::size_t a = 0; a < g.size(); ++a) {
      FidelityTrace t = reduce(cfgs[g[a]], res.times, res.fidelity[a]);
      t.max_unitarity_residual = res.max_residual;
      t.warnings = res.warnings[a];
      traces[g[a]] = std::move(t);
    }
  }

  const auto& grid = traces.front().records;
  for (const auto& t : traces) {
    bool ok = t.records.size() == grid.size();
    for (std::size_t k = 0; ok && k < grid.size(); ++k) ok = same_time(t.records[k].t, grid[k].t);
    if (!ok) {
      throw ConfigError("mismatched sampling grids between '" + traces.front().label +
                        "' and '" + t.label + "'");
    }
  }
  return traces;
}

RealizationTraces run_realizations(const RunConfig& cfg, std::size_t count, int threads) {
  cfg.validate();
  if (count < 1) throw ConfigError("at least one realization is required");
  GroupResult res = run_lockstep({{&cfg, count}}, threads);
  return {std::move(res.times), std::move(res.fidelity.front()), res.max_residual};
}

ScalingFit scaling_fit(const std::vector<double>& dts,
                       const std::vector<FidelityTrace>& traces, double t_probe) {
  if (dts.size() != traces.size()) {
    throw ConfigError("scaling fit needs one trace per time step");
  }
  if (dts.size() < 4) throw ConfigError("scaling fit needs at least 4 time steps");
  ScalingFit fit;
  std::vector<double> x, y;
  for (std::size_t k = 0; k < dts.size(); ++k) {
    const double inf = 1.0 - traces[k].at(t_probe).fe_mean;
    if (inf <= kInfidelityFloor) {
      fit.warnings.push_back("dt = " + std::to_string(dts[k]) +
                             " excluded: infidelity at numerical floor");
      continue;
    }
    x.push_back(std::log(dts[k]));
    y.push_back(std::log(inf));
  }
  fit.points = x.size();
  if (x.size() < 2) throw NumericalError("fewer than two usable points for the scaling fit");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k] / n;
    my += y[k] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double ssr = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double e = y[k] - fit.intercept - fit.slope * x[k];
      ssr += e * e;
    }
    fit.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
    const boost::math::students_t dist(n - 2.0);
    const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
    fit.ci_low = fit.slope - q * fit.slope_stderr;
    fit.ci_high = fit.slope + q * fit.slope_stderr;
  } else {
    fit.warnings.push_back("two points: no confidence interval");
    fit.ci_low = fit.ci_high = fit.slope;
  }
  return fit;
}

DerandomizeResult derandomize(const RunConfig& cfg, std::size_t n_candidates,
                              double t_objective, int threads) {
  if (!is_randomized(cfg.protocol.kind)) {
    throw DomainError("derandomization needs a randomized protocol, got " +
                      std::string(protocol_name(cfg.protocol.kind)));
  }
  if (cfg.system.anisotropy) {
    throw DomainError("derandomization is only meaningful for a static system");
  }
  const RealizationTraces rt = run_realizations(cfg, n_candidates, threads);
  std::size_t idx = rt.times.size();
  for (std::size_t k = 0; k < rt.times.size(); ++k) {
    if (same_time(rt.times[k], t_objective)) idx = k;
  }
  if (idx == rt.times.size()) {
    throw ConfigError("no sample at the objective time " + std::to_string(t_objective));
  }
  DerandomizeResult out;
  for (std::size_t c = 0; c < n_candidates; ++c) {
    out.ranking.push_back(
        {c, derive_seed(cfg.master_seed, c, kControlStream), rt.fidelity[c][idx]});
  }
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [](const Candidate& a, const Candidate& b) { return a.objective > b.objective; });
  out.best = out.ranking.front();
  out.best_trace = reduce(cfg, rt.times, {rt.fidelity[out.best.index]});
  out.best_trace.label = cfg.display_label() + "-best";
  out.best_trace.seed = out.best.seed;
  out.best_trace.max_unitarity_residual = rt.max_unitarity_residual;
  return out;
}

void write_csv(std::ostream& out, const std::vector<FidelityTrace>& traces) {
  out << "protocol,seed,n_real,t_J,fe_mean,fe_stderr\n";
  char buf[64];
  for (const auto& t : traces) {
    for (const auto& r : t.records) {
      out << t.label << ',' << t.seed << ',' << r.n_real << ',';
      std::snprintf(buf, sizeof buf, "%.17g", r.t);
      out << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", r.fe_mean);
      out << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", r.fe_stderr);
      out << buf << '\n';
    }
  }
}

std::vector<FidelityTrace> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "protocol,seed,n_real,t_J,fe_mean,fe_stderr") {
    throw ConfigError("line 1: unexpected CSV header");
  }
  std::vector<FidelityTrace> traces;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 6) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 6 fields");
    }
    try {
      if (traces.empty() || traces.back().label != cells[0]) {
        traces.emplace_back();
        traces.back().label = cells[0];
        traces.back().seed = std::stoull(cells[1]);
      }
      traces.back().records.push_back({std::stod(cells[3]), std::stod(cells[4]),
                                       std::stod(cells[5]),
                                       static_cast<std::size_t>(std::stoull(cells[2]))});
    } catch (const std::logic_error&) {
      throw ConfigError("line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return traces;
}

}  // namespace decouple

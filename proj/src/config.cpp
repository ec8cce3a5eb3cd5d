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

#include "decouple/config.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "decouple/errors.hpp"

namespace decouple {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + fmt(v[k]);
  return out;
}

/// Typed view of the resolved settings; errors carry the value's origin.
class Reader {
 public:
  using Values = std::map<std::string, std::pair<std::string, std::string>>;
  explicit Reader(Values v) : v_(std::move(v)) {}

  const std::string& str(const std::string& key) const { return v_.at(key).first; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(v_.at(key).second + ": " + key + " " + what);
  }

  double real(const std::string& key) const {
    const std::string& s = str(key);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      fail(key, "expects a number, got '" + s + "'");
    }
    return v;
  }

  long long integer(const std::string& key) const {
    const std::string& s = str(key);
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      fail(key, "expects an integer, got '" + s + "'");
    }
    return v;
  }

  std::size_t count(const std::string& key, long long min) const {
    const long long v = integer(key);
    if (v < min) fail(key, "must be >= " + std::to_string(min));
    return static_cast<std::size_t>(v);
  }

  std::uint64_t seed(const std::string& key) const {
    const std::string& s = str(key);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      fail(key, "expects an unsigned 64-bit integer, got '" + s + "'");
    }
    return v;
  }

  bool flag(const std::string& key) const {
    const std::string& s = str(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail(key, "expects true or false, got '" + s + "'");
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    if (str(key).empty()) return out;
    for (const auto& item : split(str(key), ',')) {
      double v = 0.0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
      if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
        fail(key, "expects comma-separated numbers, got '" + item + "'");
      }
      out.push_back(v);
    }
    return out;
  }

 private:
  Values v_;
};

GroupPtr named_group(const std::string& name, int n, const std::string& path_file) {
  if (name == "nested") return nested_pauli_group(n);
  if (name == "g8") {
    if (n != 8) throw ConfigError("group g8 acts on 8 qubits, system has " + std::to_string(n));
    return g8_group();
  }
  if (name == "nn") return nn_collective_group(n);
  if (name == "pauli") return full_pauli_group(n);
  if (name == "file") {
    if (path_file.empty()) throw ConfigError("protocol.path_file is required for group 'file'");
    return make_group(path_file, load_frames_file(path_file, n));
  }
  throw ConfigError("unknown group '" + name + "' (nested, g8, nn, pauli, file)");
}

std::string group_name(const DecouplingGroup& g) {
  const std::string& label = g.label();
  const std::string n = std::to_string(g.n_qubits());
  if (label == "nested" + n) return "nested";
  if (label == "g8") return "g8";
  if (label == "nn" + n) return "nn";
  if (label == "pauli" + n) return "pauli";
  return "file";
}

ControlPath make_path(const Reader& r, const GroupPtr& group) {
  const std::string& spec = r.str("protocol.inner_path");
  if (spec == "listed") return listed_path(group);
  if (spec == "gray") return gray_code_path(group);
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    const std::string digits = spec.substr(7);
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
      r.fail("protocol.inner_path", "expects random:SEED, got '" + spec + "'");
    }
    std::mt19937_64 rng(seed);
    return random_path(group, rng);
  }
  std::vector<std::size_t> order;
  for (const auto& item : split(spec, ',')) {
    std::size_t v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      r.fail("protocol.inner_path",
             "expects listed, gray, random:SEED or an index list, got '" + spec + "'");
    }
    order.push_back(v);
  }
  return ControlPath(group, std::move(order));
}

std::vector<PairCoupling> parse_table(const Reader& r, int n) {
  std::vector<PairCoupling> table;
  const std::string& text = r.str("coupling.table");
  if (text.empty()) return table;
  for (const auto& item : split(text, ';')) {
    const auto colon = item.find(':');
    const auto dash = item.find('-');
    PairCoupling p;
    bool ok = colon != std::string::npos && dash != std::string::npos && dash < colon;
    if (ok) {
      try {
        p.i = std::stoi(item.substr(0, dash)) - 1;
        p.j = std::stoi(item.substr(dash + 1, colon - dash - 1)) - 1;
        const auto axes = split(item.substr(colon + 1), ',');
        ok = axes.size() == 3;
        for (std::size_t a = 0; ok && a < 3; ++a) p.axes[a] = std::stod(axes[a]);
      } catch (const std::logic_error&) {
        ok = false;
      }
    }
    if (!ok) r.fail("coupling.table", "entries look like 'i-j:jx,jy,jz', got '" + item + "'");
    if (p.i < 0 || p.j < 0 || p.i >= n || p.j >= n || p.i == p.j) {
      r.fail("coupling.table", "pair '" + item + "' is outside the register");
    }
    if (p.i > p.j) std::swap(p.i, p.j);
    table.push_back(p);
  }
  return table;
}

HamiltonianSpec build_system(const Reader& r) {
  HamiltonianSpec sys;
  const long long n = r.integer("n_qubits");
  if (n < 1 || n > kMaxDenseQubits) {
    r.fail("n_qubits", "must lie in 1.." + std::to_string(kMaxDenseQubits));
  }
  sys.n_qubits = static_cast<int>(n);
  sys.omega = r.real("omega");
  sys.detunings = r.reals("detuning");
  if (!sys.detunings.empty() && sys.detunings.size() != static_cast<std::size_t>(n)) {
    r.fail("detuning", "needs one value per qubit");
  }
  const std::string& kind = r.str("coupling.kind");
  if (kind == "dipolar") {
    sys.coupling_kind = CouplingKind::DipolarPowerLaw;
  } else if (kind == "nn") {
    sys.coupling_kind = CouplingKind::NearestNeighbor;
  } else if (kind == "table") {
    sys.coupling_kind = CouplingKind::ExplicitTable;
    sys.table = parse_table(r, sys.n_qubits);
  } else {
    r.fail("coupling.kind", "must be dipolar, nn or table, got '" + kind + "'");
  }
  sys.coupling_exponent = r.real("coupling.exponent");
  sys.coupling_strength = r.real("coupling.j");
  if (r.flag("anisotropy.enabled")) {
    AnisotropyConfig a;
    a.harmonics = static_cast<int>(r.count("anisotropy.harmonics", 1));
    a.r_lo = r.real("anisotropy.r_lo");
    a.r_hi = r.real("anisotropy.r_hi");
    if (!(a.r_lo <= a.r_hi)) r.fail("anisotropy.r_hi", "must be >= anisotropy.r_lo");
    a.base_rate = r.real("anisotropy.base_rate");
    sys.anisotropy = a;
  }
  const std::string& frame = r.str("frame");
  if (frame == "rotating") {
    const RotatingFrame rf = rotating_frame_hamiltonian(sys);
    if (rf.requires_time_resolved) {
      r.fail("frame", "is not supported: the rotation does not commute with the couplings");
    }
    sys = rf.spec;
  } else if (frame != "lab") {
    r.fail("frame", "must be lab or rotating, got '" + frame + "'");
  }
  return sys;
}

RunConfig build_config(const Reader& r) {
  const HamiltonianSpec sys = build_system(r);

  const std::string& kind_text = r.str("protocol.kind");
  if (kind_text.empty()) r.fail("protocol.kind", "is required");
  const ProtocolKind pkind = parse_protocol_kind(kind_text);
  const GroupPtr inner =
      named_group(r.str("protocol.inner_group"), sys.n_qubits, r.str("protocol.path_file"));
  ProtocolSpec proto(pkind, make_path(r, inner));
  proto.level = static_cast<int>(r.count("protocol.level", 0));
  proto.arity = r.count("protocol.arity", 0);
  proto.switch_index = r.count("protocol.switch_cycle", 0) * inner->size();
  if (pkind == ProtocolKind::Emd) {
    const std::string& outer = r.str("protocol.outer_group");
    proto.outer_group = outer == "inner" ? inner : named_group(outer, sys.n_qubits, "");
  }

  RunConfig cfg(sys, std::move(proto));
  cfg.label = r.str("protocol.label");
  cfg.master_seed = r.seed("protocol.seed");
  cfg.evolution.dt = r.real("evolution.dt");
  if (!(cfg.evolution.dt > 0.0)) r.fail("evolution.dt", "must be positive");
  if (r.str("evolution.substeps") == "auto") {
    cfg.evolution.substeps =
        sys.anisotropy ? default_substeps(*sys.anisotropy, cfg.evolution.dt) : 1;
  } else {
    cfg.evolution.substeps = static_cast<int>(r.count("evolution.substeps", 1));
  }
  cfg.evolution.sample_stride = r.count("evolution.sample_stride", 0);
  if (r.flag("evolution.intra_cycle")) cfg.evolution.sample_stride = 1;
  cfg.n_realizations = r.count("run.realizations", 1);
  cfg.total_time = r.real("run.total_time");
  cfg.freeze_disorder = r.flag("anisotropy.freeze");
  cfg.validate();
  return cfg;
}

std::map<std::string, std::string> to_settings(const RunConfig& cfg) {
  std::map<std::string, std::string> s;
  const HamiltonianSpec& sys = cfg.system;
  s["n_qubits"] = std::to_string(sys.n_qubits);
  s["omega"] = fmt(sys.omega);
  s["detuning"] = fmt_list(sys.detunings);
  s["frame"] = "lab";
  s["coupling.kind"] = sys.coupling_kind == CouplingKind::DipolarPowerLaw ? "dipolar"
                       : sys.coupling_kind == CouplingKind::NearestNeighbor ? "nn"
                                                                            : "table";
  s["coupling.exponent"] = fmt(sys.coupling_exponent);
  s["coupling.j"] = fmt(sys.coupling_strength);
  std::string table;
  for (const auto& p : sys.table) {
    if (!table.empty()) table += ';';
    table += std::to_string(p.i + 1) + "-" + std::to_string(p.j + 1) + ":" +
             fmt_list({p.axes[0], p.axes[1], p.axes[2]});
  }
  s["coupling.table"] = table;
  const AnisotropyConfig a = sys.anisotropy.value_or(AnisotropyConfig{});
  s["anisotropy.enabled"] = sys.anisotropy ? "true" : "false";
  s["anisotropy.harmonics"] = std::to_string(a.harmonics);
  s["anisotropy.r_lo"] = fmt(a.r_lo);
  s["anisotropy.r_hi"] = fmt(a.r_hi);
  s["anisotropy.base_rate"] = fmt(a.base_rate);
  s["anisotropy.freeze"] = cfg.freeze_disorder ? "true" : "false";

  const ProtocolSpec& p = cfg.protocol;
  s["protocol.kind"] = std::string(protocol_name(p.kind));
  s["protocol.label"] = cfg.label;
  const DecouplingGroup& inner = *p.inner_path.group();
  s["protocol.inner_group"] = group_name(inner);
  s["protocol.path_file"] = group_name(inner) == "file" ? inner.label() : "";
  const auto& order = p.inner_path.order();
  std::vector<std::size_t> listed(order.size());
  std::iota(listed.begin(), listed.end(), std::size_t{0});
  if (order == listed) {
    s["protocol.inner_path"] = "listed";
  } else {
    std::string text;
    for (std::size_t k = 0; k < order.size(); ++k) text += (k ? "," : "") + std::to_string(order[k]);
    s["protocol.inner_path"] = text;
  }
  s["protocol.outer_group"] =
      !p.outer_group                           ? "pauli"
      : p.outer_group.get() == &inner          ? "inner"
                                               : group_name(*p.outer_group);
  s["protocol.level"] = std::to_string(p.level);
  s["protocol.arity"] = std::to_string(p.arity);
  s["protocol.switch_cycle"] = std::to_string(p.switch_index / p.group_size());
  s["protocol.seed"] = std::to_string(cfg.master_seed);
  s["evolution.dt"] = fmt(cfg.evolution.dt);
  s["evolution.substeps"] = std::to_string(cfg.evolution.substeps);
  s["evolution.sample_stride"] = std::to_string(cfg.evolution.sample_stride);
  s["evolution.intra_cycle"] = "false";
  s["run.realizations"] = std::to_string(cfg.n_realizations);
  s["run.total_time"] = fmt(cfg.total_time);
  return s;
}

Reader resolve(const Reader::Values& values) {
  Reader::Values v;
  for (const auto& k : config_keys()) v[k.name] = {k.default_value, "default"};
  const auto preset = values.find("preset");
  if (preset != values.end() && !preset->second.first.empty()) {
    Preset p;
    try {
      p = make_preset(preset->second.first);
    } catch (const ConfigError& e) {
      throw ConfigError(preset->second.second + ": " + e.what());
    }
    for (auto& [key, value] : to_settings(p.runs.front())) {
      v[key] = {value, "preset " + p.name};
    }
  }
  for (const auto& [key, entry] : values) v[key] = entry;
  return Reader(std::move(v));
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"preset", "", "start from the first run of a named preset"},
      {"n_qubits", "4", "register size N"},
      {"omega", "0", "common Larmor frequency, units of J"},
      {"detuning", "", "comma-separated per-qubit offsets"},
      {"frame", "lab", "lab | rotating (drop the common omega term)"},
      {"coupling.kind", "nn", "dipolar | nn | table"},
      {"coupling.exponent", "3", "power-law exponent for dipolar couplings"},
      {"coupling.j", "1", "coupling scale J"},
      {"coupling.table", "", "explicit pairs 'i-j:jx,jy,jz;...' (1-based)"},
      {"anisotropy.enabled", "false", "modulate nearest-neighbour z couplings by Delta(t)"},
      {"anisotropy.harmonics", "5", "number of sine harmonics"},
      {"anisotropy.r_lo", "0.9", "lower bound of the random rates"},
      {"anisotropy.r_hi", "1.1", "upper bound of the random rates"},
      {"anisotropy.base_rate", fmt(10.0 * std::numbers::pi), "angular base rate"},
      {"anisotropy.freeze", "false", "reuse one disorder draw for every realization"},
      {"protocol.kind", "", "free|pdd|sdd|cdd|nrd|emd|rpd|srpd|interpolated (required)"},
      {"protocol.label", "", "curve label in CSV output"},
      {"protocol.inner_group", "nested", "nested | g8 | nn | pauli | file"},
      {"protocol.path_file", "", "frame file for inner_group = file"},
      {"protocol.inner_path", "listed", "listed | gray | random:SEED | index list"},
      {"protocol.outer_group", "pauli", "EMD border group: pauli | inner | nested | g8 | nn"},
      {"protocol.level", "1", "CDD concatenation level"},
      {"protocol.arity", "0", "pulses per CDD level (0 = |G|)"},
      {"protocol.switch_cycle", "0", "cycles of CDD before SRPD (interpolated)"},
      {"protocol.seed", "1", "master seed"},
      {"evolution.dt", "0.05", "interval length, units of 1/J"},
      {"evolution.substeps", "auto", "integrator substeps per interval"},
      {"evolution.sample_stride", "0", "intervals between samples (0 = |G|)"},
      {"evolution.intra_cycle", "false", "sample every interval"},
      {"run.realizations", "100", "control realizations"},
      {"run.total_time", "1", "total time J*T"},
  };
  return keys;
}

void Settings::assign(std::string key, std::string value, std::string origin) {
  const auto& keys = config_keys();
  if (std::none_of(keys.begin(), keys.end(), [&](const ConfigKey& k) { return k.name == key; })) {
    throw ConfigError(origin + ": unknown key '" + key + "'");
  }
  values_[std::move(key)] = {std::move(value), std::move(origin)};
}

void Settings::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string origin = "line " + std::to_string(line_no);
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ": expected key = value");
    assign(trim(body.substr(0, eq)), trim(body.substr(eq + 1)), origin);
  }
}

void Settings::set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("--set " + std::string(assignment) + ": expected key=value");
  }
  assign(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)),
         "--set " + std::string(assignment));
}

RunConfig Settings::build() const { return build_config(resolve(values_)); }

HamiltonianSpec Settings::build_system() const { return decouple::build_system(resolve(values_)); }

RunConfig parse_config(std::string_view text) {
  Settings s;
  s.parse_text(text);
  return s.build();
}

std::string echo_config(const RunConfig& cfg) {
  const auto s = to_settings(cfg);
  std::string out;
  for (const auto& k : config_keys()) {
    const auto it = s.find(k.name);
    if (it == s.end()) continue;
    out += k.name + " = " + it->second + "\n";
  }
  return out;
}

}  // namespace decouple

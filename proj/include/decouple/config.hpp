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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "decouple/experiment.hpp"

namespace decouple {

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string help;
};

/// Every key accepted by the flat key=value format, in echo order.
const std::vector<ConfigKey>& config_keys();

/// Flat key=value settings with the source line of every value.
class Settings {
 public:
  /// Parses `text` ('#' starts a comment). Unknown keys and malformed lines
  /// throw ConfigError naming the line.
  void parse_text(std::string_view text);
  /// One "key=value" override, e.g. from the command line.
  void set(std::string_view assignment);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  /// Resolves defaults (and the preset named by `preset`, if any) and
  /// validates the result.
  RunConfig build() const;
  /// Only the system keys; protocol keys are ignored.
  HamiltonianSpec build_system() const;

 private:
  void assign(std::string key, std::string value, std::string origin);
  /// key -> (value, origin)
  std::map<std::string, std::pair<std::string, std::string>> values_;
};

RunConfig parse_config(std::string_view text);

/// Canonical key = value listing of a config; parse_config accepts it back.
std::string echo_config(const RunConfig& cfg);

}  // namespace decouple

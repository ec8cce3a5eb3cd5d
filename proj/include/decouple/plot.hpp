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

#include <string>
#include <vector>

#include "decouple/experiment.hpp"

namespace decouple {

/// Self-contained SVG with one mean curve and a mean ± stderr band per trace.
std::string render_svg(const std::vector<FidelityTrace>& traces, const std::string& title);

/// gnuplot script that reads `csv_path` directly and draws the same figure
/// into `image_path` (PNG).
std::string gnuplot_script(const std::vector<FidelityTrace>& traces, const std::string& csv_path,
                           const std::string& image_path);

}  // namespace decouple

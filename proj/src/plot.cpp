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

#include "decouple/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace decouple {

namespace {

constexpr const char* kPalette[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f",
                                    "#bcbd22", "#393b79"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Tick spacing of 1, 2 or 5 times a power of ten giving about `target` ticks.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_svg(const std::vector<FidelityTrace>& traces, const std::string& title) {
  const double width = 820, height = 520;
  const double left = 70, right = 170, top = 40, bottom = 60;
  const double pw = width - left - right, ph = height - top - bottom;

  double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
  double fmin = 1.0;
  for (const auto& t : traces) {
    for (const auto& r : t.records) {
      tmin = std::min(tmin, r.t);
      tmax = std::max(tmax, r.t);
      fmin = std::min(fmin, r.fe_mean - r.fe_stderr);
    }
  }
  if (!std::isfinite(tmin)) tmin = 0.0, tmax = 1.0;
  tmin = std::min(tmin, 0.0);
  if (tmax <= tmin) tmax = tmin + 1.0;
  const double ystep = tick_step(1.0 - std::max(0.0, fmin), 5);
  const double ymin = std::max(0.0, std::floor(fmin / ystep) * ystep);
  const double ymax = 1.0;
  auto x = [&](double t) { return left + (t - tmin) / (tmax - tmin) * pw; };
  auto y = [&](double f) {
    return top + (ymax - std::clamp(f, ymin, ymax)) / (ymax - ymin) * ph;
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"" + num(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(title) + "</text>\n";
  svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xstep = tick_step(tmax - tmin, 8);
  for (double t = std::ceil(tmin / xstep) * xstep; t <= tmax + 1e-9 * xstep; t += xstep) {
    svg += "<line x1=\"" + num(x(t)) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x(t)) +
           "\" y2=\"" + num(top + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(x(t)) + "\" y=\"" + num(top + ph + 18) +
           "\" text-anchor=\"middle\">" + num(t) + "</text>\n";
  }
  for (double f = ymin; f <= ymax + 1e-9; f += ystep) {
    svg += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(y(f)) + "\" x2=\"" + num(left) +
           "\" y2=\"" + num(y(f)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y(f) + 4) + "\" text-anchor=\"end\">" +
           num(f) + "</text>\n";
  }
  svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 15) +
         "\" text-anchor=\"middle\">J T</text>\n";
  svg += "<text x=\"18\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(top + ph / 2) + ")\">mean F_e</text>\n";

  for (std::size_t k = 0; k < traces.size(); ++k) {
    const auto& t = traces[k];
    const std::string color = kPalette[k % std::size(kPalette)];
    std::string band, line;
    for (const auto& r : t.records) band += num(x(r.t)) + "," + num(y(r.fe_mean + r.fe_stderr)) + " ";
    for (auto it = t.records.rbegin(); it != t.records.rend(); ++it) {
      band += num(x(it->t)) + "," + num(y(it->fe_mean - it->fe_stderr)) + " ";
    }
    for (const auto& r : t.records) line += num(x(r.t)) + "," + num(y(r.fe_mean)) + " ";
    svg += "<polygon points=\"" + band + "\" fill=\"" + color + "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    svg += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    const double ly = top + 10 + 18 * static_cast<double>(k);
    svg += "<line x1=\"" + num(left + pw + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(left + pw + 36) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(left + pw + 42) + "\" y=\"" + num(ly + 4) + "\">" + escape(t.label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string gnuplot_script(const std::vector<FidelityTrace>& traces, const std::string& csv_path,
                           const std::string& image_path) {
  std::string s;
  s += "set terminal pngcairo size 900,560\n";
  s += "set output '" + image_path + "'\n";
  s += "set datafile separator ','\n";
  s += "set key outside right\n";
  s += "set xlabel 'J T'\n";
  s += "set ylabel 'mean F_e'\n";
  s += "set yrange [*:1]\n";
  s += "f = '" + csv_path + "'\n";
  s += "plot \\\n";
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const std::string sel = "(strcol(1) eq '" + traces[k].label + "' ? ";
    const std::string color = kPalette[k % std::size(kPalette)];
    s += "  f every ::1 using 4:" + sel + "$5-$6 : NaN):" + sel +
         "$5+$6 : NaN) with filledcurves fc rgb '" + color +
         "' fs transparent solid 0.2 notitle, \\\n";
    s += "  f every ::1 using 4:" + sel + "$5 : NaN) with lines lc rgb '" + color + "' title '" +
         traces[k].label + "'";
    s += k + 1 < traces.size() ? ", \\\n" : "\n";
  }
  return s;
}

}  // namespace decouple

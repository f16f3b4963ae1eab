// Copyright 2026 The commonlines Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/svg.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <fmt/format.h>

namespace commonlines::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 220.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 40.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

struct Series {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<double> y;
};

void Panel(std::string& out, double top, const std::string& title,
           std::span<const double> x, std::span<const Series> series) {
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -y_min;
  for (const Series& s : series) {
    for (double v : s.y) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (!(y_max > y_min)) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;
  double x_min = x.front();
  double x_max = x.back();
  if (!(x_max > x_min)) x_max = x_min + 1.0;

  const double left = kMarginLeft;
  const double right = kWidth - kMarginRight;
  const double plot_top = top + kMarginTop;
  const double bottom = top + kPanelHeight - kMarginBottom;
  auto px = [&](double v) {
    return left + (v - x_min) / (x_max - x_min) * (right - left);
  };
  auto py = [&](double v) {
    return bottom - (v - y_min) / (y_max - y_min) * (bottom - plot_top);
  };

  out += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"13\" "
      "font-weight=\"bold\">{}</text>\n",
      left, top + 18.0, title);
  out += fmt::format(
      "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
      "fill=\"none\" stroke=\"#444\"/>\n",
      left, plot_top, right - left, bottom - plot_top);
  for (int k = 0; k <= 4; ++k) {
    const double xv = x_min + (x_max - x_min) * k / 4.0;
    const double yv = y_min + (y_max - y_min) * k / 4.0;
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
        "text-anchor=\"middle\">{:.4g}</text>\n",
        px(xv), bottom + 14.0, xv);
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
        "text-anchor=\"end\">{:.4g}</text>\n",
        left - 4.0, py(yv) + 3.0, yv);
  }
  out += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" "
      "text-anchor=\"middle\">demand x</text>\n",
      (left + right) / 2.0, bottom + 30.0);

  double legend_y = plot_top + 12.0;
  for (const Series& s : series) {
    std::string points;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!std::isfinite(s.y[j])) continue;
      points += fmt::format("{:.2f},{:.2f} ", px(x[j]), py(s.y[j]));
    }
    out += fmt::format(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} "
        "points=\"{}\"/>\n",
        s.color, s.dashed ? " stroke-dasharray=\"5,3\"" : "", points);
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" fill=\"{}\">{}"
        "</text>\n",
        right - 90.0, legend_y, s.color, s.label);
    legend_y += 12.0;
  }
}

}  // namespace

std::string RenderSweepSvg(std::span<const SweepRow> rows) {
  const double height = 3.0 * kPanelHeight;
  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
      "font-family=\"sans-serif\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, height, kWidth, height);
  if (rows.empty()) {
    out += "</svg>\n";
    return out;
  }

  std::vector<double> x;
  for (const SweepRow& r : rows) x.push_back(r.demand);
  auto column = [&](const std::function<double(const SweepRow&)>& get) {
    std::vector<double> y;
    for (const SweepRow& r : rows) y.push_back(get(r));
    return y;
  };

  const std::size_t n = rows.front().equilibrium_flows.size();
  std::vector<Series> flows;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string color = kPalette[i % std::size(kPalette)];
    flows.push_back({fmt::format("v_ue_{}", i + 1), color, false,
                     column([i](const SweepRow& r) {
                       return r.equilibrium_flows[i];
                     })});
    flows.push_back({fmt::format("v_so_{}", i + 1), color, true,
                     column([i](const SweepRow& r) {
                       return r.optimum_flows[i];
                     })});
  }
  Panel(out, 0.0, "Line flows", x, flows);

  const std::vector<Series> costs = {
      {"wsc", kPalette[0], false,
       column([](const SweepRow& r) { return r.wardrop_cost; })},
      {"osc", kPalette[1], true,
       column([](const SweepRow& r) { return r.optimal_cost; })}};
  Panel(out, kPanelHeight, "Social cost", x, costs);

  const std::vector<Series> poa = {
      {"poa", kPalette[2], false,
       column([](const SweepRow& r) { return r.price_of_anarchy; })}};
  Panel(out, 2.0 * kPanelHeight, "Price of anarchy", x, poa);

  out += "</svg>\n";
  return out;
}

}  // namespace commonlines::cli

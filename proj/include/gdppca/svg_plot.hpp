// Copyright 2026 The gdppca Authors.
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
//
#ifndef GDPPCA_SVG_PLOT_HPP_
#define GDPPCA_SVG_PLOT_HPP_

/*!@file
 * Line charts of harness results as a self-contained SVG.
 *
 * One panel per (model, d), one polyline per method, y = mean loss. The x
 * axis is epsilon when a panel has several budgets at a single n, otherwise
 * n. Output is a pure function of the rows: coordinates are printed with
 * fixed precision and every collection is iterated in sorted order.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gdppca/errors.hpp"
#include "gdppca/harness.hpp"

namespace gdppca {

enum class PlotMetric { kAuto, kSinTheta, kProjFrob };

struct PlotOptions {
  PlotMetric metric = PlotMetric::kAuto;
  std::string title;
};

namespace detail {

inline std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};

}  // namespace detail

/// Renders rows (harness schema) to an SVG document. Throws ConfigError when
/// there is nothing to draw.
inline std::string render_svg(const std::vector<ResultRow>& rows, const PlotOptions& opts = {}) {
  const std::vector<SummaryRow> table = summarize(rows);
  std::vector<const SummaryRow*> usable;
  for (const auto& s : table) {
    if (s.count > 0) usable.push_back(&s);
  }
  if (usable.empty()) throw ConfigError("no finite result rows to plot");

  PlotMetric metric = opts.metric;
  if (metric == PlotMetric::kAuto) {
    const bool all_nonprivate = std::all_of(usable.begin(), usable.end(), [](const SummaryRow* s) {
      return std::isinf(s->epsilon);
    });
    metric = all_nonprivate ? PlotMetric::kProjFrob : PlotMetric::kSinTheta;
  }
  const bool frob = metric == PlotMetric::kProjFrob;
  const std::string y_label = frob ? "mean ||P_hat - P||_F" : "mean sin(theta)";

  using PanelKey = std::pair<std::string, Index>;
  std::map<PanelKey, std::vector<const SummaryRow*>> panels;
  std::set<std::string> methods;
  for (const SummaryRow* s : usable) {
    panels[{s->model, s->d}].push_back(s);
    methods.insert(s->method);
  }
  std::map<std::string, std::string> color;
  {
    std::size_t k = 0;
    for (const auto& m : methods) color[m] = detail::kPalette[k++ % std::size(detail::kPalette)];
  }

  constexpr double kPanelW = 360, kPanelH = 280, kMarginL = 60, kMarginR = 20, kMarginT = 40,
                   kMarginB = 50, kLegendW = 140;
  const double width = kLegendW + static_cast<double>(panels.size()) * kPanelW;
  const double height = kPanelH + 30;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fixed(width, 0)
      << "\" height=\"" << detail::fixed(height, 0) << "\" viewBox=\"0 0 "
      << detail::fixed(width, 0) << " " << detail::fixed(height, 0) << "\" "
      << "font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty()) {
    svg << "<text x=\"" << detail::fixed(width / 2, 1) << "\" y=\"16\" text-anchor=\"middle\" "
        << "font-size=\"13\">" << detail::xml_escape(opts.title) << "</text>\n";
  }

  std::size_t panel_index = 0;
  for (const auto& [key, entries] : panels) {
    std::set<double> eps_values;
    std::set<Index> n_values;
    for (const SummaryRow* s : entries) {
      eps_values.insert(s->epsilon);
      n_values.insert(s->n);
    }
    const bool x_is_eps = eps_values.size() > 1 && n_values.size() == 1;
    auto x_of = [&](const SummaryRow* s) {
      return x_is_eps ? s->epsilon : static_cast<double>(s->n);
    };
    auto y_of = [&](const SummaryRow* s) { return frob ? s->proj_frob_mean : s->sin_theta_mean; };

    double x_min = 1e300, x_max = -1e300, y_max = 0.0;
    for (const SummaryRow* s : entries) {
      x_min = std::min(x_min, x_of(s));
      x_max = std::max(x_max, x_of(s));
      y_max = std::max(y_max, y_of(s));
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    y_max = y_max > 0 ? y_max * 1.1 : 1.0;

    const double ox = static_cast<double>(panel_index) * kPanelW + kMarginL;
    const double oy = kMarginT;
    const double pw = kPanelW - kMarginL - kMarginR;
    const double ph = kPanelH - kMarginT - kMarginB + 20;
    auto px = [&](double x) { return ox + (x - x_min) / (x_max - x_min) * pw; };
    auto py = [&](double y) { return oy + ph - y / y_max * ph; };

    svg << "<g>\n";
    svg << "<text x=\"" << detail::fixed(ox + pw / 2, 1) << "\" y=\"" << detail::fixed(oy - 8, 1)
        << "\" text-anchor=\"middle\">" << detail::xml_escape(key.first)
        << ", d = " << key.second << "</text>\n";
    svg << "<rect x=\"" << detail::fixed(ox, 1) << "\" y=\"" << detail::fixed(oy, 1)
        << "\" width=\"" << detail::fixed(pw, 1) << "\" height=\"" << detail::fixed(ph, 1)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      const double yv = y_max * t / 4.0;
      svg << "<text x=\"" << detail::fixed(ox - 4, 1) << "\" y=\"" << detail::fixed(py(yv) + 4, 1)
          << "\" text-anchor=\"end\">" << detail::fixed(yv, 3) << "</text>\n";
    }
    std::set<double> x_ticks;
    for (const SummaryRow* s : entries) x_ticks.insert(x_of(s));
    for (double xv : x_ticks) {
      svg << "<text x=\"" << detail::fixed(px(xv), 1) << "\" y=\"" << detail::fixed(oy + ph + 14, 1)
          << "\" text-anchor=\"middle\">" << detail::tick_label(xv) << "</text>\n";
    }
    svg << "<text x=\"" << detail::fixed(ox + pw / 2, 1) << "\" y=\""
        << detail::fixed(oy + ph + 32, 1) << "\" text-anchor=\"middle\">"
        << (x_is_eps ? "epsilon" : "n") << "</text>\n";
    svg << "<text transform=\"translate(" << detail::fixed(ox - 44, 1) << ","
        << detail::fixed(oy + ph / 2, 1) << ") rotate(-90)\" text-anchor=\"middle\">"
        << detail::xml_escape(y_label) << "</text>\n";

    std::map<std::string, std::vector<std::pair<double, double>>> lines;
    for (const SummaryRow* s : entries) lines[s->method].emplace_back(x_of(s), y_of(s));
    for (auto& [method, pts] : lines) {
      std::sort(pts.begin(), pts.end());
      svg << "<polyline fill=\"none\" stroke=\"" << color[method] << "\" stroke-width=\"1.8\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        svg << (i ? " " : "") << detail::fixed(px(pts[i].first)) << ","
            << detail::fixed(py(pts[i].second));
      }
      svg << "\"/>\n";
      for (const auto& p : pts) {
        svg << "<circle cx=\"" << detail::fixed(px(p.first)) << "\" cy=\""
            << detail::fixed(py(p.second)) << "\" r=\"2.5\" fill=\"" << color[method] << "\"/>\n";
      }
    }
    svg << "</g>\n";
    ++panel_index;
  }

  const double lx = static_cast<double>(panels.size()) * kPanelW + 10;
  double ly = kMarginT + 10;
  for (const auto& m : methods) {
    svg << "<line x1=\"" << detail::fixed(lx, 1) << "\" y1=\"" << detail::fixed(ly - 4, 1)
        << "\" x2=\"" << detail::fixed(lx + 20, 1) << "\" y2=\"" << detail::fixed(ly - 4, 1)
        << "\" stroke=\"" << color[m] << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << detail::fixed(lx + 26, 1) << "\" y=\"" << detail::fixed(ly, 1) << "\">"
        << detail::xml_escape(m) << "</text>\n";
    ly += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

/// Number of panels render_svg would draw.
inline std::size_t panel_count(const std::vector<ResultRow>& rows) {
  std::set<std::pair<std::string, Index>> keys;
  for (const auto& s : summarize(rows)) {
    if (s.count > 0) keys.insert({s.model, s.d});
  }
  return keys.size();
}

}  // namespace gdppca

#endif  // GDPPCA_SVG_PLOT_HPP_

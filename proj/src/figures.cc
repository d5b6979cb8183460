/*
 * Copyright 2026 The nshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "nshap/figures.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

namespace nshap {
namespace {

std::string Fixed(double value, int precision = 2) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                 std::chars_format::fixed, precision);
  std::string out(buffer, ptr);
  if (out == "-0.00" || out == "-0.0" || out == "-0") out.erase(0, 1);
  return out;
}

std::string Escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string SvgHeader(int width, int height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

const std::string& OrderColor(int order) {
  static const std::vector<std::string> kPalette = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
      "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return kPalette[static_cast<size_t>(std::max(order, 1) - 1) % kPalette.size()];
}

std::vector<double> StackedBarFigure::FeatureTotals() const {
  std::vector<double> totals;
  for (const auto& segments : features) {
    double sum = 0.0;
    for (const BarSegment& s : segments) sum += s.value;
    totals.push_back(sum);
  }
  return totals;
}

double StackedBarFigure::Total() const {
  double sum = 0.0;
  for (double t : FeatureTotals()) sum += t;
  return sum;
}

StackedBarFigure BuildStackedBars(const InteractionIndex& index) {
  StackedBarFigure figure;
  figure.dim = index.dim();
  figure.order = index.order();
  figure.baseline = index.baseline();
  figure.features.resize(index.dim());
  std::vector<FeatureSet> keys = index.Keys();
  std::stable_sort(keys.begin(), keys.end(), [](FeatureSet a, FeatureSet b) {
    return a.size() < b.size();
  });
  for (FeatureSet s : keys) {
    const double value = index[s];
    if (value == 0.0) continue;
    const int k = s.size();
    for (int feature : s.Members()) {
      figure.features[feature].push_back({k, s, value / k});
    }
  }
  return figure;
}

ordered_json StackedBarsToJson(const StackedBarFigure& figure) {
  ordered_json out;
  out["dim"] = figure.dim;
  out["order"] = figure.order;
  out["baseline"] = figure.baseline;
  ordered_json features = ordered_json::array();
  const std::vector<double> totals = figure.FeatureTotals();
  for (int i = 0; i < figure.dim; ++i) {
    ordered_json segments = ordered_json::array();
    for (const BarSegment& s : figure.features[i]) {
      segments.push_back(
          {{"order", s.order}, {"set", s.set.Key()}, {"value", s.value}});
    }
    features.push_back(
        {{"feature", i}, {"total", totals[i]}, {"segments", segments}});
  }
  out["features"] = std::move(features);
  return out;
}

std::string RenderStackedBarsSvg(const StackedBarFigure& figure,
                                 const std::vector<std::string>& labels) {
  constexpr int kLabelWidth = 120;
  constexpr int kPlotWidth = 480;
  constexpr int kRowHeight = 24;
  constexpr int kTop = 40;
  const int legend_rows = figure.order;
  const int height = kTop + figure.dim * kRowHeight + 30 + legend_rows * 18 + 10;
  const int width = kLabelWidth + kPlotWidth + 40;

  double max_positive = 0.0;
  double max_negative = 0.0;
  for (const auto& segments : figure.features) {
    double pos = 0.0;
    double neg = 0.0;
    for (const BarSegment& s : segments) (s.value > 0 ? pos : neg) += s.value;
    max_positive = std::max(max_positive, pos);
    max_negative = std::max(max_negative, -neg);
  }
  double span = max_positive + max_negative;
  if (span <= 0.0) span = 1.0;
  const double scale = kPlotWidth / span;
  const double zero_x = kLabelWidth + max_negative * scale;

  std::string svg = SvgHeader(width, height);
  svg += "<text x=\"" + std::to_string(width / 2) +
         "\" y=\"20\" text-anchor=\"middle\">" +
         std::to_string(figure.order) + "-Shapley Values</text>\n";
  for (int i = 0; i < figure.dim; ++i) {
    const int y = kTop + i * kRowHeight;
    const std::string label =
        i < static_cast<int>(labels.size()) ? labels[i] : std::to_string(i + 1);
    svg += "<text x=\"" + std::to_string(kLabelWidth - 6) + "\" y=\"" +
           std::to_string(y + kRowHeight / 2 + 4) +
           "\" text-anchor=\"end\">" + Escape(label) + "</text>\n";
    double pos = zero_x;
    double neg = zero_x;
    for (const BarSegment& s : figure.features[i]) {
      const double w = std::abs(s.value) * scale;
      double x;
      if (s.value > 0) {
        x = pos;
        pos += w;
      } else {
        neg -= w;
        x = neg;
      }
      svg += "<rect x=\"" + Fixed(x) + "\" y=\"" + std::to_string(y + 3) +
             "\" width=\"" + Fixed(w) + "\" height=\"" +
             std::to_string(kRowHeight - 6) + "\" fill=\"" +
             OrderColor(s.order) + "\" stroke=\"white\" stroke-width=\"0.5\">" +
             "<title>" + s.set.Display() + ": " + FormatDouble(s.value) +
             "</title></rect>\n";
    }
  }
  const int axis_bottom = kTop + figure.dim * kRowHeight;
  svg += "<line x1=\"" + Fixed(zero_x) + "\" y1=\"" + std::to_string(kTop) +
         "\" x2=\"" + Fixed(zero_x) + "\" y2=\"" + std::to_string(axis_bottom) +
         "\" stroke=\"black\"/>\n";
  svg += "<g class=\"legend\">\n";
  for (int k = 1; k <= figure.order; ++k) {
    const int y = axis_bottom + 20 + (k - 1) * 18;
    svg += "<rect x=\"" + std::to_string(kLabelWidth) + "\" y=\"" +
           std::to_string(y) + "\" width=\"12\" height=\"12\" fill=\"" +
           OrderColor(k) + "\"/>\n";
    svg += "<text x=\"" + std::to_string(kLabelWidth + 18) + "\" y=\"" +
           std::to_string(y + 10) + "\">" +
           (k == 1 ? std::string("Main effect")
                   : "Order " + std::to_string(k) + " interaction") +
           "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string DependenceToCsv(const DependenceSeries& series) {
  std::string out = "x,phi\n";
  for (const auto& [x, phi] : series.points) {
    out += FormatDouble(x) + "," + FormatDouble(phi) + "\n";
  }
  return out;
}

std::string RenderDependenceSvg(const DependenceSeries& series,
                                const std::string& feature_label) {
  constexpr int kWidth = 480;
  constexpr int kHeight = 360;
  constexpr int kMargin = 50;
  std::string svg = SvgHeader(kWidth, kHeight);
  const std::string label = feature_label.empty()
                                ? "feature " + std::to_string(series.feature + 1)
                                : feature_label;
  svg += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"20\" text-anchor=\"middle\">" + Escape(label) + ", order " +
         std::to_string(series.order) + "</text>\n";
  svg += "<rect x=\"" + std::to_string(kMargin) + "\" y=\"" +
         std::to_string(kMargin) + "\" width=\"" +
         std::to_string(kWidth - 2 * kMargin) + "\" height=\"" +
         std::to_string(kHeight - 2 * kMargin) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!series.points.empty()) {
    double x_lo = series.points.front().first, x_hi = x_lo;
    double y_lo = series.points.front().second, y_hi = y_lo;
    for (const auto& [x, y] : series.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) {
      y_lo -= 0.5;
      y_hi += 0.5;
    }
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 2 * kMargin;
    for (const auto& [x, y] : series.points) {
      const double px = kMargin + (x - x_lo) / (x_hi - x_lo) * plot_w;
      const double py = kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * plot_h;
      svg += "<circle cx=\"" + Fixed(px) + "\" cy=\"" + Fixed(py) +
             "\" r=\"2.5\" fill=\"" + OrderColor(series.order) +
             "\" fill-opacity=\"0.7\"/>\n";
    }
    svg += "<text x=\"" + std::to_string(kMargin) + "\" y=\"" +
           std::to_string(kHeight - kMargin + 16) + "\">" + Fixed(x_lo, 3) +
           "</text>\n";
    svg += "<text x=\"" + std::to_string(kWidth - kMargin) + "\" y=\"" +
           std::to_string(kHeight - kMargin + 16) +
           "\" text-anchor=\"end\">" + Fixed(x_hi, 3) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kMargin - 4) + "\" y=\"" +
           std::to_string(kMargin + 4) + "\" text-anchor=\"end\">" +
           Fixed(y_hi, 3) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kMargin - 4) + "\" y=\"" +
           std::to_string(kHeight - kMargin) + "\" text-anchor=\"end\">" +
           Fixed(y_lo, 3) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace nshap

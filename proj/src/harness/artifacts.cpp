/*
 * Copyright 2026 The vsahand Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/


#include "vsahand/harness/artifacts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

namespace vsahand::harness {
namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

// 1, 2 or 5 times a power of ten, giving four to ten ticks.
double tick_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

void write_plot_svg(std::ostream& out, const PlotLabels& labels,
                    const std::vector<PlotSeries>& series) {
  constexpr double kW = 720.0, kH = 420.0;
  constexpr double kL = 70.0, kR = 150.0, kT = 40.0, kB = 50.0;
  Range rx, ry;
  for (const auto& s : series) {
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
  }
  rx.finish();
  ry.finish();
  const auto px = [&](double x) { return kL + (x - rx.lo) / (rx.hi - rx.lo) * (kW - kL - kR); };
  const auto py = [&](double y) { return kH - kB - (y - ry.lo) / (ry.hi - ry.lo) * (kH - kT - kB); };

  fmt::memory_buffer b;
  auto it = std::back_inserter(b);
  fmt::format_to(it,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
                 "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
                 kW, kH);
  fmt::format_to(it, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  fmt::format_to(it, "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                 (kL + kW - kR) / 2.0, escape(labels.title));
  fmt::format_to(it,
                 "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
                 "stroke=\"black\"/>\n",
                 kL, kT, kW - kL - kR, kH - kT - kB);

  const double sx = tick_step(rx.hi - rx.lo);
  for (double v = std::ceil(rx.lo / sx) * sx; v <= rx.hi + 1e-9 * sx; v += sx) {
    fmt::format_to(it, "<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n",
                   px(v), kT, kH - kB);
    fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:g}</text>\n", px(v),
                   kH - kB + 16, v);
  }
  const double sy = tick_step(ry.hi - ry.lo);
  for (double v = std::ceil(ry.lo / sy) * sy; v <= ry.hi + 1e-9 * sy; v += sy) {
    fmt::format_to(it, "<line x1=\"{1}\" y1=\"{0:.2f}\" x2=\"{2}\" y2=\"{0:.2f}\" stroke=\"#ddd\"/>\n",
                   py(v), kL, kW - kR);
    fmt::format_to(it, "<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:g}</text>\n", kL - 6,
                   py(v) + 4, v);
  }
  fmt::format_to(it, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                 (kL + kW - kR) / 2.0, kH - 12, escape(labels.x));
  fmt::format_to(it,
                 "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" "
                 "transform=\"rotate(-90 16 {0})\">{1}</text>\n",
                 (kT + kH - kB) / 2.0, escape(labels.y));

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % kPalette.size()];
    fmt::format_to(it, "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"",
                   color);
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      fmt::format_to(it, "{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
    }
    fmt::format_to(it, "\"/>\n");
    const double ly = kT + 16.0 * static_cast<double>(k) + 8.0;
    fmt::format_to(it,
                   "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" "
                   "stroke-width=\"2\"/>\n",
                   kW - kR + 10, ly, kW - kR + 30, color);
    fmt::format_to(it, "<text x=\"{}\" y=\"{}\">{}</text>\n", kW - kR + 36, ly + 4,
                   escape(s.label));
  }
  fmt::format_to(it, "</svg>\n");
  out.write(b.data(), static_cast<std::streamsize>(b.size()));
}

void write_grasp_svg(std::ostream& out, const hand::HandSpec& hand,
                     const hand::ObjectShape& object, const hand::GraspResult& result) {
  std::vector<std::vector<hand::Vec2>> chains;
  Range rx, ry;
  const auto add = [&](const hand::Vec2& p) {
    rx.add(p.x());
    ry.add(p.y());
  };
  add(hand.support.a);
  add(hand.support.b);
  for (int f = 0; f < hand::kFingers; ++f) {
    const auto c = finger::forward_kinematics(hand.fingers[f], hand.bases[f],
                                              result.fingers[f].angles);
    chains.emplace_back(c.points.begin(), c.points.end());
    for (const auto& p : c.points) add(p);
  }
  std::vector<hand::Vec2> outline;
  if (object.kind == hand::ShapeKind::kCircle) {
    for (int i = 0; i < 64; ++i) {
      const double a = 2.0 * std::numbers::pi * i / 64.0;
      outline.push_back(object.position + object.radius * hand::Vec2(std::cos(a), std::sin(a)));
    }
  } else {
    outline = object.outline();
  }
  for (const auto& p : outline) add(p);
  rx.finish();
  ry.finish();

  constexpr double kScale = 3.0, kMargin = 20.0;
  const double w = (rx.hi - rx.lo) * kScale + 2.0 * kMargin;
  const double h = (ry.hi - ry.lo) * kScale + 2.0 * kMargin + 20.0;
  const auto px = [&](double x) { return kMargin + (x - rx.lo) * kScale; };
  const auto py = [&](double y) { return kMargin + 20.0 + (ry.hi - y) * kScale; };

  fmt::memory_buffer b;
  auto it = std::back_inserter(b);
  fmt::format_to(it,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
                 "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
                 w, h);
  fmt::format_to(it, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  fmt::format_to(it, "<text x=\"{}\" y=\"16\">{} {} lift={:.2f} kg</text>\n", kMargin,
                 escape(object.name), hand::grasp_type_name(result.grasp_type),
                 result.lift_capacity);
  fmt::format_to(it,
                 "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#555\" "
                 "stroke-width=\"4\"/>\n",
                 px(hand.support.a.x()), py(hand.support.a.y()), px(hand.support.b.x()),
                 py(hand.support.b.y()));
  fmt::format_to(it, "<polygon fill=\"#f4d6a0\" stroke=\"#a0703c\" points=\"");
  for (const auto& p : outline) fmt::format_to(it, "{:.2f},{:.2f} ", px(p.x()), py(p.y()));
  fmt::format_to(it, "\"/>\n");
  for (std::size_t f = 0; f < chains.size(); ++f) {
    fmt::format_to(it, "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"3\" points=\"",
                   kPalette[f % kPalette.size()]);
    for (const auto& p : chains[f]) fmt::format_to(it, "{:.2f},{:.2f} ", px(p.x()), py(p.y()));
    fmt::format_to(it, "\"/>\n");
  }
  for (const auto& c : result.contacts) {
    const hand::Vec2 tip = c.point + 2.0 * std::sqrt(std::max(c.normal_force, 0.0)) * c.normal;
    fmt::format_to(it, "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"black\"/>\n",
                   px(c.point.x()), py(c.point.y()));
    fmt::format_to(it,
                   "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                   "stroke=\"black\"/>\n",
                   px(c.point.x()), py(c.point.y()), px(tip.x()), py(tip.y()));
  }
  fmt::format_to(it, "</svg>\n");
  out.write(b.data(), static_cast<std::streamsize>(b.size()));
}

}  // namespace vsahand::harness

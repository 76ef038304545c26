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

#include "vsahand/harness/characterize.hpp"

#include <cmath>
#include <iterator>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "vsahand/errors.hpp"
#include "vsahand/numeric.hpp"

namespace vsahand::harness {
namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

}  // namespace

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("linear fit needs two or more paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw InvalidArgument("linear fit needs a nonconstant abscissa");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 1.0;
  return f;
}

finger::TendonStiffness finger_tendon_stiffness(const hand::HandSpec& hand, double s) {
  const double drive = s / (hand.vsa.r_j * hand.vsa.r_j);
  const double k = drive * hand.tree.output_share() * hand.tree.reduction;
  return {k, k};
}

double hand_fingertip_stiffness(const hand::HandSpec& hand, double s, double mcp_angle,
                                double joint_stiffness_scale) {
  const auto tendon = finger_tendon_stiffness(hand, s);
  double sum = 0.0;
  for (auto spec : hand.fingers) {
    for (auto& j : spec.joints) j.stiffness *= joint_stiffness_scale;
    sum += finger::fingertip_stiffness(spec, tendon, {mcp_angle, 0.0, 0.0}, {});
  }
  return sum;
}

CharacterizeReport characterize(const hand::HandSpec& hand, const CharacterizeParams& p,
                                CharacterizeMode mode, std::uint64_t seed) {
  hand.validate();
  struct Condition {
    std::string name;
    double s;
    double mcp_deg;
  };
  std::vector<Condition> conditions;
  if (mode == CharacterizeMode::kStiffness) {
    conditions = {{"low", p.levels.low, 0.0},
                  {"intermediate", p.levels.intermediate, 0.0},
                  {"high", p.levels.high, 0.0}};
  } else {
    for (double deg : p.mcp_angles_deg) {
      conditions.push_back({fmt::format("mcp_{:g}", deg), p.levels.intermediate, deg});
    }
  }

  CharacterizeReport report;
  report.mode = mode;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spread(1.0 - p.force_spread, 1.0 + p.force_spread);
  for (const auto& c : conditions) {
    const double k = hand_fingertip_stiffness(hand, c.s, c.mcp_deg * kDegToRad,
                                              p.joint_stiffness_scale);
    double slope_sum = 0.0;
    for (int t = 0; t < p.trials; ++t) {
      CharacterizeTrial tr;
      tr.condition = c.name;
      tr.vsa_stiffness = c.s;
      tr.mcp_angle_deg = c.mcp_deg;
      tr.trial = t;
      tr.force_peak = p.force_max * spread(rng);
      std::vector<double> deflection(p.samples);
      std::vector<double> force(p.samples);
      for (int i = 0; i < p.samples; ++i) {
        force[i] = tr.force_peak * i / (p.samples - 1);
        deflection[i] = force[i] / k;
      }
      tr.fit = linear_fit(deflection, force);
      tr.fit_ok = tr.fit.r >= p.min_r;
      report.min_r = std::min(report.min_r, tr.fit.r);
      slope_sum += tr.fit.slope;
      report.trials.push_back(tr);
    }
    report.conditions.push_back(c.name);
    report.mean_slopes.push_back(slope_sum / p.trials);
  }
  return report;
}

void write_characterize_csv(std::ostream& out, const CharacterizeReport& report) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "{}\n", kCharacterizeHeader);
  for (const auto& t : report.trials) {
    fmt::format_to(std::back_inserter(buf), "{},{:.6f},{:.6f},{},{:.6f},{:.9f},{:.9f},{:.9f},{}\n",
                   t.condition, t.vsa_stiffness, t.mcp_angle_deg, t.trial, t.force_peak,
                   t.fit.slope, t.fit.intercept, t.fit.r, t.fit_ok ? 1 : 0);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

double anchor_joint_stiffness_scale(const hand::HandSpec& hand, double s_intermediate,
                                    double target) {
  // Hand stiffness rises monotonically with the joint stiffness scale.
  const auto gap = [&](double log_scale) {
    return std::log(hand_fingertip_stiffness(hand, s_intermediate, 0.0, std::exp(log_scale)) /
                    target);
  };
  const auto root = numeric::bisect(gap, std::log(1e-3), std::log(1e4), 1e-12, 1e-12, 200);
  if (!root) throw NoSolution(fmt::format("hand stiffness {} N/mm out of reach", target));
  return std::exp(*root);
}

}  // namespace vsahand::harness

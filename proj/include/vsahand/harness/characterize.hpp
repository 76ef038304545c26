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

/**@file
 * Fingertip stiffness characterization of the whole hand.
 *
 * A force ramp pushes all four fingertips toward the palm at once. The hand
 * stiffness is the slope of force against fingertip deflection, fitted per
 * trial.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vsahand/hand_sim.hpp"
#include "vsahand/harness/config.hpp"

namespace vsahand::harness {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;  // correlation coefficient
};

/// Least-squares line y = slope·x + intercept. Throws InvalidArgument with
/// fewer than two points or a constant x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Per-finger tendon stiffness when the drive tendon at VSA stiffness s is
/// shared by all fingers moving together, N/mm.
finger::TendonStiffness finger_tendon_stiffness(const hand::HandSpec& hand, double s);

/// Σ fingertip stiffness of the four fingers at VSA stiffness s with the MCP
/// joint at mcp_angle and the other joints straight, N/mm.
double hand_fingertip_stiffness(const hand::HandSpec& hand, double s, double mcp_angle,
                                double joint_stiffness_scale);

enum class CharacterizeMode { kStiffness, kPosition };

struct CharacterizeTrial {
  std::string condition;  // "low", "intermediate", "high", or "mcp_<deg>"
  double vsa_stiffness = 0.0;  // N·mm/rad
  double mcp_angle_deg = 0.0;
  int trial = 0;
  double force_peak = 0.0;     // N
  LinearFit fit;
  bool fit_ok = false;
};

struct CharacterizeReport {
  CharacterizeMode mode = CharacterizeMode::kStiffness;
  std::vector<CharacterizeTrial> trials;
  std::vector<std::string> conditions;
  std::vector<double> mean_slopes;  // N/mm, per condition
  double min_r = 1.0;
};

CharacterizeReport characterize(const hand::HandSpec& hand, const CharacterizeParams& p,
                                CharacterizeMode mode, std::uint64_t seed);

inline constexpr const char* kCharacterizeHeader =
    "condition,vsa_stiffness_Nmm_rad,mcp_angle_deg,trial,force_peak_N,slope_N_per_mm,intercept_N,r,"
    "fit_ok";

void write_characterize_csv(std::ostream& out, const CharacterizeReport& report);

/// Joint stiffness scale that puts the hand stiffness at the intermediate
/// level on `target` N/mm. Throws NoSolution when the target is out of reach.
double anchor_joint_stiffness_scale(const hand::HandSpec& hand, double s_intermediate,
                                    double target);

}  // namespace vsahand::harness

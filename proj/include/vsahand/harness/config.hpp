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
 * Experiment configuration read from INI files.
 *
 * Every physical key carries its unit in the name, e.g. `[vsa] r_j_mm = 10`.
 * Unknown sections or keys are rejected.
 */

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vsahand/cam_design.hpp"
#include "vsahand/control_loop.hpp"
#include "vsahand/hand_sim.hpp"

namespace vsahand::harness {

struct CharacterizeParams {
  control::StiffnessLevels levels;
  int trials = 10;
  int samples = 21;
  double force_max = 2.0;                 // N, mean peak of the force ramp
  double force_spread = 0.2;              // relative spread of the peak across trials
  double joint_stiffness_scale = 157.598;  // calibrated, see tools/calibrate_finger
  std::array<double, 3> mcp_angles_deg{0.0, 30.0, 60.0};
  double min_r = 0.98;
};

/// Sinusoidal position and stiffness references for `track custom`.
struct CustomTrackParams {
  double theta_offset = 0.0;        // rad
  double theta_amplitude = 0.5;     // rad
  double theta_frequency = 0.1;     // Hz
  double stiffness_offset = 340.0;  // N·mm/rad
  double stiffness_amplitude = 0.0; // N·mm/rad
  double stiffness_frequency = 0.1; // Hz
  double duration = 10.0;           // s

  control::TrackingScenario scenario() const;
};

struct GraspParams {
  double tension = 160.0;   // N
  int steps = 200;
  double pad_friction_mu = 0.8;
  double support_friction_mu = 0.8;
  std::string suite_path;   // empty: the bundled suite
};

struct BatteryParams {
  double capacity_mah = 1500.0;
  double nominal_voltage = 6.4;  // V, two LiFePO4 cells
};

struct VerifyParams {
  int oracle_trials = 1000;
  int grid_theta = 21;
  int grid_stiffness = 21;
};

struct Config {
  cam::StiffnessTargets cam_targets;
  double r_m = 10.0;  // mm
  int cam_samples = 512;

  control::MotorModel motor;
  control::ControllerConfig controller;
  control::ElectricalModel electrical;
  transmission::BowdenStage bowden;
  control::Fig3aParams fig3a;
  control::Fig3bParams fig3b;
  control::Fig3cParams fig3c;
  CustomTrackParams custom;
  int trace_stride = 10;

  control::EnergyParams energy;
  BatteryParams battery;
  CharacterizeParams characterize;
  GraspParams grasp;
  VerifyParams verify;
  std::uint64_t seed = 1;

  vsa::VsaParameters vsa_parameters() const;
  hand::HandSpec hand_spec() const;
};

/// Parses an INI document over the defaults. Throws ConfigError with the
/// offending key on unknown keys, malformed numbers or invalid values.
Config parse_config(std::istream& in);
Config load_config(const std::string& path);

/// Every accepted key as `section.key = default`, in a stable order.
std::vector<std::string> config_keys();

/// Canonical INI text with every key at its current value.
std::string dump_config(const Config& c);

}  // namespace vsahand::harness

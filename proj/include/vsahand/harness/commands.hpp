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
 * The experiment commands behind the `vsahand` CLI.
 *
 * Each command writes its artifacts under `RunOptions::out_dir`, prints a short
 * summary and returns the process exit code. Configuration problems surface as
 * ConfigError, which the CLI maps to exit code 2.
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsahand/harness/characterize.hpp"
#include "vsahand/harness/config.hpp"

namespace vsahand::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool svg = false;
  std::ostream* log = nullptr;  // summary stream, std::cout when null
};

struct ReferenceValue {
  std::string quantity;
  std::string condition;
  double value = 0.0;
  std::string unit;
};

std::filesystem::path default_reference_path();
std::filesystem::path default_suite_path();

/// Reads `quantity,condition,value,unit` rows. Throws ConfigError with the line.
std::vector<ReferenceValue> load_reference_values(const std::filesystem::path& path);
std::optional<double> find_reference(const std::vector<ReferenceValue>& table,
                                     std::string_view quantity, std::string_view condition);

/// fig3a, fig3b, fig3c or custom. Throws ConfigError on other names.
control::TrackingScenario tracking_scenario(const Config& c, std::string_view name);
control::Trace run_scenario(const Config& c, const control::TrackingScenario& scenario);

struct EnergyRow {
  std::string grasp;
  std::string stiffness;
  double simulated_mwh = 0.0;
  std::optional<double> reference_mwh;
};

std::vector<EnergyRow> energy_table(const Config& c);

struct EnergyOrdering {
  bool power_over_pinch = false;   // at both stiffness levels
  bool high_over_low = false;      // for both grasps
  bool modulation_smallest = false;
  double battery_grasps = 0.0;     // from the reference high-stiffness power grasp
  bool battery_consistent = false; // within 15% of the reference count

  bool all() const {
    return power_over_pinch && high_over_low && modulation_smallest && battery_consistent;
  }
};

EnergyOrdering check_energy_ordering(const Config& c, const std::vector<EnergyRow>& rows,
                                     const std::vector<ReferenceValue>& reference);

inline constexpr const char* kEnergyHeader = "grasp,stiffness,simulated_mWh,reference_mWh";
void write_energy_csv(std::ostream& out, const std::vector<EnergyRow>& rows);

inline constexpr const char* kCamHeader = "x_mm,y_mm";

int cmd_synth_cam(const Config& c, const RunOptions& o);
int cmd_track(const Config& c, const RunOptions& o, std::string_view scenario);
int cmd_characterize(const Config& c, const RunOptions& o, CharacterizeMode mode);
int cmd_grasp(const Config& c, const RunOptions& o);
int cmd_energy(const Config& c, const RunOptions& o);
int cmd_verify(const Config& c, const RunOptions& o, bool inject_fault);

}  // namespace vsahand::harness

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


// Computes the joint stiffness scale that puts the whole-hand fingertip
// stiffness at the intermediate VSA level on a target value.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vsahand/errors.hpp"
#include "vsahand/harness/characterize.hpp"
#include "vsahand/harness/commands.hpp"
#include "vsahand/harness/config.hpp"

using namespace vsahand;
using namespace vsahand::harness;

int main(int argc, char** argv) {
  CLI::App app{"Anchor the fingertip stiffness characterization"};
  std::string config_path;
  double target = 0.17;
  app.add_option("--config", config_path, "INI configuration");
  app.add_option("--target", target, "Hand stiffness at the intermediate level, N/mm")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    const Config c = config_path.empty() ? Config{} : load_config(config_path);
    const auto hand = c.hand_spec();
    const auto& l = c.energy.levels;
    const double scale = anchor_joint_stiffness_scale(hand, l.intermediate, target);
    fmt::print("joint_stiffness_scale = {:.6g}\n", scale);
    fmt::print("{:>8} {:>12} {:>12} {:>12}\n", "scale", "low", "intermediate", "high");
    for (double f : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double s = scale * f;
      fmt::print("{:8.3f} {:12.5f} {:12.5f} {:12.5f}\n", s,
                 hand_fingertip_stiffness(hand, l.low, 0.0, s),
                 hand_fingertip_stiffness(hand, l.intermediate, 0.0, s),
                 hand_fingertip_stiffness(hand, l.high, 0.0, s));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

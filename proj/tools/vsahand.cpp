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


// vsahand: command-line front end for the experiment harness.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vsahand/errors.hpp"
#include "vsahand/harness/commands.hpp"
#include "vsahand/harness/config.hpp"

using namespace vsahand;
using namespace vsahand::harness;

int main(int argc, char** argv) {
  CLI::App app{"Variable stiffness hand toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool svg = false;
  app.add_option("--config", config_path, "INI configuration (default: $VSAHAND_CONFIG)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Seed for randomized campaigns");
  app.add_flag("--svg", svg, "Also write SVG plots");

  auto* synth = app.add_subcommand("synth-cam", "Synthesize and validate the cam profile");
  std::optional<int> samples;
  synth->add_option("--samples", samples, "Number of contour samples")->check(CLI::Range(2, 1 << 24));

  auto* track = app.add_subcommand("track", "Run a closed-loop tracking scenario");
  std::string scenario;
  track->add_option("scenario", scenario, "fig3a, fig3b, fig3c or custom")
      ->required()
      ->check(CLI::IsMember({"fig3a", "fig3b", "fig3c", "custom"}));

  auto* charact = app.add_subcommand("characterize", "Fingertip stiffness characterization");
  std::string mode;
  charact->add_option("mode", mode, "stiffness or position")
      ->required()
      ->check(CLI::IsMember({"stiffness", "position"}));

  auto* grasp = app.add_subcommand("grasp", "Grasp every object of a suite");
  std::string suite;
  grasp->add_option("--suite", suite, "Object suite file");

  auto* energy = app.add_subcommand("energy", "Energy per grasp type and stiffness");

  auto* verify = app.add_subcommand("verify", "Run the oracle and invariant campaigns");
  bool inject_fault = false;
  verify->add_flag("--inject-fault", inject_fault, "Perturb the closed form to exercise the checks");

  auto* dump = app.add_subcommand("dump-config", "Print the effective configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv("VSAHAND_CONFIG"); env && *env) config_path = env;
    }
    Config c = config_path.empty() ? Config{} : load_config(config_path);
    if (seed) c.seed = *seed;
    if (samples) c.cam_samples = *samples;
    if (!suite.empty()) c.grasp.suite_path = suite;

    RunOptions o;
    o.out_dir = out_dir;
    o.svg = svg;

    if (*synth) return cmd_synth_cam(c, o);
    if (*track) return cmd_track(c, o, scenario);
    if (*charact) {
      return cmd_characterize(c, o,
                              mode == "stiffness" ? CharacterizeMode::kStiffness
                                                  : CharacterizeMode::kPosition);
    }
    if (*grasp) return cmd_grasp(c, o);
    if (*energy) return cmd_energy(c, o);
    if (*verify) return cmd_verify(c, o, inject_fault);
    if (*dump) {
      std::cout << dump_config(c);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

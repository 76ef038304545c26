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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "vsahand/errors.hpp"
#include "vsahand/harness/artifacts.hpp"
#include "vsahand/harness/characterize.hpp"
#include "vsahand/harness/commands.hpp"
#include "vsahand/harness/config.hpp"
#include "vsahand/harness/verify.hpp"

using namespace vsahand;
using namespace vsahand::harness;

namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string message_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("vsahand_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

int count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  int n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const Config c = parse("");
  CHECK(c.cam_targets.s_min == 135.0);
  CHECK(c.cam_targets.s_max == 545.0);
  CHECK(c.seed == 1);
  CHECK(c.energy.levels.intermediate == 340.0);
}

TEST_CASE("config keys override the defaults") {
  const Config c = parse("[vsa]\nr_j_mm = 12\n[general]\nseed = 42\n[grasp]\nsuite_path = a.txt\n");
  CHECK(c.cam_targets.r_j == 12.0);
  CHECK(c.seed == 42);
  CHECK(c.grasp.suite_path == "a.txt");
}

TEST_CASE("dumped config parses back to the same text") {
  Config c;
  c.motor.gear_ratio = 120.0;
  c.characterize.trials = 3;
  const std::string text = dump_config(c);
  CHECK(dump_config(parse(text)) == text);
  CHECK(config_keys().size() > 50);
}

TEST_CASE("config errors name the offending key") {
  CHECK(message_of("[vsa]\nr_j = 10\n").find("vsa.r_j") != std::string::npos);
  CHECK(message_of("[nope]\nx = 1\n").find("[nope]") != std::string::npos);
  CHECK(message_of("seed = 3\n").find("inside a section") != std::string::npos);
  CHECK(message_of("[vsa]\nr_j_mm = 10mm\n").find("vsa.r_j_mm") != std::string::npos);
  CHECK(message_of("[general]\nseed = -1\n").find("general.seed") != std::string::npos);
  CHECK(message_of("[vsa]\ns_max_Nmm_rad = 100\n").find("s_max") != std::string::npos);
  CHECK(message_of("[vsa]\nr_j_mm = 10\n[vsa\n").find("line 3") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/vsahand.ini"), ConfigError);
}

TEST_CASE("linear fit") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const auto f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r == doctest::Approx(1.0));
  const std::vector<double> down{3.0, 2.0, 0.0, -1.0};
  CHECK(linear_fit(x, down).r < -0.9);
  const std::vector<double> flat{1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(linear_fit(flat, y), InvalidArgument);
  CHECK_THROWS_AS(linear_fit(std::vector<double>{1.0}, std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("tendon stiffness seen by one finger") {
  const auto hand = Config{}.hand_spec();
  // 340 N·mm/rad over a 10 mm pulley is 3.4 N/mm, a quarter per finger.
  const auto t = finger_tendon_stiffness(hand, 340.0);
  CHECK(t.flexion == doctest::Approx(0.85));
  CHECK(t.extension == doctest::Approx(0.85));
}

TEST_CASE("anchoring puts the intermediate level on the target") {
  const auto hand = Config{}.hand_spec();
  const double scale = anchor_joint_stiffness_scale(hand, 340.0, 0.2);
  CHECK(hand_fingertip_stiffness(hand, 340.0, 0.0, scale) == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(Config{}.characterize.joint_stiffness_scale ==
        doctest::Approx(anchor_joint_stiffness_scale(hand, 340.0, 0.17)).epsilon(1e-5));
  CHECK_THROWS_AS(anchor_joint_stiffness_scale(hand, 340.0, 1e6), NoSolution);
}

TEST_CASE("characterization reports") {
  const Config c;
  const auto s = characterize(c.hand_spec(), c.characterize, CharacterizeMode::kStiffness, 7);
  REQUIRE(s.conditions.size() == 3);
  CHECK(s.trials.size() == 30);
  CHECK(s.mean_slopes[0] < s.mean_slopes[1]);
  CHECK(s.mean_slopes[1] < s.mean_slopes[2]);
  CHECK(s.mean_slopes[1] == doctest::Approx(0.17).epsilon(1e-5));
  CHECK(s.min_r >= 0.98);

  const auto p = characterize(c.hand_spec(), c.characterize, CharacterizeMode::kPosition, 7);
  REQUIRE(p.conditions == std::vector<std::string>{"mcp_0", "mcp_30", "mcp_60"});
  CHECK(p.mean_slopes[2] == doctest::Approx(p.mean_slopes[0]).epsilon(1e-9));

  std::ostringstream a, b, d;
  write_characterize_csv(a, s);
  write_characterize_csv(b, characterize(c.hand_spec(), c.characterize,
                                         CharacterizeMode::kStiffness, 7));
  write_characterize_csv(d, characterize(c.hand_spec(), c.characterize,
                                         CharacterizeMode::kStiffness, 8));
  CHECK(a.str() == b.str());
  CHECK(a.str() != d.str());
  CHECK(a.str().rfind(std::string(kCharacterizeHeader) + "\n", 0) == 0);
}

TEST_CASE("verify campaigns pass with the default seed") {
  const Config c;
  const auto r = run_verify(c, 1);
  CHECK(r.passed());
  REQUIRE(r.find("vsa_oracle", "theta") != nullptr);
  CHECK(r.find("vsa_oracle", "theta")->cases == 1000);
  CHECK(r.find("cam", "virtual_work")->passed);
  CHECK(r.find("finger", "event_log")->cases == 4);
}

TEST_CASE("verify reports are deterministic") {
  const Config c;
  std::ostringstream a, b;
  write_verify_csv(a, run_verify(c, 5));
  write_verify_csv(b, run_verify(c, 5));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind(std::string(kVerifyHeader) + "\n", 0) == 0);
}

TEST_CASE("injected coefficient fault trips only the oracle checks") {
  const Config c;
  VerifyFault fault;
  fault.coefficient_a_scale = 1.01;
  const auto r = run_verify(c, 1, fault);
  CHECK_FALSE(r.passed());
  for (const auto& ch : r.checks) {
    CHECK(ch.passed == (ch.campaign != "vsa_oracle"));
  }
}

TEST_CASE("reference values") {
  const auto table = load_reference_values(default_reference_path());
  CHECK(table.size() == 20);
  CHECK(find_reference(table, "energy", "power_high") == 81.0);
  CHECK(find_reference(table, "hand_stiffness", "high") == 1.8);
  CHECK_FALSE(find_reference(table, "energy", "nothing").has_value());

  const auto dir = scratch_dir("ref");
  std::ofstream(dir / "bad.csv") << "quantity,condition,value,unit\nenergy,x,1,mWh\nenergy,y,abc,mWh\n";
  try {
    load_reference_values(dir / "bad.csv");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("energy table layout") {
  const Config c;
  const auto rows = energy_table(c);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].grasp == "power");
  CHECK(rows[4].stiffness == "low_to_high");
  CHECK(rows[4].reference_mwh == 4.9);
  std::ostringstream out;
  write_energy_csv(out, rows);
  CHECK(out.str().rfind(std::string(kEnergyHeader) + "\n", 0) == 0);

  const auto table = load_reference_values(default_reference_path());
  const auto o = check_energy_ordering(c, rows, table);
  CHECK(o.power_over_pinch);
  CHECK(o.high_over_low);
  CHECK(o.battery_grasps == doctest::Approx(1500.0 * 6.4 / 81.0));
}

TEST_CASE("synth-cam writes the requested number of samples") {
  Config c;
  c.cam_samples = 1024;
  RunOptions o;
  o.out_dir = scratch_dir("cam");
  o.svg = true;
  std::ostringstream log;
  o.log = &log;
  CHECK(cmd_synth_cam(c, o) == kExitOk);
  CHECK(count_lines(o.out_dir / "cam_profile.csv") == 1025);
  CHECK(std::filesystem::exists(o.out_dir / "cam_metadata.txt"));
  CHECK(std::filesystem::exists(o.out_dir / "cam_profile.svg"));
}

TEST_CASE("track rejects infeasible and unknown scenarios") {
  Config c;
  c.custom.stiffness_offset = 600.0;
  RunOptions o;
  o.out_dir = scratch_dir("track");
  std::ostringstream log;
  o.log = &log;
  CHECK(cmd_track(c, o, "custom") == kExitFailure);
  CHECK(log.str().find("infeasible") != std::string::npos);
  CHECK_THROWS_AS(tracking_scenario(c, "fig9"), ConfigError);
}

TEST_CASE("grasp command reports malformed suites") {
  Config c;
  const auto dir = scratch_dir("grasp");
  std::ofstream(dir / "suite.txt") << "circle ok x_mm=30 r_mm=20\ntriangle bad\n";
  c.grasp.suite_path = (dir / "suite.txt").string();
  RunOptions o;
  o.out_dir = dir;
  std::ostringstream log;
  o.log = &log;
  try {
    cmd_grasp(c, o);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("plot SVG") {
  std::ostringstream out;
  write_plot_svg(out, {"t <1>", "x", "y"}, {{"a", {0.0, 1.0, 2.0}, {1.0, 4.0, 9.0}}});
  const std::string s = out.str();
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("<polyline") != std::string::npos);
  CHECK(s.find("t &lt;1&gt;") != std::string::npos);
  std::ostringstream empty;
  write_plot_svg(empty, {}, {});
  CHECK(empty.str().find("</svg>") != std::string::npos);
}

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
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vsahand/errors.hpp"
#include "vsahand/hand_sim.hpp"

using namespace vsahand;
using namespace vsahand::hand;

namespace {

ObjectShape circle(const std::string& name, double x, double r) {
  ObjectShape o;
  o.name = name;
  o.kind = ShapeKind::kCircle;
  o.position = {x, 0.0};
  o.radius = r;
  o.mass = 0.1;
  return o;
}

ObjectShape rectangle(const std::string& name, double x, double w, double h) {
  ObjectShape o;
  o.name = name;
  o.kind = ShapeKind::kRectangle;
  o.position = {x, 0.0};
  o.width = w;
  o.height = h;
  o.mass = 0.1;
  return o;
}

const HandSpec& hand_spec() {
  static const HandSpec h = default_hand_spec();
  return h;
}

std::vector<ObjectShape> default_suite() {
  std::istringstream in(R"(
circle    big      x_mm=30 r_mm=30
rectangle card     x_mm=60 w_mm=4 h_mm=12
)");
  return parse_object_suite(in, hand_spec());
}

}  // namespace

TEST_CASE("object rests on the support") {
  const auto o = place_on_support(hand_spec(), circle("c", 40.0, 20.0));
  CHECK(o.position.y() == doctest::Approx(-50.0).epsilon(1e-9));
  const auto r = place_on_support(hand_spec(), rectangle("r", 40.0, 10.0, 30.0));
  const auto box = r.outline();
  double lowest = 0.0;
  for (const auto& v : box) lowest = std::min(lowest, v.y());
  CHECK(lowest == doctest::Approx(-70.0).epsilon(1e-9));
}

TEST_CASE("proximity of a segment to a circle") {
  const auto c = circle("c", 0.0, 10.0);
  const auto p = proximity(c, Segment{{-5.0, 15.0}, {5.0, 15.0}});
  CHECK(p.distance == doctest::Approx(5.0));
  CHECK(p.normal.y() == doctest::Approx(1.0));
  CHECK(proximity(c, Segment{{-5.0, 5.0}, {5.0, 5.0}}).distance == doctest::Approx(-5.0));
}

TEST_CASE("free-space closing splits tension equally") {
  ObjectShape far = circle("far", 400.0, 5.0);
  far.position.y() = 200.0;
  const auto r = simulate_grasp(hand_spec(), far, GraspCommand{}, 340.0);
  CHECK(r.grasp_type == GraspType::kNone);
  CHECK_FALSE(r.success);
  for (int f = 1; f < kFingers; ++f) {
    CHECK(std::abs(r.finger_tensions[f] - r.finger_tensions[0]) < 1e-9);
  }
  CHECK(r.finger_tensions[0] * kFingers == doctest::Approx(160.0));
  CHECK(r.lift_capacity == 0.0);
}

TEST_CASE("large cylinder gives a power grasp") {
  const auto o = place_on_support(hand_spec(), circle("big", 30.0, 30.0));
  const auto r = simulate_grasp(hand_spec(), o, GraspCommand{}, 500.0);
  CHECK(r.grasp_type == GraspType::kPower);
  CHECK(r.success);
  CHECK(r.equilibrium_residual < 1e-6);
  CHECK(r.lift_capacity >= 1.5);
  int proximal = 0;
  for (const auto& k : r.contacts) proximal += k.finger >= 0 && k.phalanx == finger::kMcp;
  CHECK(proximal == kFingers);
}

TEST_CASE("thin plate gives a pinch grasp") {
  const auto o = place_on_support(hand_spec(), rectangle("card", 60.0, 4.0, 12.0));
  const auto r = simulate_grasp(hand_spec(), o, GraspCommand{}, 500.0);
  CHECK(r.grasp_type == GraspType::kPinch);
  CHECK(r.success);
  for (const auto& k : r.contacts) {
    if (k.finger >= 0) CHECK(k.phalanx == finger::kDip);
  }
}

TEST_CASE("classification from contacts alone") {
  std::vector<Contact> c;
  CHECK(classify_grasp(c) == GraspType::kNone);
  c.push_back(Contact{});  // support only
  CHECK(classify_grasp(c) == GraspType::kNone);
  Contact tip;
  tip.finger = 2;
  tip.phalanx = finger::kDip;
  c.push_back(tip);
  CHECK(classify_grasp(c) == GraspType::kPinch);
  Contact mid = tip;
  mid.phalanx = finger::kPip;
  c.push_back(mid);
  CHECK(classify_grasp(c) == GraspType::kPower);
}

TEST_CASE("lift capacity scales with friction") {
  GraspResult r;
  CHECK(lift_capacity(r, 0.8) == 0.0);
  Contact a;
  a.normal_force = 30.0;
  Contact b;
  b.normal_force = 19.05;
  r.contacts = {a, b};
  CHECK(lift_capacity(r, 0.5) == doctest::Approx(0.5 * 49.05 / 9.81));
  CHECK(lift_capacity(r, 1.0) == doctest::Approx(2.0 * lift_capacity(r, 0.5)));
}

TEST_CASE("contact forces balance the object") {
  const auto o = place_on_support(hand_spec(), rectangle("box", 32.0, 60.0, 50.0));
  const auto r = simulate_grasp(hand_spec(), o, GraspCommand{}, 340.0);
  REQUIRE(r.success);
  Vec2 force{0.0, 0.0};
  double moment = 0.0;
  const Vec2 c = o.centroid();
  for (const auto& k : r.contacts) {
    const Vec2 t{-k.normal.y(), k.normal.x()};
    const Vec2 f = -k.normal_force * k.normal + k.tangential_force * t;
    force += f;
    const Vec2 d = k.point - c;
    moment += d.x() * f.y() - d.y() * f.x();
    CHECK(std::abs(k.tangential_force) <= 0.8 * k.normal_force + 1e-9);
  }
  CHECK(force.norm() < 1e-5);
  CHECK(std::abs(moment) < 1e-3);
}

TEST_CASE("compliant objects report indentation") {
  auto o = place_on_support(hand_spec(), circle("soft", 36.0, 25.0));
  o.stiffness = 2.5;
  const auto r = simulate_grasp(hand_spec(), o, GraspCommand{}, 340.0);
  bool any = false;
  for (const auto& k : r.contacts) {
    if (k.finger < 0) continue;
    CHECK(k.indentation == doctest::Approx(k.normal_force / 2.5));
    any = any || k.indentation > 0.0;
  }
  CHECK(any);
}

TEST_CASE("displacement command loads a stiffer actuator harder") {
  const auto o = place_on_support(hand_spec(), circle("big", 30.0, 30.0));
  GraspCommand cmd;
  cmd.mode = GraspCommand::Mode::kDisplacement;
  cmd.value = 40.0;
  cmd.steps = 64;
  double prev = 0.0;
  for (double s : {150.0, 300.0, 500.0}) {
    const auto r = simulate_grasp(hand_spec(), o, cmd, s);
    CHECK(r.drive_tension > prev);
    prev = r.drive_tension;
  }
}

TEST_CASE("unreachable stiffness is rejected") {
  const auto o = place_on_support(hand_spec(), circle("big", 30.0, 30.0));
  CHECK_THROWS_AS(simulate_grasp(hand_spec(), o, GraspCommand{}, 100.0), UnreachableStiffness);
  CHECK_THROWS_AS(simulate_grasp(hand_spec(), o, GraspCommand{}, 600.0), UnreachableStiffness);
}

TEST_CASE("sweep covers every object and setting") {
  const auto objects = default_suite();
  const std::vector<StiffnessSetting> settings{{"low", 200.0}, {"high", 500.0}};
  const auto rows = grasp_sweep(hand_spec(), objects, settings, GraspCommand{});
  REQUIRE(rows.size() == objects.size() * settings.size());
  CHECK(rows[0].object == "big");
  CHECK(rows[1].stiffness_setting == "high");
  CHECK(rows[0].energy_mwh < rows[1].energy_mwh);

  std::ostringstream a;
  std::ostringstream b;
  write_sweep_csv(a, rows);
  write_sweep_csv(b, grasp_sweep(hand_spec(), objects, settings, GraspCommand{}));
  CHECK(a.str() == b.str());

  std::ostringstream empty;
  write_sweep_csv(empty, grasp_sweep(hand_spec(), {}, settings, GraspCommand{}));
  CHECK(empty.str() == std::string(kSweepHeader) + "\n");
}

TEST_CASE("sweep records unreachable settings as errors") {
  const auto rows =
      grasp_sweep(hand_spec(), default_suite(), {{"bogus", 1000.0}}, GraspCommand{});
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].error.empty());
  CHECK_FALSE(rows[0].success);
}

TEST_CASE("object suite parser") {
  const auto objects = default_suite();
  REQUIRE(objects.size() == 2);
  CHECK(objects[0].kind == ShapeKind::kCircle);
  CHECK(objects[0].position.y() == doctest::Approx(-40.0));
  CHECK(objects[1].kind == ShapeKind::kRectangle);

  std::istringstream poly("polygon tri x_mm=40 y_mm=-50 vertices_mm=0,0;10,0;0,10 stiffness_N_per_mm=inf\n");
  const auto p = parse_object_suite(poly, hand_spec());
  REQUIRE(p.size() == 1);
  CHECK(p[0].vertices.size() == 3);
  CHECK(p[0].rigid());

  std::istringstream bad("# header\ncircle ok x_mm=30 r_mm=10\ncircle broken x_mm=30 r_mm=abc\n");
  try {
    parse_object_suite(bad, hand_spec());
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream unknown("circle c x_mm=30 r_mm=10 colour=red\n");
  CHECK_THROWS_AS(parse_object_suite(unknown, hand_spec()), ConfigError);
  std::istringstream shape("triangle t x_mm=30\n");
  CHECK_THROWS_AS(parse_object_suite(shape, hand_spec()), ConfigError);
}

TEST_CASE("empty input gives an empty suite") {
  std::istringstream none;
  CHECK(parse_object_suite(none, hand_spec()).empty());
}

TEST_CASE("bundled suite is graspable") {
  std::ifstream in(VSAHAND_DATA_DIR "/object_suite.txt");
  REQUIRE(in);
  const auto objects = parse_object_suite(in, hand_spec());
  CHECK(objects.size() == 16);
  int successes = 0;
  for (const auto& row : grasp_sweep(hand_spec(), objects, {{"high", 500.0}}, GraspCommand{})) {
    CHECK(row.error.empty());
    successes += row.success;
  }
  CHECK(successes == 16);
}

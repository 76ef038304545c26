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
#include <limits>

#include "doctest.h"
#include "vsahand/errors.hpp"
#include "vsahand/transmission.hpp"

using namespace vsahand;
using namespace vsahand::transmission;

TEST_CASE("ideal tree splits tension equally") {
  const auto t = distribute_tension(PulleyTree{}, 160.0);
  for (double v : t) CHECK(v == 40.0);
}

TEST_CASE("pulley losses compound per level") {
  PulleyTree tree;
  tree.efficiency = 0.95;
  const auto t = distribute_tension(tree, 100.0);
  for (double v : t) CHECK(v == doctest::Approx(22.5625).epsilon(1e-14));
}

TEST_CASE("blocking a finger leaves tensions equal") {
  const auto t = distribute_tension(PulleyTree{}, 80.0, {true, false, false, false});
  for (double v : t) CHECK(v == 20.0);
}

TEST_CASE("displacement follows compliance") {
  const auto split = distribute_displacement(PulleyTree{}, 12.0, {1.0, 1.0, 1.0, 1.0});
  for (double d : split.displacement) CHECK(d == doctest::Approx(12.0));
  CHECK(split.tension == doctest::Approx(12.0));
  CHECK(split.constraint_residual < 1e-12);
}

TEST_CASE("a rigid finger pushes its share to the others") {
  const double inf = std::numeric_limits<double>::infinity();
  const auto split = distribute_displacement(PulleyTree{}, 9.0, {inf, 2.0, 2.0, 2.0});
  CHECK(split.displacement[0] == 0.0);
  for (int i = 1; i < 4; ++i) CHECK(split.displacement[i] == doctest::Approx(12.0));
  CHECK(split.constraint_residual < 1e-12);
}

TEST_CASE("unresisted outputs absorb the motion") {
  const auto split = distribute_displacement(PulleyTree{}, 4.0, {0.0, 0.0, 3.0, 3.0});
  CHECK(split.displacement[0] == doctest::Approx(8.0));
  CHECK(split.displacement[2] == 0.0);
  CHECK(split.tension == 0.0);
  CHECK_THROWS_AS(distribute_displacement(PulleyTree{}, 1.0, {0.0, 0.0, 0.0, 0.0}), Singular);
  CHECK(distribute_displacement(PulleyTree{}, 0.0, {0.0, 0.0, 0.0, 0.0}).displacement[0] == 0.0);
}

TEST_CASE("tree validation") {
  PulleyTree tree;
  tree.depth = 3;
  CHECK_THROWS_AS(distribute_tension(tree, 1.0), InvalidArgument);
  tree = {};
  tree.efficiency = 1.2;
  CHECK_THROWS_AS(distribute_tension(tree, 1.0), InvalidArgument);
  CHECK_THROWS_AS(distribute_tension(PulleyTree{}, -1.0), InvalidArgument);
}

TEST_CASE("Bowden stage") {
  BowdenStage st;
  st.compliance_mm_per_n = 0.01;
  const auto out = bowden_transfer(st, 10.0, 100.0, Direction::kForward);
  CHECK(out.displacement == doctest::Approx(9.0));
  CHECK(out.tension == doctest::Approx(90.0));
  st.slack_mm = 2.0;
  st.compliance_mm_per_n = 0.0;
  const auto slack = bowden_transfer(st, 1.5, 10.0, Direction::kReturn);
  CHECK(slack.in_slack);
  CHECK(slack.displacement == 0.0);
}

TEST_CASE("antagonistic routing") {
  const auto s = antagonistic_routing(6.0, 2.0, 30.0, 10.0, 20.0);
  CHECK(s.cocontraction == doctest::Approx(4.0));
  CHECK(s.flexion_travel == doctest::Approx(2.0));
  CHECK(s.extension_travel == doctest::Approx(-2.0));
  CHECK(s.length_residual < 1e-12);
  CHECK_THROWS_AS(antagonistic_routing(30.0, 20.0, 1.0, 1.0, 20.0), OverTravel);
}

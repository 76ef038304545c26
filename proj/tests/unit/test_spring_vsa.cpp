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
#include <random>

#include "doctest.h"
#include "vsahand/errors.hpp"
#include "vsahand/spring_vsa.hpp"

using namespace vsahand;
using namespace vsahand::vsa;

namespace {

VsaParameters defaults() { return VsaParameters::from_targets(cam::StiffnessTargets{}, 10.0); }

}  // namespace

TEST_CASE("stiffness range of the default actuator") {
  const auto [lo, hi] = stiffness_range(defaults());
  CHECK(lo == doctest::Approx(135.0).epsilon(1e-14));
  CHECK(hi == doctest::Approx(545.0).epsilon(1e-12));
}

TEST_CASE("inverse at the midrange stiffness") {
  const auto p = defaults();
  // 340 = 2·0.05125·10·100·(alpha + beta) + 135  →  alpha + beta = 2.
  const auto cmd = inverse(p, 0.0, 340.0, 0.0);
  CHECK(cmd.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cmd.beta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("forward at symmetric co-contraction") {
  const auto p = defaults();
  const auto s = forward(p, 1.0, 1.0, 0.0);
  CHECK(s.theta == doctest::Approx(0.0));
  CHECK(s.deflection1 == doctest::Approx(10.0));
  CHECK(s.deflection2 == doctest::Approx(10.0));
  CHECK(s.tension1 == doctest::Approx(s.tension2));
  CHECK(s.stiffness == doctest::Approx(340.0));
}

TEST_CASE("closed form agrees with the bisection oracle") {
  const auto p = defaults();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const double a = 2.0 * u(rng);
    const double b = 2.0 * u(rng);
    const double s = forward_unchecked(p, a, b, 0.0).stiffness;
    const double tau = (2.0 * u(rng) - 1.0) * max_load_at_stiffness(p, s) * 0.9;
    const auto st = forward_unchecked(p, a, b, tau);
    if (!st.admissible()) continue;
    const auto o = equilibrium_oracle(p, a, b, tau);
    CHECK(std::abs(st.theta - o.theta) < 1e-9);
    CHECK(std::abs(st.stiffness - o.stiffness) / st.stiffness < 1e-3);
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("forward flags slack and over-travel") {
  const auto p = defaults();
  // Unloaded, both springs sit at r_m·(alpha + beta)/2.
  CHECK_THROWS_AS(forward(p, -0.5, -0.5, 0.0), SlackTendon);
  CHECK_THROWS_AS(forward(p, 2.5, 2.0, 0.0), OverTravel);
  CHECK_NOTHROW(forward(p, -0.5, 1.0, 0.0));
  const auto s = forward_unchecked(p, -0.5, -0.5, 0.0);
  CHECK(s.slack);
  CHECK_FALSE(s.admissible());
}

TEST_CASE("load limit at a given stiffness") {
  const auto p = defaults();
  const auto cmd = inverse(p, 0.0, 340.0, 0.0);
  const double tau_max = max_load_at_stiffness(p, 340.0);
  // Springs at 10 ± d mm: r_j·(F1 − F2) = 10·2d·(20a + b) = 10·2d·1.7, d ≤ 10.
  CHECK(tau_max == doctest::Approx(10.0 * 2.0 * 10.0 * 1.7));
  const auto edge = forward_unchecked(p, cmd.alpha, cmd.beta, tau_max);
  CHECK(std::min(edge.deflection1, edge.deflection2) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_THROWS_AS(forward(p, cmd.alpha, cmd.beta, 1.01 * tau_max), SlackTendon);
}

TEST_CASE("inverse rejects unreachable stiffness") {
  const auto p = defaults();
  CHECK_THROWS_AS(inverse(p, 0.0, 100.0, 0.0), UnreachableStiffness);
  CHECK_THROWS_AS(inverse(p, 0.0, 600.0, 0.0), UnreachableStiffness);
  CHECK_THROWS_AS(inverse(p, 0.0, 140.0, 50.0), SlackTendon);
}

TEST_CASE("inverse then forward reproduces the reference") {
  const auto p = defaults();
  for (double s : {150.0, 250.0, 340.0, 450.0}) {
    for (double th : {-0.2, 0.0, 0.3}) {
      const auto cmd = inverse_unchecked(p, th, s, 5.0);
      const auto st = forward_unchecked(p, cmd.alpha, cmd.beta, 5.0);
      if (!st.admissible()) continue;
      CHECK(std::abs(st.theta - th) < 1e-9);
      CHECK(std::abs(st.stiffness - s) < 1e-9 * s);
    }
  }
}

TEST_CASE("tendon force offset keeps tension nonnegative") {
  const auto p = defaults();
  CHECK(p.tendon_force(0.0) == doctest::Approx(0.0));
  CHECK(p.tendon_force(20.0) > 0.0);
  CHECK(p.tendon_stiffness(10.0) == doctest::Approx(2.0 * 0.05125 * 10.0 + 0.675));
}

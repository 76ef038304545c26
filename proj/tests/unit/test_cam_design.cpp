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

#include "doctest.h"
#include "vsahand/cam_design.hpp"
#include "vsahand/errors.hpp"

using namespace vsahand;
using namespace vsahand::cam;

TEST_CASE("default coefficients") {
  const auto q = derive_coefficients(StiffnessTargets{});
  // 2·r_j²·b = s_min and 2·r_j²·(b + 2a·delta_x) = s_max.
  CHECK(q.a == doctest::Approx(0.05125).epsilon(1e-14));
  CHECK(q.b == doctest::Approx(0.675).epsilon(1e-14));
  // -20·(545² − 2·135²) / (800·410) = -5211500 / 328000
  CHECK(q.c == doctest::Approx(-5211500.0 / 328000.0).epsilon(1e-14));
}

TEST_CASE("stiffness endpoints implied by the coefficients") {
  const StiffnessTargets t;
  const auto q = derive_coefficients(t);
  const double rj2 = t.r_j * t.r_j;
  CHECK(2.0 * q.b * rj2 == doctest::Approx(t.s_min).epsilon(1e-15));
  CHECK(2.0 * rj2 * (q.b + 2.0 * q.a * t.delta_x_max) == doctest::Approx(t.s_max).epsilon(1e-12));
}

TEST_CASE("invalid targets are rejected") {
  StiffnessTargets t;
  t.s_max = t.s_min;
  CHECK_THROWS_AS(derive_coefficients(t), InvalidArgument);
  t = {};
  t.r_j = 0.0;
  CHECK_THROWS_AS(derive_coefficients(t), InvalidArgument);
  t = {};
  t.k = -1.0;
  CHECK_THROWS_AS(derive_coefficients(t), InvalidArgument);
}

TEST_CASE("feasible lower bound is the radicand root") {
  const StiffnessTargets t;
  const auto q = derive_coefficients(t);
  const double x_lo = feasible_lower_bound(q, t.k);
  // Quadratic formula on (2a/3k)x² + (b/k)x + 2c/k.
  const double A = 2.0 * q.a / (3.0 * t.k);
  const double B = q.b / t.k;
  const double C = 2.0 * q.c / t.k;
  const double root = (-B + std::sqrt(B * B - 4.0 * A * C)) / (2.0 * A);
  CHECK(x_lo == doctest::Approx(root).epsilon(1e-10));
  CHECK(radicand(q, t.k, x_lo) >= -1e-9);
  CHECK_FALSE(contour_y(q, t.k, 0.5 * x_lo).has_value());
  CHECK(contour_y(q, t.k, x_lo + 1.0).has_value());
}

TEST_CASE("positive c gives a domain starting at zero") {
  QuadraticCoefficients q{0.01, 1.0, 2.0};
  CHECK(feasible_lower_bound(q, 2.0) == 0.0);
}

TEST_CASE("synthesized profile passes every check") {
  const auto prof = synthesize_profile(StiffnessTargets{}, 401);
  CHECK(prof.samples.size() == 401);
  CHECK(prof.x_hi - prof.x_lo == doctest::Approx(20.0));
  const auto rep = validate_profile(prof);
  CHECK(rep.passed());
  REQUIRE(rep.find("virtual_work") != nullptr);
  CHECK(rep.find("virtual_work")->max_residual < 0.005);
}

TEST_CASE("virtual work against a differentiated contour") {
  const StiffnessTargets t;
  const auto prof = synthesize_profile(t, 64);
  const auto& q = prof.coefficients;
  for (double x = prof.x_lo + 0.5; x < prof.x_hi; x += 0.75) {
    const double h = 1e-5;
    const double dy = (*contour_y(q, t.k, x + h) - *contour_y(q, t.k, x - h)) / (2.0 * h);
    const double lhs = t.k * *contour_y(q, t.k, x) * dy;
    const double rhs = q.a * x * x + q.b * x + q.c;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("validation flags a corrupted sample") {
  auto prof = synthesize_profile(StiffnessTargets{}, 64);
  prof.samples[30].y += 0.5;
  const auto rep = validate_profile(prof);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.find("contour_residual")->passed);
  CHECK(rep.find("contour_residual")->worst_index == 30);
}

TEST_CASE("too few samples") {
  CHECK_THROWS_AS(synthesize_profile(StiffnessTargets{}, 4), InvalidArgument);
}

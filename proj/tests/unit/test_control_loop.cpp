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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "vsahand/control_loop.hpp"
#include "vsahand/errors.hpp"

using namespace vsahand;
using namespace vsahand::control;

namespace {

const vsa::VsaParameters& actuator() {
  static const auto p = vsa::VsaParameters::from_targets(cam::StiffnessTargets{}, 10.0);
  return p;
}

TrackingScenario hold(double theta, double s, double duration) {
  TrackingScenario sc;
  sc.name = "hold";
  sc.theta = ReferenceTrajectory::constant(ReferenceTrajectory::Channel::kTheta, theta);
  sc.stiffness = ReferenceTrajectory::constant(ReferenceTrajectory::Channel::kStiffness, s);
  sc.duration = duration;
  return sc;
}

Trace run(const TrackingScenario& sc, const ControllerConfig& c = {}, const MotorModel& m = {}) {
  return run_tracking(m, c, actuator(), sc);
}

}  // namespace

TEST_CASE("reference segments") {
  ReferenceSegment sine;
  sine.kind = ReferenceSegment::Kind::kSinusoid;
  sine.offset = 1.0;
  sine.amplitude = 2.0;
  sine.frequency = 0.25;
  ReferenceSegment ramp;
  ramp.kind = ReferenceSegment::Kind::kRamp;
  ramp.t_start = 4.0;
  ramp.offset = 1.0;
  ramp.amplitude = 3.0;
  ramp.duration = 2.0;
  ReferenceTrajectory r{ReferenceTrajectory::Channel::kTheta, {sine, ramp}};
  CHECK(r.at(1.0) == doctest::Approx(3.0));
  CHECK(r.at(3.0) == doctest::Approx(-1.0));
  CHECK(r.at(5.0) == doctest::Approx(2.5));
  CHECK(r.at(9.0) == doctest::Approx(4.0));

  ReferenceSegment step;
  step.kind = ReferenceSegment::Kind::kStep;
  step.amplitude = 0.5;
  step.duration = 1.0;
  ReferenceTrajectory st{ReferenceTrajectory::Channel::kTheta, {step}};
  CHECK(st.at(0.99) == 0.0);
  CHECK(st.at(1.0) == 0.5);

  ReferenceSegment pw;
  pw.kind = ReferenceSegment::Kind::kPiecewise;
  pw.points = {{0.0, 0.0}, {1.0, 2.0}, {3.0, 2.0}};
  ReferenceTrajectory p{ReferenceTrajectory::Channel::kTheta, {pw}};
  CHECK(p.at(0.5) == doctest::Approx(1.0));
  CHECK(p.at(10.0) == doctest::Approx(2.0));
}

TEST_CASE("constant references hold with zero error") {
  const auto trace = run(hold(0.3, 340.0, 2.0));
  REQUIRE(trace.size() == 1001);
  for (const auto& s : trace) {
    CHECK(std::abs(s.alpha - s.alpha_ref) < 1e-6);
    CHECK(std::abs(s.beta - s.beta_ref) < 1e-6);
  }
  const auto& last = trace.back();
  CHECK(last.theta_est == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(last.stiffness_est == doctest::Approx(340.0).epsilon(1e-9));
}

TEST_CASE("estimates converge to slow references") {
  const auto worst = [](double rise) {
    TrackingScenario sc = hold(0.0, 300.0, 10.0);
    ReferenceSegment ramp;
    ramp.kind = ReferenceSegment::Kind::kRamp;
    ramp.amplitude = rise;
    ramp.duration = 10.0;
    sc.theta.segments = {ramp};
    double e = 0.0;
    for (const auto& s : run(sc)) e = std::max(e, std::abs(s.theta_est - s.theta_ref));
    return e;
  };
  const double fast = worst(0.1);
  const double slow = worst(0.001);
  CHECK(slow < 1e-5);
  CHECK(slow < fast / 10.0);
}

TEST_CASE("shipped scenarios track within one percent") {
  for (const auto& sc : {fig3a(), fig3b(), fig3c()}) {
    const auto m = tracking_metrics(run(sc));
    CHECK(m.rms_error_motor_pct < 1.0);
    CHECK(std::isfinite(m.rms_error_stiffness_pct));
    CHECK(m.saturation_fraction == 0.0);
  }
}

TEST_CASE("stiffness error falls with proportional gain") {
  double prev = std::numeric_limits<double>::infinity();
  for (double kp : {2000.0, 4000.0, 8000.0, 12500.0}) {
    ControllerConfig c;
    c.alpha.kp = c.beta.kp = kp;
    const auto m = tracking_metrics(run(fig3b(), c));
    CHECK(m.rms_error_stiffness_pct < prev);
    prev = m.rms_error_stiffness_pct;
  }
}

TEST_CASE("identical configurations give identical traces") {
  std::ostringstream a;
  std::ostringstream b;
  write_trace_csv(a, run(fig3c()), 25);
  write_trace_csv(b, run(fig3c()), 25);
  CHECK(a.str() == b.str());
  const std::string text = a.str();
  CHECK(text.substr(0, text.find('\n')) == kTraceHeader);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 501);
}

TEST_CASE("infeasible references are rejected before simulating") {
  CHECK_THROWS_AS(run(hold(0.0, 600.0, 1.0)), InfeasibleReference);
  TrackingScenario sc = hold(0.0, 200.0, 1.0);
  sc.load.points = {{0.0, 0.0}, {1.0, 500.0}};
  CHECK_THROWS_AS(run(sc), InfeasibleReference);
}

TEST_CASE("motor and controller validation") {
  MotorModel fast;
  fast.max_speed = 2.5;
  CHECK_THROWS_AS(run(hold(0.0, 340.0, 0.1), {}, fast), InvalidArgument);
  ControllerConfig bad;
  bad.rate = 0.0;
  CHECK_THROWS_AS(run(hold(0.0, 340.0, 0.1), bad), InvalidArgument);
  bad = {};
  bad.alpha.kd = -1.0;
  CHECK_THROWS_AS(run(hold(0.0, 340.0, 0.1), bad), InvalidArgument);
}

TEST_CASE("weak motors saturate without aborting") {
  MotorModel weak;
  weak.max_torque = 100.0;
  const auto trace = run(fig3a(), {}, weak);
  CHECK(trace.size() == 16001);
  CHECK(tracking_metrics(trace).saturation_fraction > 0.0);
}

TEST_CASE("metrics of synthetic traces") {
  CHECK_THROWS_AS(tracking_metrics({}), InvalidArgument);
  Trace perfect(5);
  for (int k = 0; k < 5; ++k) {
    auto& s = perfect[k];
    s.alpha_ref = s.alpha = 0.1 * k;
    s.beta_ref = s.beta = -0.1 * k;
    s.theta_ref = s.theta_est = 0.2 * k;
    s.stiffness_ref = s.stiffness_est = 300.0;
  }
  const auto zero = tracking_metrics(perfect);
  CHECK(zero.rms_error_motor_pct == 0.0);
  CHECK(zero.rms_error_theta_pct == 0.0);
  CHECK(zero.rms_error_stiffness_pct == 0.0);

  Trace offset = perfect;
  for (auto& s : offset) s.alpha += 0.004;
  // Range 0.4 rad, offset 0.004 rad.
  CHECK(tracking_metrics(offset).rms_error_motor_pct == doctest::Approx(1.0));
}

TEST_CASE("energy accounting") {
  Trace still(100);
  for (int k = 0; k < 100; ++k) still[k].t = 0.002 * k;
  CHECK(energy_estimate(still, {}, {}) == 0.0);

  const MotorModel m;
  const ElectricalModel e;
  const auto trace = run(fig3a(), {}, m);
  const double total = energy_estimate(trace, m, e);
  CHECK(total > 0.0);
  const Trace head(trace.begin(), trace.begin() + 7000);
  const Trace tail(trace.begin() + 6999, trace.end());
  CHECK(energy_estimate(head, m, e) + energy_estimate(tail, m, e) ==
        doctest::Approx(total).epsilon(1e-12));

  // 1 A through 2.5 Ω plus 100 N·mm at 2 rad/s.
  CHECK(motor_power(1000.0, 2.0, m, e) == doctest::Approx(2.5 + 2.0));
  CHECK(motor_power(-1000.0, 2.0, m, e) == doctest::Approx(2.5));
}

TEST_CASE("energy scenarios order by grasp and stiffness") {
  const MotorModel m;
  const ElectricalModel e;
  const auto scenarios = energy_scenarios(actuator());
  REQUIRE(scenarios.size() == 5);
  std::map<std::string, double> mwh;
  for (const auto& s : scenarios) {
    mwh[s.grasp + "_" + s.stiffness] = energy_estimate(run(s.scenario, {}, m), m, e);
  }
  CHECK(mwh["power_high"] > mwh["power_low"]);
  CHECK(mwh["pinch_high"] > mwh["pinch_low"]);
  CHECK(mwh["power_low"] > mwh["pinch_low"]);
  CHECK(mwh["power_high"] > mwh["pinch_high"]);
  CHECK(mwh["modulation_low_to_high"] > 0.0);

  EnergyParams zero;
  zero.close_time = zero.hold_time = zero.open_time = zero.modulation_time = 0.0;
  for (const auto& s : energy_scenarios(actuator(), zero)) {
    CHECK(energy_estimate(run(s.scenario, {}, m), m, e) == 0.0);
  }
}

TEST_CASE("battery grasp count") {
  CHECK(battery_grasp_count(1500.0, 6.4, 81.0) == doctest::Approx(1500.0 * 6.4 / 81.0));
  CHECK(std::abs(battery_grasp_count(1500.0, 6.4, 81.0) / 120.0 - 1.0) < 0.15);
  CHECK_THROWS_AS(battery_grasp_count(0.0, 6.4, 81.0), InvalidArgument);
}

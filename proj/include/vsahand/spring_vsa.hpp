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
 * Quasi-static model of the antagonistic tendon VSA.
 *
 *        motor 1 (alpha)                     motor 2 (beta)
 *           r_m  ──── spring 1 ──┐   ┌── spring 2 ──── r_m
 *                                 \ /
 *                                  O  joint pulley r_j, angle theta
 *
 * Deflections: x1 = r_m·alpha − r_j·theta, x2 = r_m·beta + r_j·theta.
 * Positive theta stretches spring 2 and relaxes spring 1; alpha and beta are
 * positive when their motor winds its tendon. Spring 1 drives flexion.
 * A load torque tau_load > 0 opposes positive theta.
 */

#pragma once

#include <utility>

#include "vsahand/cam_design.hpp"

namespace vsahand::vsa {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
};

struct VsaParameters {
  cam::QuadraticCoefficients coefficients;
  double r_j = 10.0;          // mm
  double r_m = 10.0;          // mm
  double spring_k = 2.0;      // N/mm
  double delta_x_max = 20.0;  // mm
  Interval alpha_limits{-6.283185307179586, 6.283185307179586};
  Interval beta_limits{-6.283185307179586, 6.283185307179586};

  static VsaParameters from_targets(const cam::StiffnessTargets& targets, double r_m);

  void validate() const;

  /// Tendon force at deflection x, offset so an undeflected spring carries no
  /// force when c < 0. The offset is common to both sides and cancels in torque.
  double tendon_force(double x) const;
  double tendon_stiffness(double x) const { return coefficients.slope(x); }
};

struct ActuatorState {
  double alpha = 0.0;       // rad
  double beta = 0.0;        // rad
  double tau_load = 0.0;    // N·mm
  double theta = 0.0;       // rad
  double stiffness = 0.0;   // N·mm/rad
  double tension1 = 0.0;    // N
  double tension2 = 0.0;    // N
  double deflection1 = 0.0; // mm
  double deflection2 = 0.0; // mm
  bool slack = false;
  bool over_travel = false;

  bool admissible() const { return !slack && !over_travel; }
};

/// Closed-form equilibrium angle and stiffness. Never throws; the returned state
/// flags slack or over-travel instead.
ActuatorState forward_unchecked(const VsaParameters& p, double alpha, double beta, double tau_load);

/// Closed-form equilibrium. Throws SlackTendon or OverTravel outside the admissible region.
ActuatorState forward(const VsaParameters& p, double alpha, double beta, double tau_load);

struct MotorCommand {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Motor angles realizing (theta_ref, s_ref) under tau_load. Throws
/// UnreachableStiffness, SlackTendon, OverTravel, or InvalidArgument when the
/// solution leaves the motor limits.
MotorCommand inverse(const VsaParameters& p, double theta_ref, double s_ref, double tau_load);

/// Same algebra without any admissibility checks.
MotorCommand inverse_unchecked(const VsaParameters& p, double theta_ref, double s_ref,
                               double tau_load);

struct OracleResult {
  double theta = 0.0;
  double stiffness = 0.0;
  double residual = 0.0;  // torque balance residual at the root, N·mm
};

/// Independent solution by bracketed root finding on the spring-pair torque
/// r_j·(F1 − F2) = tau_load, with stiffness from a centered difference of the
/// torque at the root. Throws NoSolution when the balance cannot be bracketed
/// inside the deflection limits.
OracleResult equilibrium_oracle(const VsaParameters& p, double alpha, double beta, double tau_load);

/// Achievable stiffness at zero co-contraction and at full spring travel.
std::pair<double, double> stiffness_range(const VsaParameters& p);

/// Largest |tau_load| the actuator can resist at stiffness s before a tendon slackens.
double max_load_at_stiffness(const VsaParameters& p, double s);

}  // namespace vsahand::vsa

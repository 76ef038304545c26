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

#include "vsahand/spring_vsa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsahand/errors.hpp"
#include "vsahand/numeric.hpp"

namespace vsahand::vsa {

namespace {

// Deflection slack absorbed as round-off at the admissible boundary, mm.
constexpr double kDeflectionTol = 1e-9;

constexpr double kOracleTorqueTol = 1e-12;  // N·mm
constexpr double kOracleStep = 1e-6;        // rad

double cocontraction_denominator(const VsaParameters& p, double alpha, double beta) {
  return p.coefficients.a * p.r_m * (alpha + beta) + p.coefficients.b;
}

}  // namespace

VsaParameters VsaParameters::from_targets(const cam::StiffnessTargets& targets, double r_m) {
  VsaParameters p;
  p.coefficients = cam::derive_coefficients(targets);
  p.r_j = targets.r_j;
  p.r_m = r_m;
  p.spring_k = targets.k;
  p.delta_x_max = targets.delta_x_max;
  p.validate();
  return p;
}

void VsaParameters::validate() const {
  if (!(r_j > 0.0)) throw InvalidArgument("r_j must be > 0");
  if (!(r_m > 0.0)) throw InvalidArgument("r_m must be > 0");
  if (!(spring_k > 0.0)) throw InvalidArgument("spring_k must be > 0");
  if (!(delta_x_max > 0.0)) throw InvalidArgument("delta_x_max must be > 0");
  if (coefficients.a < 0.0 || !(coefficients.b > 0.0)) {
    throw InvalidArgument("spring law needs a >= 0 and b > 0");
  }
  if (!(alpha_limits.lo < alpha_limits.hi) || !(beta_limits.lo < beta_limits.hi)) {
    throw InvalidArgument("motor limits must be non-empty intervals");
  }
}

double VsaParameters::tendon_force(double x) const {
  return coefficients.force(x) - std::min(coefficients.c, 0.0);
}

ActuatorState forward_unchecked(const VsaParameters& p, double alpha, double beta,
                                double tau_load) {
  ActuatorState s;
  s.alpha = alpha;
  s.beta = beta;
  s.tau_load = tau_load;
  const double d = cocontraction_denominator(p, alpha, beta);
  const double rj2 = p.r_j * p.r_j;
  s.theta = p.r_m / (2.0 * p.r_j) * (alpha - beta) - tau_load / (2.0 * rj2 * d);
  s.stiffness = 2.0 * p.coefficients.a * p.r_m * rj2 * (alpha + beta) + 2.0 * p.coefficients.b * rj2;
  s.deflection1 = p.r_m * alpha - p.r_j * s.theta;
  s.deflection2 = p.r_m * beta + p.r_j * s.theta;
  s.slack = s.deflection1 < -kDeflectionTol || s.deflection2 < -kDeflectionTol || d <= 0.0;
  s.over_travel = s.deflection1 > p.delta_x_max + kDeflectionTol ||
                  s.deflection2 > p.delta_x_max + kDeflectionTol;
  s.tension1 = std::max(0.0, p.tendon_force(std::max(0.0, s.deflection1)));
  s.tension2 = std::max(0.0, p.tendon_force(std::max(0.0, s.deflection2)));
  return s;
}

ActuatorState forward(const VsaParameters& p, double alpha, double beta, double tau_load) {
  ActuatorState s = forward_unchecked(p, alpha, beta, tau_load);
  if (s.slack) {
    throw SlackTendon("tendon slack: deflections (" + std::to_string(s.deflection1) + ", " +
                      std::to_string(s.deflection2) + ") mm");
  }
  if (s.over_travel) {
    throw OverTravel("spring over-travel: deflections (" + std::to_string(s.deflection1) + ", " +
                     std::to_string(s.deflection2) + ") mm exceed " +
                     std::to_string(p.delta_x_max) + " mm");
  }
  return s;
}

MotorCommand inverse_unchecked(const VsaParameters& p, double theta_ref, double s_ref,
                               double tau_load) {
  const double rj2 = p.r_j * p.r_j;
  const double sum = (s_ref - 2.0 * p.coefficients.b * rj2) / (2.0 * p.coefficients.a * p.r_m * rj2);
  const double diff = 2.0 * p.r_j / p.r_m * (theta_ref + tau_load / s_ref);
  return {0.5 * (sum + diff), 0.5 * (sum - diff)};
}

MotorCommand inverse(const VsaParameters& p, double theta_ref, double s_ref, double tau_load) {
  const auto [s_lo, s_hi] = stiffness_range(p);
  const double tol = 1e-9 * s_hi;
  if (s_ref < s_lo - tol || s_ref > s_hi + tol) {
    throw UnreachableStiffness("stiffness " + std::to_string(s_ref) + " N·mm/rad outside [" +
                               std::to_string(s_lo) + ", " + std::to_string(s_hi) + "]");
  }
  if (p.coefficients.a <= 0.0) {
    throw UnreachableStiffness("constant-stiffness spring law cannot be inverted for stiffness");
  }
  const MotorCommand cmd = inverse_unchecked(p, theta_ref, s_ref, tau_load);
  forward(p, cmd.alpha, cmd.beta, tau_load);  // throws on slack or over-travel
  if (!p.alpha_limits.contains(cmd.alpha) || !p.beta_limits.contains(cmd.beta)) {
    throw InvalidArgument("motor command (" + std::to_string(cmd.alpha) + ", " +
                          std::to_string(cmd.beta) + ") rad outside motor limits");
  }
  return cmd;
}

OracleResult equilibrium_oracle(const VsaParameters& p, double alpha, double beta,
                                double tau_load) {
  const auto& q = p.coefficients;
  // Net spring torque about the joint minus the load; decreasing in theta.
  const auto balance = [&](double theta) {
    const double x1 = p.r_m * alpha - p.r_j * theta;
    const double x2 = p.r_m * beta + p.r_j * theta;
    return p.r_j * (q.force(x1) - q.force(x2)) - tau_load;
  };
  // Theta range keeping both deflections in [0, delta_x_max].
  const double lo = std::max((p.r_m * alpha - p.delta_x_max) / p.r_j, -p.r_m * beta / p.r_j);
  const double hi = std::min(p.r_m * alpha / p.r_j, (p.delta_x_max - p.r_m * beta) / p.r_j);
  if (!(lo <= hi)) throw NoSolution("no theta keeps both springs within travel");
  const auto root = numeric::bisect(balance, lo, hi, kOracleTorqueTol, 0.0);
  if (!root) throw NoSolution("torque balance not bracketed within deflection limits");

  OracleResult r;
  r.theta = *root;
  r.residual = balance(r.theta);
  r.stiffness = -numeric::central_difference(balance, r.theta, kOracleStep);
  return r;
}

std::pair<double, double> stiffness_range(const VsaParameters& p) {
  const double rj2 = p.r_j * p.r_j;
  const double s_lo = 2.0 * p.coefficients.b * rj2;
  // theta = 0 and both springs at full travel: r_m·(alpha + beta) = 2·delta_x_max.
  const double sum_max = 2.0 * p.delta_x_max / p.r_m;
  const double s_hi = 2.0 * p.coefficients.a * p.r_m * rj2 * sum_max + s_lo;
  return {s_lo, s_hi};
}

double max_load_at_stiffness(const VsaParameters& p, double s) {
  const double d = s / (2.0 * p.r_j * p.r_j);
  if (p.coefficients.a <= 0.0) return p.r_j * d * p.delta_x_max;
  const double sigma = (d - p.coefficients.b) / p.coefficients.a;
  return std::max(0.0, p.r_j * d * std::min(sigma, 2.0 * p.delta_x_max - sigma));
}

}  // namespace vsahand::vsa

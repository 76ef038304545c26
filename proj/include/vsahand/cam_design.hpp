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

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vsahand::cam {

/// Design inputs for the expanding-contour cam.
struct StiffnessTargets {
  double s_min = 135.0;       // N·mm/rad
  double s_max = 545.0;       // N·mm/rad
  double r_j = 10.0;          // joint pulley radius, mm
  double delta_x_max = 20.0;  // spring travel along the cam, mm
  double k = 2.0;             // linear spring rate, N/mm

  /// Throws InvalidArgument naming the violated constraint.
  void validate() const;
};

/// F_app(x) = a·x² + b·x + c.
struct QuadraticCoefficients {
  double a = 0.0;  // N/mm²
  double b = 0.0;  // N/mm
  double c = 0.0;  // N, negative for most practical stiffness bounds

  double force(double x) const { return (a * x + b) * x + c; }
  double slope(double x) const { return 2.0 * a * x + b; }
};

struct CamSample {
  double x = 0.0;  // mm
  double y = 0.0;  // mm
};

/// Sampled contour on its feasible domain [x_lo, x_hi].
struct CamProfile {
  QuadraticCoefficients coefficients;
  double spring_k = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double m = 0.0;  // integration constant, pinned to zero by the (0,0) boundary condition
  std::vector<CamSample> samples;
};

QuadraticCoefficients derive_coefficients(const StiffnessTargets& targets);

/// (2a/3k)x³ + (b/k)x² + (2c/k)x, i.e. y_con² on the contour.
double radicand(const QuadraticCoefficients& coeffs, double spring_k, double x);

/// y_con(x), or nullopt where the radicand is negative.
std::optional<double> contour_y(const QuadraticCoefficients& coeffs, double spring_k, double x);

/// Largest nonnegative root of the radicand cubic. Zero when the radicand is
/// nonnegative everywhere on x >= 0.
double feasible_lower_bound(const QuadraticCoefficients& coeffs, double spring_k);

/// Throws NoSolution when no feasible interval of length delta_x_max exists.
CamProfile synthesize_profile(const StiffnessTargets& targets, int n_samples);

struct CheckResult {
  std::string name;
  bool passed = true;
  double max_residual = 0.0;
  int worst_index = -1;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs the monotonicity, radicand, contour-residual and virtual-work checks
/// on the sampled profile. Never throws; failures are carried in the report.
ValidationReport validate_profile(const CamProfile& profile);

}  // namespace vsahand::cam

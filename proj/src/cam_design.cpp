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

#include "vsahand/cam_design.hpp"

#include <algorithm>
#include <cmath>

#include "vsahand/errors.hpp"
#include "vsahand/numeric.hpp"

namespace vsahand::cam {

namespace {

// Root tolerance on the radicand, mm².
constexpr double kRootTolerance = 1e-12;

// Samples whose radicand is below this are treated as the y = 0 boundary.
constexpr double kBoundarySlack = 1e-9;

}  // namespace

void StiffnessTargets::validate() const {
  if (!(s_min > 0.0)) throw InvalidArgument("s_min must be > 0");
  if (!(s_max > s_min)) throw InvalidArgument("s_max must be > s_min");
  if (!(r_j > 0.0)) throw InvalidArgument("r_j must be > 0");
  if (!(delta_x_max > 0.0)) throw InvalidArgument("delta_x_max must be > 0");
  if (!(k > 0.0)) throw InvalidArgument("spring constant k must be > 0");
}

QuadraticCoefficients derive_coefficients(const StiffnessTargets& t) {
  t.validate();
  const double rj2 = t.r_j * t.r_j;
  QuadraticCoefficients q;
  q.a = (t.s_max - t.s_min) / (4.0 * rj2 * t.delta_x_max);
  q.b = t.s_min / (2.0 * rj2);
  q.c = -t.delta_x_max * (t.s_max * t.s_max - 2.0 * t.s_min * t.s_min) /
        (8.0 * rj2 * (t.s_max - t.s_min));
  return q;
}

double radicand(const QuadraticCoefficients& q, double spring_k, double x) {
  return (((2.0 * q.a / (3.0 * spring_k)) * x + q.b / spring_k) * x + 2.0 * q.c / spring_k) * x;
}

std::optional<double> contour_y(const QuadraticCoefficients& q, double spring_k, double x) {
  if (!(spring_k > 0.0)) throw InvalidArgument("spring_k must be > 0");
  const double r = radicand(q, spring_k, x);
  if (r < 0.0) return std::nullopt;
  return std::sqrt(r);
}

double feasible_lower_bound(const QuadraticCoefficients& q, double spring_k) {
  if (!(spring_k > 0.0)) throw InvalidArgument("spring_k must be > 0");
  // radicand = x·p(x) with p(x) = A x² + B x + C.
  const double A = 2.0 * q.a / (3.0 * spring_k);
  const double B = q.b / spring_k;
  const double C = 2.0 * q.c / spring_k;
  const auto p = [&](double x) { return (A * x + B) * x + C; };

  if (A <= 0.0) {
    if (B > 0.0) return C < 0.0 ? -C / B : 0.0;
    if (C >= 0.0 && B == 0.0) return 0.0;
    throw NoSolution("radicand is not eventually nonnegative; no feasible cam domain");
  }

  // Cauchy bound: every real root of p lies in |x| < 1 + max(|B|, |C|)/A.
  const double upper = 1.0 + std::max(std::abs(B), std::abs(C)) / A;
  double lo = 0.0;
  if (C >= 0.0) {
    const double vertex = -B / (2.0 * A);
    if (vertex <= 0.0 || p(vertex) >= 0.0) return 0.0;
    lo = vertex;
  }
  // For x > 0 the radicand and p share their sign and roots.
  const auto root = numeric::bisect(p, lo, upper, kRootTolerance, 0.0);
  if (!root) throw NoSolution("could not bracket the radicand root");
  // Step onto the feasible side so the boundary sample evaluates nonnegative.
  double x = *root;
  while (radicand(q, spring_k, x) < -kBoundarySlack) x = std::nextafter(x, upper);
  return x;
}

CamProfile synthesize_profile(const StiffnessTargets& targets, int n_samples) {
  if (n_samples < 16) throw InvalidArgument("n_samples must be >= 16");
  CamProfile prof;
  prof.coefficients = derive_coefficients(targets);
  prof.spring_k = targets.k;
  prof.x_lo = feasible_lower_bound(prof.coefficients, targets.k);
  prof.x_hi = prof.x_lo + targets.delta_x_max;

  // The contour rises only where the roller force is nonnegative.
  const auto& q = prof.coefficients;
  if (q.force(prof.x_lo) < 0.0 || q.force(prof.x_hi) < 0.0) {
    throw NoSolution("applied force is negative on the feasible domain");
  }

  prof.samples.reserve(static_cast<std::size_t>(n_samples));
  const double step = (prof.x_hi - prof.x_lo) / static_cast<double>(n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double x = i + 1 == n_samples ? prof.x_hi : prof.x_lo + step * i;
    const double r = radicand(q, targets.k, x);
    if (r < -kBoundarySlack) throw NoSolution("radicand negative inside the cam domain");
    prof.samples.push_back({x, std::sqrt(std::max(0.0, r))});
  }
  return prof;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate_profile(const CamProfile& prof) {
  ValidationReport report;
  const auto& s = prof.samples;
  const auto& q = prof.coefficients;
  const double k = prof.spring_k;

  CheckResult mono{"monotonic", true, 0.0, -1};
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double dx = s[i].x - s[i - 1].x;
    const double drop = s[i - 1].y - s[i].y;
    if (dx <= 0.0 || drop > 1e-12) {
      mono.passed = false;
      const double v = std::max(-dx, drop);
      if (mono.worst_index < 0 || v > mono.max_residual) {
        mono.max_residual = v;
        mono.worst_index = static_cast<int>(i);
      }
    }
  }
  if (!s.empty() && s.front().y < 0.0) mono.passed = false;
  report.checks.push_back(mono);

  CheckResult rad{"radicand_nonnegative", true, 0.0, -1};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = radicand(q, k, s[i].x);
    if (r < -kBoundarySlack && -r > rad.max_residual) {
      rad.passed = false;
      rad.max_residual = -r;
      rad.worst_index = static_cast<int>(i);
    }
  }
  report.checks.push_back(rad);

  CheckResult contour{"contour_residual", true, 0.0, -1};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = radicand(q, k, s[i].x);
    const double res = std::abs(s[i].y * s[i].y - r);
    if (res > contour.max_residual) {
      contour.max_residual = res;
      contour.worst_index = static_cast<int>(i);
    }
    if (res > 1e-9 * std::max(1.0, std::abs(r))) contour.passed = false;
  }
  report.checks.push_back(contour);

  // k·y·y' = (k/2)·d(y²)/dx, differenced on neighbouring samples so the
  // check stays well conditioned where y → 0.
  CheckResult work{"virtual_work", true, 0.0, -1};
  const double band = 0.01 * (prof.x_hi - prof.x_lo);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i].x - prof.x_lo < band) continue;
    const double dy2 = s[i + 1].y * s[i + 1].y - s[i - 1].y * s[i - 1].y;
    const double lhs = 0.5 * k * dy2 / (s[i + 1].x - s[i - 1].x);
    const double rhs = q.force(s[i].x);
    const double rel = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-12);
    if (rel > work.max_residual) {
      work.max_residual = rel;
      work.worst_index = static_cast<int>(i);
    }
    if (rel > 0.005) work.passed = false;
  }
  report.checks.push_back(work);
  return report;
}

}  // namespace vsahand::cam

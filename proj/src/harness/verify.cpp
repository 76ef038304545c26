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


#include "vsahand/harness/verify.hpp"

#include <chrono>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "vsahand/errors.hpp"
#include "vsahand/finger.hpp"
#include "vsahand/spring_vsa.hpp"
#include "vsahand/transmission.hpp"

namespace vsahand::harness {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRoundTripTheta = std::numbers::pi / 2.0;

VerifyCheck make(std::string campaign, std::string name, double tolerance) {
  VerifyCheck c;
  c.campaign = std::move(campaign);
  c.name = std::move(name);
  c.tolerance = tolerance;
  return c;
}

void record(VerifyCheck& c, double error) {
  ++c.cases;
  if (!(error <= c.max_error)) c.max_error = error;
  if (!(error <= c.tolerance)) c.passed = false;
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const VerifyCheck* VerifyReport::find(std::string_view campaign, std::string_view name) const {
  for (const auto& c : checks) {
    if (c.campaign == campaign && c.name == name) return &c;
  }
  return nullptr;
}

std::vector<VerifyCheck> verify_cam(const Config& c) {
  std::vector<VerifyCheck> out;
  cam::CamProfile profile;
  try {
    profile = cam::synthesize_profile(c.cam_targets, c.cam_samples);
  } catch (const Error& e) {
    auto v = make("cam", "synthesis", 0.0);
    record(v, kInf);
    out.push_back(v);
    return out;
  }
  const auto report = cam::validate_profile(profile);
  for (const auto& r : report.checks) {
    const double tol = r.name == "virtual_work" ? 0.005 : r.name == "contour_residual" ? 1e-9 : 0.0;
    auto v = make("cam", r.name, tol);
    v.cases = static_cast<int>(profile.samples.size());
    v.max_error = r.max_residual;
    v.passed = r.passed;
    out.push_back(v);
  }
  return out;
}

std::vector<VerifyCheck> verify_vsa_oracle(const Config& c, std::uint64_t seed,
                                           const VerifyFault& fault) {
  const auto p = c.vsa_parameters();
  auto closed = p;
  closed.coefficients.a *= fault.coefficient_a_scale;
  auto theta = make("vsa_oracle", "theta", 1e-9);
  auto stiffness = make("vsa_oracle", "stiffness_relative", 1e-3);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double motor_span = p.delta_x_max / p.r_m;
  const int target = c.verify.oracle_trials;
  for (int attempt = 0; theta.cases < target && attempt < 20 * target; ++attempt) {
    const double alpha = motor_span * u(rng);
    const double beta = motor_span * u(rng);
    const double s = vsa::forward_unchecked(p, alpha, beta, 0.0).stiffness;
    const double tau = (2.0 * u(rng) - 1.0) * vsa::max_load_at_stiffness(p, s) * 0.9;
    if (!vsa::forward_unchecked(p, alpha, beta, tau).admissible()) continue;
    const auto st = vsa::forward_unchecked(closed, alpha, beta, tau);
    try {
      const auto o = vsa::equilibrium_oracle(p, alpha, beta, tau);
      record(theta, std::abs(st.theta - o.theta));
      record(stiffness, std::abs(st.stiffness - o.stiffness) / o.stiffness);
    } catch (const NoSolution&) {
      record(theta, kInf);
      record(stiffness, kInf);
    }
  }
  if (theta.cases < target) theta.passed = stiffness.passed = false;
  return {theta, stiffness};
}

VerifyCheck verify_round_trip(const Config& c) {
  const auto p = c.vsa_parameters();
  const auto [s_lo, s_hi] = vsa::stiffness_range(p);
  auto v = make("vsa_round_trip", "forward_of_inverse", 1e-9);
  const int nt = c.verify.grid_theta;
  const int ns = c.verify.grid_stiffness;
  for (int i = 0; i < nt; ++i) {
    const double th = nt == 1 ? 0.0 : -kRoundTripTheta + 2.0 * kRoundTripTheta * i / (nt - 1);
    for (int j = 0; j < ns; ++j) {
      const double s = ns == 1 ? s_lo : s_lo + (s_hi - s_lo) * j / (ns - 1);
      try {
        const auto cmd = vsa::inverse(p, th, s, 0.0);
        const auto st = vsa::forward(p, cmd.alpha, cmd.beta, 0.0);
        record(v, std::max(std::abs(st.theta - th), std::abs(st.stiffness - s) / s));
      } catch (const Error&) {
        record(v, kInf);
      }
    }
  }
  return v;
}

std::vector<VerifyCheck> verify_transmission(const Config& c, std::uint64_t seed) {
  const auto tree = c.hand_spec().tree;
  auto ideal = tree;
  ideal.efficiency = 1.0;
  ideal.reduction = 1.0;
  auto split = make("transmission", "equal_split", 1e-9);
  auto constraint = make("transmission", "displacement_constraint", 1e-9);
  auto work = make("transmission", "ideal_work_conservation", 1e-9);

  std::mt19937_64 rng(seed ^ 0x7472616e736d6974ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < c.verify.oracle_trials; ++n) {
    const double t_in = 200.0 * u(rng);
    transmission::BlockedFlags blocked{};
    for (auto& b : blocked) b = u(rng) < 0.5;
    const auto t = transmission::distribute_tension(tree, t_in, blocked);
    double err = 0.0;
    double sum = 0.0;
    for (double ti : t) {
      err = std::max(err, std::abs(ti - t[0]));
      sum += ti;
    }
    err = std::max(err, std::abs(sum - transmission::kFingerCount * tree.output_share() * t_in));
    record(split, err);

    transmission::PerFinger k{};
    for (auto& ki : k) ki = 0.1 + 9.9 * u(rng);
    if (u(rng) < 0.25) k[n % transmission::kFingerCount] = kInf;
    const double d_in = 20.0 * u(rng);
    const auto d = transmission::distribute_displacement(tree, d_in, k);
    double cerr = d.constraint_residual;
    for (int i = 0; i < transmission::kFingerCount; ++i) {
      if (std::isfinite(k[i])) cerr = std::max(cerr, std::abs(k[i] * d.displacement[i] - d.tension));
    }
    record(constraint, cerr);

    const auto di = transmission::distribute_displacement(ideal, d_in, k);
    double w_out = 0.0;
    for (double x : di.displacement) w_out += di.tension * x;
    const double w_in = di.tension / ideal.output_share() * d_in;
    record(work, std::abs(w_in - w_out) / std::max(1.0, std::abs(w_in)));
  }
  return {split, constraint, work};
}

std::vector<VerifyCheck> verify_finger(const Config& c) {
  const auto hand = c.hand_spec();
  const std::vector<std::string> expected{"MCP_start", "MCP_limit", "PIP_start",
                                          "PIP_limit", "DIP_start", "DIP_limit"};
  auto log = make("finger", "event_log", 0.0);
  auto work = make("finger", "work_balance", 0.005);
  for (const auto& spec : hand.fingers) {
    const double top = 1.5 * finger::saturation_tension(spec, finger::kDip);
    std::vector<double> ramp(2000);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
      ramp[i] = top * static_cast<double>(i + 1) / static_cast<double>(ramp.size());
    }
    const auto tr = finger::closing_trajectory(spec, ramp);
    std::vector<std::string> labels;
    for (const auto& e : tr.events) labels.push_back(e.label());
    record(log, labels == expected ? 0.0 : 1.0);
    record(work, finger::work_balance(spec, tr).relative_residual);
  }
  return {log, work};
}

VerifyReport run_verify(const Config& c, std::uint64_t seed, const VerifyFault& fault) {
  VerifyReport r;
  const auto append = [&](std::vector<VerifyCheck> v) {
    r.checks.insert(r.checks.end(), v.begin(), v.end());
  };
  append(verify_cam(c));
  const auto t0 = std::chrono::steady_clock::now();
  append(verify_vsa_oracle(c, seed, fault));
  r.oracle_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.checks.push_back(verify_round_trip(c));
  append(verify_transmission(c, seed));
  append(verify_finger(c));
  return r;
}

void write_verify_csv(std::ostream& out, const VerifyReport& report) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "{}\n", kVerifyHeader);
  for (const auto& c : report.checks) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{:.6e},{:.1e},{}\n", c.campaign, c.name,
                   c.cases, c.max_error, c.tolerance, c.passed ? 1 : 0);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace vsahand::harness

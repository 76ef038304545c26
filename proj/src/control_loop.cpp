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

#include "vsahand/control_loop.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <ostream>

#include <fmt/format.h>

#include "vsahand/errors.hpp"

namespace vsahand::control {
namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kFrictionBlendSpeed = 0.01;  // rad/s

double interpolate(const std::vector<std::array<double, 2>>& pts, double t) {
  if (pts.empty()) return 0.0;
  if (t <= pts.front()[0]) return pts.front()[1];
  if (t >= pts.back()[0]) return pts.back()[1];
  const auto hi = std::upper_bound(pts.begin(), pts.end(), t,
                                   [](double v, const std::array<double, 2>& p) { return v < p[0]; });
  const auto lo = std::prev(hi);
  const double span = (*hi)[0] - (*lo)[0];
  if (span <= 0.0) return (*hi)[1];
  return (*lo)[1] + ((*hi)[1] - (*lo)[1]) * (t - (*lo)[0]) / span;
}

double segment_value(const ReferenceSegment& s, double t) {
  const double tau = t - s.t_start;
  switch (s.kind) {
    case ReferenceSegment::Kind::kSinusoid:
      return s.offset + s.amplitude * std::sin(kTwoPi * s.frequency * tau);
    case ReferenceSegment::Kind::kStep:
      return s.offset + (tau >= s.duration ? s.amplitude : 0.0);
    case ReferenceSegment::Kind::kRamp:
      if (s.duration <= 0.0) return s.offset + (tau >= 0.0 ? s.amplitude : 0.0);
      return s.offset + s.amplitude * std::clamp(tau / s.duration, 0.0, 1.0);
    case ReferenceSegment::Kind::kPiecewise:
      return interpolate(s.points, tau);
  }
  return s.offset;
}

void check_points(const std::vector<std::array<double, 2>>& pts, const char* what) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i][0] >= pts[i - 1][0])) {
      throw InvalidArgument(fmt::format("{} times must be nondecreasing", what));
    }
  }
}

// Share of the spring tension the motor feels through the Bowden stage: more
// than the spring tension when winding, less when paying out.
double bowden_factor(const transmission::BowdenStage& bowden, double omega) {
  const double w = 0.5 * (1.0 + std::tanh(omega / kFrictionBlendSpeed));
  return w / bowden.efficiency_forward + (1.0 - w) * bowden.efficiency_return;
}

double spring_tension(const vsa::VsaParameters& p, double deflection) {
  return deflection <= 0.0 ? 0.0 : std::max(0.0, p.tendon_force(deflection));
}

struct RangeStats {
  double lo = 0.0;
  double hi = 0.0;
  double sq = 0.0;
};

double rms_pct(const RangeStats& r, std::size_t n) {
  double range = r.hi - r.lo;
  if (range <= 1e-12) range = std::max(std::abs(r.hi), std::abs(r.lo));
  if (range <= 1e-12) range = 1.0;
  return 100.0 * std::sqrt(r.sq / static_cast<double>(n)) / range;
}

}  // namespace

void MotorModel::validate(double r_m) const {
  if (!(gear_ratio > 0.0 && max_speed > 0.0 && max_torque > 0.0 && viscous_friction > 0.0 &&
        rotor_inertia > 0.0)) {
    throw InvalidArgument("motor parameters must be > 0");
  }
  if (max_speed * r_m > kMaxTendonSpeed * (1.0 + 1e-12)) {
    throw InvalidArgument(fmt::format("motor speed {} rad/s at r_m {} mm exceeds {} mm/s tendon speed",
                                      max_speed, r_m, kMaxTendonSpeed));
  }
}

double MotorModel::output_inertia() const {
  // kg·mm² → N·mm·s²
  return rotor_inertia * gear_ratio * gear_ratio * 1e-3;
}

void ControllerConfig::validate() const {
  if (!(rate > 0.0)) throw InvalidArgument("controller rate must be > 0");
  for (const Gains* g : {&alpha, &beta}) {
    if (!(g->kp >= 0.0 && g->ki >= 0.0 && g->kd >= 0.0)) {
      throw InvalidArgument("controller gains must be >= 0");
    }
  }
  if (!(integral_clamp >= 0.0)) throw InvalidArgument("integral clamp must be >= 0");
}

void ElectricalModel::validate() const {
  if (!(torque_constant > 0.0 && resistance > 0.0 && supply_voltage > 0.0)) {
    throw InvalidArgument("electrical parameters must be > 0");
  }
}

double ElectricalModel::stall_torque(const MotorModel& motor) const {
  return supply_voltage / resistance * torque_constant * motor.gear_ratio;
}

ReferenceTrajectory ReferenceTrajectory::constant(Channel channel, double value) {
  ReferenceTrajectory r;
  r.channel = channel;
  ReferenceSegment s;
  s.kind = ReferenceSegment::Kind::kRamp;
  s.offset = value;
  r.segments.push_back(s);
  return r;
}

double ReferenceTrajectory::at(double t) const {
  if (segments.empty()) return 0.0;
  const ReferenceSegment* active = &segments.front();
  for (const auto& s : segments) {
    if (s.t_start <= t) active = &s;
  }
  return segment_value(*active, std::max(t, active->t_start));
}

double LoadProfile::at(double t) const { return interpolate(points, t); }

Trace run_tracking(const MotorModel& motor, const ControllerConfig& ctrl,
                   const vsa::VsaParameters& vsa, const TrackingScenario& scenario,
                   const ElectricalModel& electrical, const transmission::BowdenStage& bowden) {
  vsa.validate();
  motor.validate(vsa.r_m);
  ctrl.validate();
  electrical.validate();
  bowden.validate();
  if (!(scenario.duration >= 0.0)) throw InvalidArgument("scenario duration must be >= 0");
  check_points(scenario.load.points, "load profile");
  for (const auto* r : {&scenario.theta, &scenario.stiffness}) {
    for (const auto& s : r->segments) check_points(s.points, "reference");
  }

  const double dt = 1.0 / ctrl.rate;
  const auto n = static_cast<std::size_t>(std::floor(scenario.duration * ctrl.rate + 1e-9)) + 1;

  Trace trace(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& s = trace[k];
    s.t = static_cast<double>(k) * dt;
    s.theta_ref = scenario.theta.at(s.t);
    s.stiffness_ref = scenario.stiffness.at(s.t);
    s.tau_load = scenario.load.at(s.t);
    try {
      const auto cmd = vsa::inverse(vsa, s.theta_ref, s.stiffness_ref, s.tau_load);
      s.alpha_ref = cmd.alpha;
      s.beta_ref = cmd.beta;
    } catch (const Error& e) {
      throw InfeasibleReference(
          fmt::format("{}: reference infeasible at t = {:.3f} s: {}", scenario.name, s.t, e.what()));
    }
  }

  const double inertia = motor.output_inertia();
  const double limit = std::min(motor.max_torque, electrical.stall_torque(motor));
  const std::array<const Gains*, 2> gains{&ctrl.alpha, &ctrl.beta};
  std::array<double, 2> q{trace[0].alpha_ref, trace[0].beta_ref};
  std::array<double, 2> omega{0.0, 0.0};
  std::array<double, 2> integral{0.0, 0.0};

  const auto tendon_loads = [&](const vsa::ActuatorState& st) {
    return std::array<double, 2>{
        vsa.r_m * spring_tension(vsa, st.deflection1),
        vsa.r_m * spring_tension(vsa, st.deflection2)};
  };

  // Start in equilibrium: the integral carries the static tendon load.
  {
    const auto st = vsa::forward_unchecked(vsa, q[0], q[1], trace[0].tau_load);
    const auto loads = tendon_loads(st);
    for (int i = 0; i < 2; ++i) {
      if (gains[i]->ki > 0.0) {
        const double hold = std::clamp(loads[i] * bowden_factor(bowden, 0.0),
                                       -ctrl.integral_clamp, ctrl.integral_clamp);
        integral[i] = hold / gains[i]->ki;
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    auto& s = trace[k];
    const auto st = vsa::forward_unchecked(vsa, q[0], q[1], s.tau_load);
    s.alpha = q[0];
    s.beta = q[1];
    s.theta_est = st.theta;
    s.stiffness_est = st.stiffness;
    const auto loads = tendon_loads(st);
    const std::array<double, 2> ref{s.alpha_ref, s.beta_ref};
    const auto& prev = trace[k == 0 ? 0 : k - 1];
    const std::array<double, 2> ref_rate{(s.alpha_ref - prev.alpha_ref) / dt,
                                         (s.beta_ref - prev.beta_ref) / dt};

    for (int i = 0; i < 2; ++i) {
      const Gains& g = *gains[i];
      const double e = ref[i] - q[i];
      double u = g.kp * e + g.ki * integral[i] + g.kd * (ref_rate[i] - omega[i]);
      const bool torque_sat = std::abs(u) > limit;
      u = std::clamp(u, -limit, limit);
      if (g.ki > 0.0 && !(torque_sat && e * u > 0.0)) {
        const double bound = ctrl.integral_clamp / g.ki;
        integral[i] = std::clamp(integral[i] + e * dt, -bound, bound);
      }

      s.motor_torque[i] = u;
      s.motor_speed[i] = omega[i];
      s.power += motor_power(u, omega[i], motor, electrical);
      s.saturated = s.saturated || torque_sat;

      const double load = loads[i] * bowden_factor(bowden, omega[i]);
      omega[i] += dt * (u - motor.viscous_friction * omega[i] - load) / inertia;
      if (std::abs(omega[i]) > motor.max_speed) {
        omega[i] = std::copysign(motor.max_speed, omega[i]);
        s.saturated = true;
      }
      q[i] += dt * omega[i];
    }
  }
  return trace;
}

TrackingMetrics tracking_metrics(const Trace& trace) {
  if (trace.empty()) throw InvalidArgument("tracking metrics need a nonempty trace");
  std::array<RangeStats, 4> r;  // alpha, beta, theta, stiffness
  const auto first = trace.front();
  r[0].lo = r[0].hi = first.alpha_ref;
  r[1].lo = r[1].hi = first.beta_ref;
  r[2].lo = r[2].hi = first.theta_ref;
  r[3].lo = r[3].hi = first.stiffness_ref;
  std::size_t saturated = 0;
  for (const auto& s : trace) {
    const std::array<std::array<double, 2>, 4> pairs{{{s.alpha_ref, s.alpha},
                                                      {s.beta_ref, s.beta},
                                                      {s.theta_ref, s.theta_est},
                                                      {s.stiffness_ref, s.stiffness_est}}};
    for (int i = 0; i < 4; ++i) {
      r[i].lo = std::min(r[i].lo, pairs[i][0]);
      r[i].hi = std::max(r[i].hi, pairs[i][0]);
      const double e = pairs[i][1] - pairs[i][0];
      r[i].sq += e * e;
    }
    saturated += s.saturated;
  }
  const std::size_t n = trace.size();
  TrackingMetrics m;
  m.rms_error_motor_pct = std::max(rms_pct(r[0], n), rms_pct(r[1], n));
  m.rms_error_theta_pct = rms_pct(r[2], n);
  m.rms_error_stiffness_pct = rms_pct(r[3], n);
  m.saturation_fraction = static_cast<double>(saturated) / static_cast<double>(n);
  return m;
}

double motor_power(double tau, double omega, const MotorModel& motor,
                   const ElectricalModel& electrical) {
  const double current = tau / (motor.gear_ratio * electrical.torque_constant);
  // N·mm·rad/s = mW
  return current * current * electrical.resistance + std::max(0.0, tau * omega) * 1e-3;
}

double energy_estimate(const Trace& trace, const MotorModel& motor,
                       const ElectricalModel& electrical) {
  double joules = 0.0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    const auto& s = trace[k];
    double p = 0.0;
    for (int i = 0; i < 2; ++i) p += motor_power(s.motor_torque[i], s.motor_speed[i], motor, electrical);
    joules += p * (s.t - trace[k - 1].t);
  }
  return joules / 3.6;
}

void write_trace_csv(std::ostream& out, const Trace& trace, int stride) {
  if (stride < 1) throw InvalidArgument("trace stride must be >= 1");
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "{}\n", kTraceHeader);
  for (std::size_t k = 0; k < trace.size(); k += static_cast<std::size_t>(stride)) {
    const auto& s = trace[k];
    fmt::format_to(std::back_inserter(buf),
                   "{:.6f},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},"
                   "{:.12g},{:d}\n",
                   s.t, s.theta_ref, s.theta_est, s.stiffness_ref, s.stiffness_est, s.alpha_ref,
                   s.alpha, s.beta_ref, s.beta, s.tau_load, s.power, s.saturated ? 1 : 0);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

TrackingScenario fig3a(const Fig3aParams& p) {
  TrackingScenario sc;
  sc.name = "fig3a";
  sc.duration = p.duration;
  sc.stiffness = ReferenceTrajectory::constant(ReferenceTrajectory::Channel::kStiffness, p.stiffness);
  ReferenceSegment large;
  large.kind = ReferenceSegment::Kind::kSinusoid;
  large.amplitude = p.amplitude_large;
  large.frequency = p.frequency;
  ReferenceSegment small = large;
  small.t_start = p.switch_time;
  small.amplitude = p.amplitude_small;
  sc.theta.segments = {large, small};
  return sc;
}

TrackingScenario fig3b(const Fig3bParams& p) {
  TrackingScenario sc;
  sc.name = "fig3b";
  sc.duration = p.duration;
  sc.theta = ReferenceTrajectory::constant(ReferenceTrajectory::Channel::kTheta, 0.0);
  ReferenceSegment s;
  s.kind = ReferenceSegment::Kind::kSinusoid;
  s.offset = 0.5 * (p.stiffness_low + p.stiffness_high);
  s.amplitude = 0.5 * (p.stiffness_high - p.stiffness_low);
  s.frequency = p.frequency;
  sc.stiffness.segments = {s};
  return sc;
}

TrackingScenario fig3c(const Fig3cParams& p) {
  TrackingScenario sc = fig3b({p.stiffness_low, p.stiffness_high, p.frequency, p.duration});
  sc.name = "fig3c";
  ReferenceSegment stairs;
  stairs.kind = ReferenceSegment::Kind::kPiecewise;
  stairs.points.push_back({0.0, 0.0});
  for (int i = 1; i <= p.steps; ++i) {
    const double t = i * p.step_period;
    stairs.points.push_back({t, (i - 1) * p.step});
    stairs.points.push_back({t + p.step_rise, i * p.step});
  }
  sc.theta.segments = {stairs};
  return sc;
}

std::vector<EnergyScenario> energy_scenarios(const vsa::VsaParameters& vsa, const EnergyParams& p) {
  const auto grasp = [&](const std::string& name, const GraspProfile& g, double s) {
    TrackingScenario sc;
    sc.name = name;
    const double t_open = p.close_time + p.hold_time;
    sc.duration = t_open + p.open_time;
    sc.stiffness = ReferenceTrajectory::constant(ReferenceTrajectory::Channel::kStiffness, s);
    ReferenceSegment close;
    close.kind = ReferenceSegment::Kind::kRamp;
    close.amplitude = g.closing_angle;
    close.duration = p.close_time;
    ReferenceSegment open = close;
    open.t_start = t_open;
    open.offset = g.closing_angle;
    open.amplitude = -g.closing_angle;
    open.duration = p.open_time;
    sc.theta.segments = {close, open};
    const double tau = g.load_fraction * vsa::max_load_at_stiffness(vsa, s);
    sc.load.points = {{0.0, 0.0}, {p.close_time, tau}, {t_open, tau}, {sc.duration, 0.0}};
    return sc;
  };

  std::vector<EnergyScenario> out;
  out.push_back({"power", "low", grasp("power_low", p.power, p.levels.low)});
  out.push_back({"power", "high", grasp("power_high", p.power, p.levels.high)});
  out.push_back({"pinch", "low", grasp("pinch_low", p.pinch, p.levels.low)});
  out.push_back({"pinch", "high", grasp("pinch_high", p.pinch, p.levels.high)});

  const auto [s_lo, s_hi] = vsa::stiffness_range(vsa);
  TrackingScenario mod;
  mod.name = "modulation";
  mod.duration = p.modulation_time;
  mod.theta = ReferenceTrajectory::constant(ReferenceTrajectory::Channel::kTheta, 0.0);
  ReferenceSegment ramp;
  ramp.kind = ReferenceSegment::Kind::kRamp;
  ramp.offset = s_lo;
  ramp.amplitude = s_hi - s_lo;
  ramp.duration = p.modulation_time;
  mod.stiffness.segments = {ramp};
  out.push_back({"modulation", "low_to_high", mod});
  return out;
}

double battery_grasp_count(double capacity_mah, double nominal_voltage, double energy_mwh) {
  if (!(capacity_mah > 0.0 && nominal_voltage > 0.0 && energy_mwh > 0.0)) {
    throw InvalidArgument("battery capacity, voltage and grasp energy must be > 0");
  }
  return capacity_mah * nominal_voltage / energy_mwh;
}

}  // namespace vsahand::control

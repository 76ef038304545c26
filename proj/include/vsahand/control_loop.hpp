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
 * Discrete-time position control of the two VSA motors.
 *
 *   (theta_ref, S_ref) ─ inverse ─> (alpha_ref, beta_ref) ─ PID ─> motor ─┐
 *                                                                          │
 *   (theta_est, S_est) <──────────── forward <── (alpha, beta) <───────────┘
 *
 * Motor quantities are expressed at the gearbox output: angles in rad,
 * torques in N·mm. Each motor winds its tendon through a Bowden stage and
 * carries the spring tension on its pulley.
 */

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "vsahand/spring_vsa.hpp"
#include "vsahand/transmission.hpp"

namespace vsahand::control {

inline constexpr double kMaxTendonSpeed = 20.0;  // mm/s

struct MotorModel {
  double gear_ratio = 100.0;
  double max_speed = 2.0;         // rad/s at the output
  double max_torque = 3000.0;     // N·mm at the output
  double viscous_friction = 50.0; // N·mm·s/rad at the output
  double rotor_inertia = 0.5;     // kg·mm² at the rotor

  /// Throws InvalidArgument unless every field is positive and the tendon
  /// speed at pulley radius r_m stays within kMaxTendonSpeed.
  void validate(double r_m) const;
  /// Inertia seen at the output in N·mm·s².
  double output_inertia() const;
};

/// PID on the motor angle error; the derivative acts on the error rate.
struct Gains {
  double kp = 12500.0;   // N·mm/rad
  double ki = 125000.0;  // N·mm/(rad·s)
  double kd = 450.0;     // N·mm·s/rad
};

struct ControllerConfig {
  double rate = 500.0;  // Hz
  Gains alpha;
  Gains beta;
  double integral_clamp = 3000.0;  // N·mm, bound on the integral term

  void validate() const;
};

struct ElectricalModel {
  double torque_constant = 10.0;  // N·mm/A at the rotor
  double resistance = 2.5;        // Ω
  double supply_voltage = 6.4;    // V, bounds the stall current

  void validate() const;
  /// Output torque available at stall from the supply.
  double stall_torque(const MotorModel& motor) const;
};

struct ReferenceSegment {
  enum class Kind { kSinusoid, kStep, kRamp, kPiecewise };
  Kind kind = Kind::kSinusoid;
  double t_start = 0.0;       // s, segment is active from here until the next one
  double offset = 0.0;
  double amplitude = 0.0;     // sinusoid amplitude, step height, ramp rise
  double frequency = 0.0;     // Hz, sinusoid
  double duration = 0.0;      // s, ramp rise time
  std::vector<std::array<double, 2>> points;  // (t, value) relative to t_start, piecewise linear
};

struct ReferenceTrajectory {
  enum class Channel { kTheta, kStiffness };
  Channel channel = Channel::kTheta;
  std::vector<ReferenceSegment> segments;

  static ReferenceTrajectory constant(Channel channel, double value);
  double at(double t) const;
};

/// Piecewise-linear external torque on the joint, N·mm. Empty means no load.
struct LoadProfile {
  std::vector<std::array<double, 2>> points;  // (t, tau_load)

  double at(double t) const;
};

struct TrackingScenario {
  std::string name;
  ReferenceTrajectory theta{ReferenceTrajectory::Channel::kTheta, {}};
  ReferenceTrajectory stiffness{ReferenceTrajectory::Channel::kStiffness, {}};
  LoadProfile load;
  double duration = 0.0;  // s
};

struct TraceSample {
  double t = 0.0;
  double theta_ref = 0.0;
  double theta_est = 0.0;
  double stiffness_ref = 0.0;
  double stiffness_est = 0.0;
  double alpha_ref = 0.0;
  double alpha = 0.0;
  double beta_ref = 0.0;
  double beta = 0.0;
  double tau_load = 0.0;
  std::array<double, 2> motor_torque{};  // N·mm at the output
  std::array<double, 2> motor_speed{};   // rad/s at the output
  double power = 0.0;                    // W, both motors
  bool saturated = false;
};

using Trace = std::vector<TraceSample>;

/// Simulates the closed loop at the controller rate for the scenario duration.
/// Samples run from t = 0 to the last tick at or before the duration. Throws
/// InfeasibleReference before simulating when any tick's references fall
/// outside the admissible set of the inverse map.
Trace run_tracking(const MotorModel& motor, const ControllerConfig& ctrl,
                   const vsa::VsaParameters& vsa, const TrackingScenario& scenario,
                   const ElectricalModel& electrical = {},
                   const transmission::BowdenStage& bowden = {});

struct TrackingMetrics {
  double rms_error_motor_pct = 0.0;      // worse of the two motors
  double rms_error_theta_pct = 0.0;
  double rms_error_stiffness_pct = 0.0;
  double saturation_fraction = 0.0;
};

/// RMS errors in percent of the reference range (max − min over the trace).
/// A constant reference falls back to its magnitude, and a zero reference to
/// an absolute error. Throws InvalidArgument on an empty trace.
TrackingMetrics tracking_metrics(const Trace& trace);

/// Σ (I²R + max(0, τω)) over the trace for both motors, in mWh.
double energy_estimate(const Trace& trace, const MotorModel& motor,
                       const ElectricalModel& electrical);

/// Electrical power of one motor at output torque tau and speed omega, W.
double motor_power(double tau, double omega, const MotorModel& motor,
                   const ElectricalModel& electrical);

inline constexpr const char* kTraceHeader =
    "t_s,theta_ref_rad,theta_est_rad,S_ref_Nmm_rad,S_est_Nmm_rad,alpha_ref,alpha_act,beta_ref,"
    "beta_act,tau_load_Nmm,power_W,saturated";

/// Writes every `stride`-th sample.
void write_trace_csv(std::ostream& out, const Trace& trace, int stride = 1);

struct Fig3aParams {
  double stiffness = 340.0;                      // N·mm/rad
  double amplitude_large = 1.5707963267948966;   // rad
  double amplitude_small = 0.17453292519943295;  // rad
  double switch_time = 16.0;                     // s
  double frequency = 0.125;                      // Hz
  double duration = 32.0;                        // s
};

struct Fig3bParams {
  double stiffness_low = 340.0;   // N·mm/rad
  double stiffness_high = 500.0;  // N·mm/rad
  double frequency = 0.2;         // Hz
  double duration = 20.0;         // s
};

struct Fig3cParams {
  double stiffness_low = 340.0;
  double stiffness_high = 500.0;
  double frequency = 0.2;     // Hz
  double step = 0.2617993877991494;  // rad per step
  double step_period = 5.0;   // s
  double step_rise = 0.5;     // s
  int steps = 4;
  double duration = 25.0;     // s
};

/// Constant stiffness, two-phase sinusoidal position.
TrackingScenario fig3a(const Fig3aParams& p = {});
/// Constant zero position, sinusoidal stiffness between two levels.
TrackingScenario fig3b(const Fig3bParams& p = {});
/// Sinusoidal stiffness with a staircase position reference.
TrackingScenario fig3c(const Fig3cParams& p = {});

struct StiffnessLevels {
  double low = 200.0;           // N·mm/rad
  double intermediate = 340.0;  // N·mm/rad
  double high = 500.0;          // N·mm/rad
};

struct GraspProfile {
  double closing_angle = 0.0;   // rad
  double load_fraction = 0.0;   // share of the VSA load limit held during the grasp
};

struct EnergyParams {
  StiffnessLevels levels;
  GraspProfile power{1.2, 0.8};
  GraspProfile pinch{0.6, 0.6};
  double close_time = 2.0;   // s
  double hold_time = 3.0;    // s
  double open_time = 2.0;    // s
  double modulation_time = 2.0;  // s, lowest to highest stiffness
};

struct EnergyScenario {
  std::string grasp;      // "power", "pinch", "modulation"
  std::string stiffness;  // "low", "high", "low_to_high"
  TrackingScenario scenario;
};

/// Power and pinch grasps at low and high stiffness, then the stiffness
/// modulation from the lowest to the highest achievable level.
std::vector<EnergyScenario> energy_scenarios(const vsa::VsaParameters& vsa,
                                             const EnergyParams& p = {});

/// Number of grasps a battery supplies, capacity·voltage / energy per grasp.
double battery_grasp_count(double capacity_mah, double nominal_voltage, double energy_mwh);

}  // namespace vsahand::control

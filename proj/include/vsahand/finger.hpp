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
 * Planar kinetostatics of one tendon-driven compliant finger.
 *
 *   base ──(MCP)── proximal ──(PIP)── middle ──(DIP)── distal ── tip
 *
 * The extended finger points along the base heading; flexion rotates each
 * joint clockwise, toward the palmar side. Every free joint obeys
 *
 *     t·r_flex − t_ext·r_ext = preload + stiffness·angle
 *
 * and rests on its 0 rad extension stop while the left side is below the
 * preload. A phalanx that touches an obstacle locks its own joint and all
 * proximal joints; distal joints keep closing.
 */

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vsahand::finger {

using Vec2 = Eigen::Vector2d;

inline constexpr int kJointCount = 3;
enum JointIndex : int { kMcp = 0, kPip = 1, kDip = 2 };

const char* joint_name(int joint);

struct JointSpec {
  double stiffness = 0.0;      // N·mm/rad
  double preload = 0.0;        // N·mm
  double limit = 0.0;          // rad
  double flexion_arm = 0.0;    // mm
  double extension_arm = 0.0;  // mm
};

struct FingerSpec {
  std::array<JointSpec, kJointCount> joints{};
  std::array<double, kJointCount> phalanx_lengths{};  // mm
  double pad_friction_mu = 0.8;
  double pad_radius = 5.0;  // half thickness of a phalanx for contact, mm

  /// Throws InvalidArgument on the first violated invariant.
  void validate() const;
};

/// Sequential default: MCP, PIP and DIP thresholds do not overlap.
FingerSpec default_finger_spec();

using JointAngles = std::array<double, kJointCount>;

struct BasePose {
  Vec2 origin{0.0, 0.0};
  double heading = 0.0;  // rad, direction of the extended finger
};

/// Joint origins followed by the fingertip, and the heading of each phalanx.
struct Chain {
  std::array<Vec2, kJointCount + 1> points;
  std::array<double, kJointCount> heading{};

  Vec2 direction(int phalanx) const;
  /// Unit vector toward the palmar (flexion) side of a phalanx.
  Vec2 palmar(int phalanx) const;
};

Chain forward_kinematics(const FingerSpec& spec, const BasePose& base, const JointAngles& q);

struct ContactGeometry {
  Vec2 point{0.0, 0.0};
  Vec2 normal{0.0, 1.0};  // unit, from the obstacle into the finger
};

/// Anything a phalanx can run into.
class Obstacles {
 public:
  virtual ~Obstacles() = default;
  /// Signed clearance of a phalanx; <= 0 means touching or penetrating.
  virtual double clearance(const Chain& chain, const JointAngles& q, int phalanx) const = 0;
  virtual ContactGeometry contact(const Chain& chain, const JointAngles& q, int phalanx) const = 0;
};

class NoObstacles final : public Obstacles {
 public:
  double clearance(const Chain&, const JointAngles&, int) const override { return 1e300; }
  ContactGeometry contact(const Chain& chain, const JointAngles& q, int phalanx) const override;
};

/// Phalanx p touches when its own joint reaches `angle[p]`. Contact acts at
/// the phalanx midpoint, normal to the phalanx.
class AngleStops final : public Obstacles {
 public:
  std::array<std::optional<double>, kJointCount> angle{};

  double clearance(const Chain& chain, const JointAngles& q, int phalanx) const override;
  ContactGeometry contact(const Chain& chain, const JointAngles& q, int phalanx) const override;
};

struct FingerState {
  JointAngles angles{};
  std::array<bool, kJointCount> in_contact{};
  std::array<bool, kJointCount> at_limit{};
  double tendon_tension = 0.0;     // flexion, N
  double extension_tension = 0.0;  // N
  std::array<double, kJointCount> contact_forces{};  // normal, N
  std::array<ContactGeometry, kJointCount> contacts{};
};

enum class EventKind { kStart, kLimit, kContact, kRelease, kReturn };

struct Event {
  EventKind kind = EventKind::kStart;
  int joint = 0;        // joint, or phalanx for contact events
  double tension = 0.0; // tendon tension at which the event happens
  std::size_t sample = 0;

  /// "MCP_start", "PIP_limit", "DIP_contact", ...
  std::string label() const;
};

struct Trajectory {
  std::vector<FingerState> states;
  std::vector<Event> events;
};

/// Tension at which a joint leaves its extension stop.
double activation_tension(const FingerSpec& spec, int joint, double extension_tension = 0.0);
/// Tension at which a free joint reaches its flexion limit.
double saturation_tension(const FingerSpec& spec, int joint, double extension_tension = 0.0);

/// Quasi-static sweep over a tension history, recording one state per sample.
Trajectory closing_trajectory(const FingerSpec& spec, std::span<const double> tension_profile,
                              const Obstacles& obstacles = NoObstacles{},
                              const BasePose& base = {}, double extension_tension = 0.0);

/// Equilibrium reached by ramping the tendon from zero to `tension`.
FingerState finger_equilibrium(const FingerSpec& spec, double tension,
                               const Obstacles& obstacles = NoObstacles{},
                               const BasePose& base = {}, double extension_tension = 0.0);

/// Joint spring energy, preload counted as a constant torque.
double spring_energy(const FingerSpec& spec, const JointAngles& q);

struct WorkBalance {
  double tendon_work = 0.0;     // N·mm
  double spring_energy = 0.0;   // N·mm, change over the trajectory
  double contact_work = 0.0;    // N·mm, zero for fixed obstacles
  double relative_residual = 0.0;
};

WorkBalance work_balance(const FingerSpec& spec, const Trajectory& traj);

/// Translational tendon stiffness seen by one finger, N/mm.
struct TendonStiffness {
  double flexion = 0.0;
  double extension = 0.0;
};

struct Probe {
  int phalanx = kDip;
  double position = 1.0;  // fraction of the phalanx length from its joint
  /// World direction of the applied force; when empty, the force pushes
  /// toward the palmar side normal to the probed phalanx.
  std::optional<Vec2> direction;
};

/// Linearized Cartesian stiffness at the probe point along the probe force,
/// from joint springs in parallel with the tendons reflected through their
/// moment arms. Joints sitting on their flexion limit are treated as rigid.
/// Throws Singular when the probe cannot load any free joint.
double fingertip_stiffness(const FingerSpec& spec, const TendonStiffness& tendon,
                           const JointAngles& posture, const Probe& probe = {});

}  // namespace vsahand::finger

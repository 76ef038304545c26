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
 * Planar quasi-static grasping with four tendon-coupled fingers and a passive
 * support.
 *
 *    base ───────────────── fingers, extended along +x, flex toward −y
 *            ( object )
 *    ══════════════════════ passive support segment
 *
 * Objects are held still against the support while the fingers close on them.
 * Lifting acts out of the plane, so every contact contributes mu·N of hold.
 */

#pragma once

#include <array>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "vsahand/finger.hpp"
#include "vsahand/spring_vsa.hpp"
#include "vsahand/transmission.hpp"

namespace vsahand::hand {

using finger::Vec2;

inline constexpr int kFingers = transmission::kFingerCount;
inline constexpr double kGravity = 9.81;  // m/s²

struct Segment {
  Vec2 a{0.0, 0.0};
  Vec2 b{0.0, 0.0};
};

struct HandSpec {
  std::array<finger::FingerSpec, kFingers> fingers;
  std::array<finger::BasePose, kFingers> bases;
  Segment support;
  double support_friction_mu = 0.8;
  transmission::PulleyTree tree;
  vsa::VsaParameters vsa;

  void validate() const;
};

HandSpec default_hand_spec();

enum class ShapeKind { kCircle, kRectangle, kPolygon };

struct ObjectShape {
  std::string name;
  ShapeKind kind = ShapeKind::kCircle;
  Vec2 position{0.0, 0.0};  // mm, centre of the circle or origin of the body frame
  double orientation = 0.0; // rad
  double radius = 0.0;      // mm, circle
  double width = 0.0;       // mm, rectangle along body x
  double height = 0.0;      // mm, rectangle along body y
  std::vector<Vec2> vertices;  // mm, convex polygon in the body frame, counter-clockwise
  double stiffness = std::numeric_limits<double>::infinity();  // N/mm, infinite when rigid
  double mass = 0.0;        // kg

  void validate() const;
  bool rigid() const { return stiffness == std::numeric_limits<double>::infinity(); }
  /// World-frame outline of a rectangle or polygon.
  std::vector<Vec2> outline() const;
  Vec2 centroid() const;
};

/// Closest points between a segment and an object boundary.
struct Proximity {
  double distance = 0.0;  // negative penetration depth when the segment enters the object
  Vec2 on_object{0.0, 0.0};
  Vec2 on_segment{0.0, 0.0};
  Vec2 normal{0.0, 1.0};  // unit, out of the object toward the segment
};

Proximity proximity(const ObjectShape& object, const Segment& segment);

/// Moves the object along −y until it rests on the support.
ObjectShape place_on_support(const HandSpec& hand, ObjectShape object);

struct GraspCommand {
  enum class Mode { kTension, kDisplacement };
  Mode mode = Mode::kTension;
  double value = 160.0;  // drive tendon tension (N) or drive tendon take-up (mm)
  int steps = 200;
};

enum class GraspType { kNone, kPinch, kPower };

const char* grasp_type_name(GraspType t);

struct Contact {
  int finger = -1;     // -1 for the support
  int phalanx = -1;
  Vec2 point{0.0, 0.0};
  Vec2 normal{0.0, 1.0};  // unit, out of the object
  double normal_force = 0.0;      // N
  double tangential_force = 0.0;  // N, in-plane friction needed for equilibrium
  double indentation = 0.0;       // mm, nonzero for compliant objects
};

/// Pinch when every finger contact is on a distal phalanx, power when any
/// finger touches with a proximal or middle phalanx, none without finger contacts.
GraspType classify_grasp(const std::vector<Contact>& contacts);

struct GraspResult {
  std::vector<Contact> contacts;  // finger contacts first, then the support
  GraspType grasp_type = GraspType::kNone;
  bool success = false;
  double lift_capacity = 0.0;     // kg at the spec friction
  double drive_tension = 0.0;     // N
  double drive_displacement = 0.0;  // mm of drive tendon take-up
  transmission::PerFinger finger_tensions{};
  std::array<finger::FingerState, kFingers> fingers;
  double equilibrium_residual = 0.0;  // N and N·mm
  bool friction_feasible = false;
  bool vsa_saturated = false;     // drive tension beyond what the VSA can hold at this stiffness
  double tendon_work = 0.0;       // N·mm delivered to the fingers
};

/// Closes the hand on a fixed object and settles the contacts.
GraspResult simulate_grasp(const HandSpec& hand, const ObjectShape& object,
                           const GraspCommand& command, double vsa_stiffness);

/// Σ mu·N over all contacts, divided by g.
double lift_capacity(const GraspResult& result, double mu);

struct StiffnessSetting {
  std::string name;
  double stiffness = 0.0;  // N·mm/rad
};

struct SweepRow {
  std::string object;
  std::string stiffness_setting;
  GraspType grasp_type = GraspType::kNone;
  bool success = false;
  int n_contacts = 0;
  double peak_tension = 0.0;  // N
  double energy_mwh = 0.0;
  std::string error;          // empty unless the trial threw
};

/// Mechanical energy of one grasp at a stiffness setting: tendon work plus the
/// energy stored in both VSA springs, in mWh.
double grasp_energy_mwh(const HandSpec& hand, const GraspResult& result, double vsa_stiffness);

std::vector<SweepRow> grasp_sweep(const HandSpec& hand, const std::vector<ObjectShape>& objects,
                                  const std::vector<StiffnessSetting>& settings,
                                  const GraspCommand& command);

inline constexpr const char* kSweepHeader =
    "object,stiffness_setting,grasp_type,success,n_contacts,peak_tension_N,energy_mWh";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// One object per line: `<circle|rectangle|polygon> <name> key=value ...`.
/// Keys: x_mm, y_mm (omitted: rest on the support), angle_deg, r_mm, w_mm,
/// h_mm, vertices_mm (x,y;x,y;...), mass_kg, stiffness_N_per_mm.
/// Throws ConfigError with the offending line.
std::vector<ObjectShape> parse_object_suite(std::istream& in, const HandSpec& hand);

}  // namespace vsahand::hand

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

#include <array>

namespace vsahand::transmission {

inline constexpr int kFingerCount = 4;

using PerFinger = std::array<double, kFingerCount>;
using BlockedFlags = std::array<bool, kFingerCount>;

/// Resistance used for a finger that is held fixed (contact or joint limit), N/mm.
inline constexpr double kBlockedResistance = 1e6;

/// Binary tree of movable pulleys splitting one drive tendon over four fingers.
struct PulleyTree {
  int depth = 2;
  std::array<double, 2> pulley_radius_mm{6.0, 4.0};
  double efficiency = 1.0;  // per pulley pass
  double reduction = 1.0;   // input displacement / mean output displacement

  void validate() const;
  /// Fraction of the input tension reaching each output.
  double output_share() const;
};

PerFinger distribute_tension(const PulleyTree& tree, double input_tension,
                             const BlockedFlags& blocked = {});

struct DisplacementSplit {
  PerFinger displacement{};  // mm
  double tension = 0.0;      // common output tension, N
  double constraint_residual = 0.0;  // |input − reduction·mean(outputs)|, mm
};

/// Displacement split under equal output tension against linear per-finger
/// resistances (N/mm, may be +inf). Throws Singular when every resistance is
/// zero and the input displacement is nonzero.
DisplacementSplit distribute_displacement(const PulleyTree& tree, double input_disp,
                                          const PerFinger& resistances);

struct BowdenStage {
  double efficiency_forward = 0.9;
  double efficiency_return = 0.9;
  double slack_mm = 0.0;
  double compliance_mm_per_n = 0.0;

  void validate() const;
};

enum class Direction { kForward, kReturn };

struct BowdenOutput {
  double displacement = 0.0;  // mm
  double tension = 0.0;       // N
  bool in_slack = false;
};

BowdenOutput bowden_transfer(const BowdenStage& stage, double input_disp, double input_tension,
                             Direction direction);

/// Hand-side view of the two VSA tendon branches routed through the companion
/// flexion/extension pulley pair.
struct HandTendonState {
  double flexion_travel = 0.0;     // mm, positive closes the hand
  double extension_travel = 0.0;   // mm, equals −flexion_travel
  double cocontraction = 0.0;      // mm, common-mode take-up absorbed by the springs
  double flexion_tension = 0.0;    // N
  double extension_tension = 0.0;  // N
  double length_residual = 0.0;    // mm
};

/// `flexion_disp`/`extension_disp` are take-ups of each branch (negative pays out).
/// Throws OverTravel when the common-mode take-up exceeds `max_cocontraction`.
HandTendonState antagonistic_routing(double flexion_disp, double extension_disp,
                                     double flexion_tension, double extension_tension,
                                     double max_cocontraction);

}  // namespace vsahand::transmission

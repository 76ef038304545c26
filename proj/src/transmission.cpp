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

#include "vsahand/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsahand/errors.hpp"

namespace vsahand::transmission {

void PulleyTree::validate() const {
  if (depth < 1) throw InvalidArgument("pulley tree depth must be >= 1");
  if ((1 << depth) != kFingerCount) {
    throw InvalidArgument("pulley tree depth " + std::to_string(depth) + " does not feed " +
                          std::to_string(kFingerCount) + " fingers");
  }
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw InvalidArgument("pulley efficiency must lie in (0, 1]");
  }
  if (!(reduction > 0.0)) throw InvalidArgument("pulley tree reduction must be > 0");
  for (double r : pulley_radius_mm) {
    if (!(r > 0.0)) throw InvalidArgument("pulley radii must be > 0");
  }
}

double PulleyTree::output_share() const {
  // Each level halves the tension and costs one pass through a pulley.
  return std::pow(efficiency, depth) / static_cast<double>(1 << depth);
}

PerFinger distribute_tension(const PulleyTree& tree, double input_tension,
                             const BlockedFlags& /*blocked*/) {
  tree.validate();
  if (input_tension < 0.0) throw InvalidArgument("input tension must be >= 0");
  PerFinger out{};
  // Blocking changes where the fingers stop, not the static split.
  out.fill(input_tension * tree.output_share());
  return out;
}

DisplacementSplit distribute_displacement(const PulleyTree& tree, double input_disp,
                                          const PerFinger& resistances) {
  tree.validate();
  DisplacementSplit split;
  int n_free = 0;
  double mean_compliance = 0.0;
  for (double k : resistances) {
    if (k < 0.0 || std::isnan(k)) throw InvalidArgument("resistances must be >= 0");
    if (k == 0.0) {
      ++n_free;
    } else {
      mean_compliance += 1.0 / k / kFingerCount;
    }
  }
  const double mean_out = input_disp / tree.reduction;

  if (input_disp == 0.0) return split;
  if (n_free == kFingerCount) {
    throw Singular("all outputs unresisted: displacement split is indeterminate");
  }
  if (n_free > 0) {
    // Unresisted outputs cannot hold tension, so the tree runs slack and they
    // absorb the whole excursion between them.
    for (int i = 0; i < kFingerCount; ++i) {
      split.displacement[i] = resistances[i] == 0.0 ? kFingerCount * mean_out / n_free : 0.0;
    }
  } else {
    if (mean_compliance == 0.0) {
      throw Singular("every output is rigid but the input moved");
    }
    split.tension = mean_out / mean_compliance;
    for (int i = 0; i < kFingerCount; ++i) {
      split.displacement[i] = std::isinf(resistances[i]) ? 0.0 : split.tension / resistances[i];
    }
  }
  double sum = 0.0;
  for (double d : split.displacement) sum += d;
  split.constraint_residual = std::abs(input_disp - tree.reduction * sum / kFingerCount);
  return split;
}

void BowdenStage::validate() const {
  if (!(efficiency_forward > 0.0 && efficiency_forward <= 1.0) ||
      !(efficiency_return > 0.0 && efficiency_return <= 1.0)) {
    throw InvalidArgument("Bowden efficiencies must lie in (0, 1]");
  }
  if (slack_mm < 0.0 || compliance_mm_per_n < 0.0) {
    throw InvalidArgument("Bowden slack and compliance must be >= 0");
  }
}

BowdenOutput bowden_transfer(const BowdenStage& stage, double input_disp, double input_tension,
                             Direction direction) {
  stage.validate();
  if (input_tension < 0.0) throw InvalidArgument("Bowden input tension must be >= 0");
  BowdenOutput out;
  const double eta =
      direction == Direction::kForward ? stage.efficiency_forward : stage.efficiency_return;
  out.tension = input_tension * eta;
  out.in_slack = input_disp < stage.slack_mm;
  out.displacement =
      std::max(0.0, input_disp - stage.slack_mm) - input_tension * stage.compliance_mm_per_n;
  return out;
}

HandTendonState antagonistic_routing(double flexion_disp, double extension_disp,
                                     double flexion_tension, double extension_tension,
                                     double max_cocontraction) {
  if (flexion_tension < 0.0 || extension_tension < 0.0) {
    throw InvalidArgument("tendon tensions must be >= 0");
  }
  HandTendonState s;
  s.cocontraction = 0.5 * (flexion_disp + extension_disp);
  const double net = 0.5 * (flexion_disp - extension_disp);
  if (s.cocontraction > max_cocontraction) {
    throw OverTravel("co-contraction " + std::to_string(s.cocontraction) +
                     " mm exceeds spring travel " + std::to_string(max_cocontraction) + " mm");
  }
  s.flexion_travel = net;
  s.extension_travel = -net;
  s.flexion_tension = flexion_tension;
  s.extension_tension = extension_tension;
  // Each branch's take-up is its common-mode part plus its share of the motion.
  s.length_residual = std::abs(s.cocontraction + s.flexion_travel - flexion_disp) +
                      std::abs(s.cocontraction + s.extension_travel - extension_disp);
  return s;
}

}  // namespace vsahand::transmission

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
 * Minimal SVG output: line plots with axes and grasp snapshots.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vsahand/hand_sim.hpp"

namespace vsahand::harness {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotLabels {
  std::string title;
  std::string x;
  std::string y;
};

/// Polylines sharing one pair of axes. Series colours cycle through a fixed palette.
void write_plot_svg(std::ostream& out, const PlotLabels& labels,
                    const std::vector<PlotSeries>& series);

/// Support, object outline, finger chains and contact normals in the hand plane.
void write_grasp_svg(std::ostream& out, const hand::HandSpec& hand,
                     const hand::ObjectShape& object, const hand::GraspResult& result);

}  // namespace vsahand::harness

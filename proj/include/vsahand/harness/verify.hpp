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
 * Seeded property campaigns comparing every closed form with an independent
 * oracle or conservation law.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vsahand/harness/config.hpp"

namespace vsahand::harness {

struct VerifyCheck {
  std::string campaign;
  std::string name;
  int cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  double oracle_seconds = 0.0;  // wall time of the oracle campaign, not in the CSV

  bool passed() const;
  const VerifyCheck* find(std::string_view campaign, std::string_view name) const;
};

/// Deliberate defects for testing the harness itself.
struct VerifyFault {
  double coefficient_a_scale = 1.0;  // applied to the closed form only
};

/// Synthesizes the cam and runs every profile check on it.
std::vector<VerifyCheck> verify_cam(const Config& c);
/// θ and S of the closed form against the bracketed oracle at `trials`
/// admissible (α, β, τ_load) drawn from `seed`.
std::vector<VerifyCheck> verify_vsa_oracle(const Config& c, std::uint64_t seed,
                                           const VerifyFault& fault = {});
/// forward(inverse(θ, S)) over a θ × S grid spanning the reachable stiffness.
VerifyCheck verify_round_trip(const Config& c);
std::vector<VerifyCheck> verify_transmission(const Config& c, std::uint64_t seed);
std::vector<VerifyCheck> verify_finger(const Config& c);

VerifyReport run_verify(const Config& c, std::uint64_t seed, const VerifyFault& fault = {});

inline constexpr const char* kVerifyHeader = "campaign,check,cases,max_error,tolerance,passed";

void write_verify_csv(std::ostream& out, const VerifyReport& report);

}  // namespace vsahand::harness

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

#include "vsahand/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "vsahand/errors.hpp"

namespace vsahand::harness {
namespace {

using Target = std::variant<double*, int*, std::uint64_t*, std::string*>;

struct Key {
  std::string section;
  std::string name;
  Target target;
};

std::vector<Key> keys(Config& c) {
  auto& t = c.cam_targets;
  auto& m = c.motor;
  auto& k = c.controller;
  auto& e = c.electrical;
  auto& en = c.energy;
  auto& ch = c.characterize;
  return {
      {"vsa", "s_min_Nmm_rad", &t.s_min},
      {"vsa", "s_max_Nmm_rad", &t.s_max},
      {"vsa", "r_j_mm", &t.r_j},
      {"vsa", "r_m_mm", &c.r_m},
      {"vsa", "delta_x_max_mm", &t.delta_x_max},
      {"vsa", "spring_k_N_per_mm", &t.k},
      {"cam", "samples", &c.cam_samples},
      {"motor", "gear_ratio", &m.gear_ratio},
      {"motor", "max_speed_rad_s", &m.max_speed},
      {"motor", "max_torque_Nmm", &m.max_torque},
      {"motor", "viscous_friction_Nmm_s_rad", &m.viscous_friction},
      {"motor", "rotor_inertia_kg_mm2", &m.rotor_inertia},
      {"controller", "rate_Hz", &k.rate},
      {"controller", "alpha_kp_Nmm_rad", &k.alpha.kp},
      {"controller", "alpha_ki_Nmm_rad_s", &k.alpha.ki},
      {"controller", "alpha_kd_Nmm_s_rad", &k.alpha.kd},
      {"controller", "beta_kp_Nmm_rad", &k.beta.kp},
      {"controller", "beta_ki_Nmm_rad_s", &k.beta.ki},
      {"controller", "beta_kd_Nmm_s_rad", &k.beta.kd},
      {"controller", "integral_clamp_Nmm", &k.integral_clamp},
      {"electrical", "torque_constant_Nmm_A", &e.torque_constant},
      {"electrical", "resistance_ohm", &e.resistance},
      {"electrical", "supply_voltage_V", &e.supply_voltage},
      {"bowden", "efficiency_forward", &c.bowden.efficiency_forward},
      {"bowden", "efficiency_return", &c.bowden.efficiency_return},
      {"track", "csv_stride", &c.trace_stride},
      {"fig3a", "stiffness_Nmm_rad", &c.fig3a.stiffness},
      {"fig3a", "amplitude_large_rad", &c.fig3a.amplitude_large},
      {"fig3a", "amplitude_small_rad", &c.fig3a.amplitude_small},
      {"fig3a", "switch_time_s", &c.fig3a.switch_time},
      {"fig3a", "frequency_Hz", &c.fig3a.frequency},
      {"fig3a", "duration_s", &c.fig3a.duration},
      {"fig3b", "stiffness_low_Nmm_rad", &c.fig3b.stiffness_low},
      {"fig3b", "stiffness_high_Nmm_rad", &c.fig3b.stiffness_high},
      {"fig3b", "frequency_Hz", &c.fig3b.frequency},
      {"fig3b", "duration_s", &c.fig3b.duration},
      {"fig3c", "stiffness_low_Nmm_rad", &c.fig3c.stiffness_low},
      {"fig3c", "stiffness_high_Nmm_rad", &c.fig3c.stiffness_high},
      {"fig3c", "frequency_Hz", &c.fig3c.frequency},
      {"fig3c", "step_rad", &c.fig3c.step},
      {"fig3c", "step_period_s", &c.fig3c.step_period},
      {"fig3c", "step_rise_s", &c.fig3c.step_rise},
      {"fig3c", "steps", &c.fig3c.steps},
      {"fig3c", "duration_s", &c.fig3c.duration},
      {"custom", "theta_offset_rad", &c.custom.theta_offset},
      {"custom", "theta_amplitude_rad", &c.custom.theta_amplitude},
      {"custom", "theta_frequency_Hz", &c.custom.theta_frequency},
      {"custom", "stiffness_offset_Nmm_rad", &c.custom.stiffness_offset},
      {"custom", "stiffness_amplitude_Nmm_rad", &c.custom.stiffness_amplitude},
      {"custom", "stiffness_frequency_Hz", &c.custom.stiffness_frequency},
      {"custom", "duration_s", &c.custom.duration},
      {"stiffness_levels", "low_Nmm_rad", &en.levels.low},
      {"stiffness_levels", "intermediate_Nmm_rad", &en.levels.intermediate},
      {"stiffness_levels", "high_Nmm_rad", &en.levels.high},
      {"energy", "power_closing_angle_rad", &en.power.closing_angle},
      {"energy", "power_load_fraction", &en.power.load_fraction},
      {"energy", "pinch_closing_angle_rad", &en.pinch.closing_angle},
      {"energy", "pinch_load_fraction", &en.pinch.load_fraction},
      {"energy", "close_time_s", &en.close_time},
      {"energy", "hold_time_s", &en.hold_time},
      {"energy", "open_time_s", &en.open_time},
      {"energy", "modulation_time_s", &en.modulation_time},
      {"battery", "capacity_mAh", &c.battery.capacity_mah},
      {"battery", "nominal_voltage_V", &c.battery.nominal_voltage},
      {"characterize", "trials", &ch.trials},
      {"characterize", "samples", &ch.samples},
      {"characterize", "force_max_N", &ch.force_max},
      {"characterize", "force_spread", &ch.force_spread},
      {"characterize", "joint_stiffness_scale", &ch.joint_stiffness_scale},
      {"characterize", "mcp_low_deg", &ch.mcp_angles_deg[0]},
      {"characterize", "mcp_mid_deg", &ch.mcp_angles_deg[1]},
      {"characterize", "mcp_high_deg", &ch.mcp_angles_deg[2]},
      {"characterize", "min_r", &ch.min_r},
      {"grasp", "tension_N", &c.grasp.tension},
      {"grasp", "steps", &c.grasp.steps},
      {"grasp", "pad_friction_mu", &c.grasp.pad_friction_mu},
      {"grasp", "support_friction_mu", &c.grasp.support_friction_mu},
      {"grasp", "suite_path", &c.grasp.suite_path},
      {"verify", "oracle_trials", &c.verify.oracle_trials},
      {"verify", "grid_theta", &c.verify.grid_theta},
      {"verify", "grid_stiffness", &c.verify.grid_stiffness},
      {"general", "seed", &c.seed},
  };
}

template <typename T>
T parse_integral(const std::string& key, const std::string& text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, text));
  }
  return v;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: expected a finite number, got '{}'", key, text));
  }
  return v;
}

std::string render(const Target& t) {
  return std::visit(
      [](auto* p) -> std::string {
        using V = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<V, double>) {
          return fmt::format("{}", *p);
        } else if constexpr (std::is_same_v<V, std::string>) {
          return *p;
        } else {
          return std::to_string(*p);
        }
      },
      t);
}

void validate(const Config& c) {
  const auto wrap = [](const char* section, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(fmt::format("[{}] {}", section, e.what()));
    }
  };
  wrap("vsa", [&] { c.vsa_parameters().validate(); });
  wrap("motor", [&] { c.motor.validate(c.r_m); });
  wrap("controller", [&] { c.controller.validate(); });
  wrap("electrical", [&] { c.electrical.validate(); });
  wrap("bowden", [&] { c.bowden.validate(); });
  wrap("grasp", [&] { c.hand_spec().validate(); });
  if (c.cam_samples < 2) throw ConfigError("[cam] samples must be >= 2");
  if (c.trace_stride < 1) throw ConfigError("[track] csv_stride must be >= 1");
  if (c.fig3c.steps < 0) throw ConfigError("[fig3c] steps must be >= 0");
  const auto& l = c.energy.levels;
  if (!(l.low < l.intermediate && l.intermediate < l.high)) {
    throw ConfigError("[stiffness_levels] levels must increase low < intermediate < high");
  }
  const auto& ch = c.characterize;
  if (ch.trials < 1 || ch.samples < 2) {
    throw ConfigError("[characterize] needs trials >= 1 and samples >= 2");
  }
  if (!(ch.force_max > 0.0 && ch.force_spread >= 0.0 && ch.force_spread < 1.0 &&
        ch.joint_stiffness_scale > 0.0)) {
    throw ConfigError("[characterize] force_max_N and joint_stiffness_scale must be > 0, "
                      "force_spread in [0, 1)");
  }
  if (!(c.grasp.tension >= 0.0) || c.grasp.steps < 1) {
    throw ConfigError("[grasp] tension_N must be >= 0 and steps >= 1");
  }
  if (!(c.battery.capacity_mah > 0.0 && c.battery.nominal_voltage > 0.0)) {
    throw ConfigError("[battery] capacity and voltage must be > 0");
  }
  if (c.verify.oracle_trials < 1 || c.verify.grid_theta < 2 || c.verify.grid_stiffness < 2) {
    throw ConfigError("[verify] needs oracle_trials >= 1 and grids >= 2");
  }
}

}  // namespace

control::TrackingScenario CustomTrackParams::scenario() const {
  control::TrackingScenario sc;
  sc.name = "custom";
  sc.duration = duration;
  control::ReferenceSegment th;
  th.kind = control::ReferenceSegment::Kind::kSinusoid;
  th.offset = theta_offset;
  th.amplitude = theta_amplitude;
  th.frequency = theta_frequency;
  control::ReferenceSegment st = th;
  st.offset = stiffness_offset;
  st.amplitude = stiffness_amplitude;
  st.frequency = stiffness_frequency;
  sc.theta.segments = {th};
  sc.stiffness.segments = {st};
  return sc;
}

vsa::VsaParameters Config::vsa_parameters() const {
  return vsa::VsaParameters::from_targets(cam_targets, r_m);
}

hand::HandSpec Config::hand_spec() const {
  hand::HandSpec h = hand::default_hand_spec();
  h.vsa = vsa_parameters();
  h.support_friction_mu = grasp.support_friction_mu;
  for (auto& f : h.fingers) f.pad_friction_mu = grasp.pad_friction_mu;
  return h;
}

Config parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.message(), static_cast<int>(e.line()));
  }

  Config c;
  std::map<std::string, Target> index;
  std::set<std::string> sections;
  for (auto& k : keys(c)) {
    index.emplace(k.section + "." + k.name, k.target);
    sections.insert(k.section);
  }

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(fmt::format("key '{}' must appear inside a section", section));
    }
    if (!sections.count(section)) throw ConfigError(fmt::format("unknown section [{}]", section));
    for (const auto& [name, value] : body) {
      const std::string full = section + "." + name;
      const auto it = index.find(full);
      if (it == index.end()) throw ConfigError(fmt::format("unknown key '{}'", full));
      const std::string text = value.get_value<std::string>();
      std::visit(
          [&](auto* p) {
            using V = std::remove_pointer_t<decltype(p)>;
            if constexpr (std::is_same_v<V, double>) {
              *p = parse_double(full, text);
            } else if constexpr (std::is_same_v<V, std::string>) {
              *p = text;
            } else {
              *p = parse_integral<V>(full, text);
            }
          },
          it->second);
    }
  }
  validate(c);
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  try {
    return parse_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

std::vector<std::string> config_keys() {
  Config c;
  std::vector<std::string> out;
  for (const auto& k : keys(c)) out.push_back(k.section + "." + k.name + " = " + render(k.target));
  return out;
}

std::string dump_config(const Config& c) {
  Config copy = c;
  std::ostringstream out;
  std::string section;
  for (const auto& k : keys(copy)) {
    if (k.section != section) {
      if (!section.empty()) out << '\n';
      section = k.section;
      out << '[' << section << "]\n";
    }
    out << k.name << " = " << render(k.target) << '\n';
  }
  return out.str();
}

}  // namespace vsahand::harness

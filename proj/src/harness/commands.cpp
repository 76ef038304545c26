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


#include "vsahand/harness/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "vsahand/cam_design.hpp"
#include "vsahand/errors.hpp"
#include "vsahand/harness/artifacts.hpp"
#include "vsahand/harness/verify.hpp"
#include "vsahand/hand_sim.hpp"

#ifndef VSAHAND_DATA_DIR
#define VSAHAND_DATA_DIR "data"
#endif

namespace vsahand::harness {
namespace {

namespace fs = std::filesystem;

std::ostream& log_of(const RunOptions& o) { return o.log ? *o.log : std::cout; }

fs::path data_dir() {
  if (const char* env = std::getenv("VSAHAND_DATA_DIR"); env && *env) return env;
  return VSAHAND_DATA_DIR;
}

std::ofstream open_output(const RunOptions& o, const fs::path& name) {
  std::error_code ec;
  fs::create_directories((o.out_dir / name).parent_path(), ec);
  std::ofstream f(o.out_dir / name, std::ios::binary);
  if (!f) throw ConfigError(fmt::format("cannot write '{}'", (o.out_dir / name).string()));
  return f;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  }
  return s;
}

const char* mode_name(CharacterizeMode m) {
  return m == CharacterizeMode::kStiffness ? "stiffness" : "position";
}

}  // namespace

fs::path default_reference_path() { return data_dir() / "reference_values.csv"; }
fs::path default_suite_path() { return data_dir() / "object_suite.txt"; }

std::vector<ReferenceValue> load_reference_values(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open reference values '{}'", path.string()));
  std::vector<ReferenceValue> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1 || line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 4) {
      throw ConfigError(fmt::format("{}: expected 4 columns", path.string()), n);
    }
    ReferenceValue r{cells[0], cells[1], 0.0, cells[3]};
    try {
      std::size_t used = 0;
      r.value = std::stod(cells[2], &used);
      if (used != cells[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("{}: bad value '{}'", path.string(), cells[2]), n);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<double> find_reference(const std::vector<ReferenceValue>& table,
                                     std::string_view quantity, std::string_view condition) {
  for (const auto& r : table) {
    if (r.quantity == quantity && r.condition == condition) return r.value;
  }
  return std::nullopt;
}

control::TrackingScenario tracking_scenario(const Config& c, std::string_view name) {
  if (name == "fig3a") return control::fig3a(c.fig3a);
  if (name == "fig3b") return control::fig3b(c.fig3b);
  if (name == "fig3c") return control::fig3c(c.fig3c);
  if (name == "custom") return c.custom.scenario();
  throw ConfigError(fmt::format("unknown tracking scenario '{}'", name));
}

control::Trace run_scenario(const Config& c, const control::TrackingScenario& scenario) {
  return control::run_tracking(c.motor, c.controller, c.vsa_parameters(), scenario, c.electrical,
                               c.bowden);
}

std::vector<EnergyRow> energy_table(const Config& c) {
  std::vector<ReferenceValue> reference;
  try {
    reference = load_reference_values(default_reference_path());
  } catch (const ConfigError&) {
  }
  std::vector<EnergyRow> rows;
  for (const auto& s : control::energy_scenarios(c.vsa_parameters(), c.energy)) {
    EnergyRow r;
    r.grasp = s.grasp;
    r.stiffness = s.stiffness;
    r.simulated_mwh = control::energy_estimate(run_scenario(c, s.scenario), c.motor, c.electrical);
    r.reference_mwh = find_reference(reference, "energy", s.grasp + "_" + s.stiffness);
    rows.push_back(std::move(r));
  }
  return rows;
}

EnergyOrdering check_energy_ordering(const Config& c, const std::vector<EnergyRow>& rows,
                                     const std::vector<ReferenceValue>& reference) {
  const auto get = [&](std::string_view g, std::string_view s) {
    for (const auto& r : rows) {
      if (r.grasp == g && r.stiffness == s) return r.simulated_mwh;
    }
    throw InvalidArgument(fmt::format("energy row {}_{} missing", g, s));
  };
  EnergyOrdering o;
  const double pl = get("power", "low"), ph = get("power", "high");
  const double nl = get("pinch", "low"), nh = get("pinch", "high");
  const double m = get("modulation", "low_to_high");
  o.power_over_pinch = pl > nl && ph > nh;
  o.high_over_low = ph > pl && nh > nl;
  o.modulation_smallest = m < pl && m < ph && m < nl && m < nh;
  const auto per_grasp = find_reference(reference, "energy", "power_high");
  const auto count = find_reference(reference, "battery", "grasps");
  if (per_grasp && count) {
    o.battery_grasps =
        control::battery_grasp_count(c.battery.capacity_mah, c.battery.nominal_voltage, *per_grasp);
    o.battery_consistent = std::abs(o.battery_grasps / *count - 1.0) <= 0.15;
  }
  return o;
}

void write_energy_csv(std::ostream& out, const std::vector<EnergyRow>& rows) {
  fmt::memory_buffer b;
  fmt::format_to(std::back_inserter(b), "{}\n", kEnergyHeader);
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(b), "{},{},{:.6f},{}\n", r.grasp, r.stiffness,
                   r.simulated_mwh, r.reference_mwh ? fmt::format("{:g}", *r.reference_mwh) : "");
  }
  out.write(b.data(), static_cast<std::streamsize>(b.size()));
}

int cmd_synth_cam(const Config& c, const RunOptions& o) {
  auto& log = log_of(o);
  const auto profile = cam::synthesize_profile(c.cam_targets, c.cam_samples);
  const auto report = cam::validate_profile(profile);
  {
    auto f = open_output(o, "cam_profile.csv");
    fmt::memory_buffer b;
    fmt::format_to(std::back_inserter(b), "{}\n", kCamHeader);
    for (const auto& s : profile.samples) {
      fmt::format_to(std::back_inserter(b), "{:.12g},{:.12g}\n", s.x, s.y);
    }
    f.write(b.data(), static_cast<std::streamsize>(b.size()));
  }
  {
    auto f = open_output(o, "cam_metadata.txt");
    const auto& q = profile.coefficients;
    fmt::print(f, "a_N_per_mm2 = {:.12g}\nb_N_per_mm = {:.12g}\nc_N = {:.12g}\n", q.a, q.b, q.c);
    fmt::print(f, "spring_k_N_per_mm = {:.12g}\nx_lo_mm = {:.12g}\nx_hi_mm = {:.12g}\n",
               profile.spring_k, profile.x_lo, profile.x_hi);
    fmt::print(f, "samples = {}\n", profile.samples.size());
    for (const auto& ch : report.checks) {
      fmt::print(f, "check.{} = {} (max residual {:.6e})\n", ch.name, ch.passed ? "pass" : "fail",
                 ch.max_residual);
    }
  }
  if (o.svg) {
    PlotSeries s{"contour", {}, {}};
    for (const auto& p : profile.samples) {
      s.x.push_back(p.x);
      s.y.push_back(p.y);
    }
    auto f = open_output(o, "cam_profile.svg");
    write_plot_svg(f, {"Cam contour", "x [mm]", "y [mm]"}, {s});
  }
  fmt::print(log, "cam: a={:.6g} b={:.6g} c={:.6g}, domain [{:.4f}, {:.4f}] mm, {} samples\n",
             profile.coefficients.a, profile.coefficients.b, profile.coefficients.c, profile.x_lo,
             profile.x_hi, profile.samples.size());
  for (const auto& ch : report.checks) {
    fmt::print(log, "  {:<22} {}  max residual {:.3e}\n", ch.name, ch.passed ? "PASS" : "FAIL",
               ch.max_residual);
  }
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_track(const Config& c, const RunOptions& o, std::string_view name) {
  auto& log = log_of(o);
  const auto scenario = tracking_scenario(c, name);
  control::Trace trace;
  try {
    trace = run_scenario(c, scenario);
  } catch (const InfeasibleReference& e) {
    fmt::print(log, "track {}: infeasible reference: {}\n", name, e.what());
    return kExitFailure;
  }
  const auto m = control::tracking_metrics(trace);
  const double mwh = control::energy_estimate(trace, c.motor, c.electrical);
  const std::string stem = fmt::format("track_{}", name);
  {
    auto f = open_output(o, stem + ".csv");
    control::write_trace_csv(f, trace, c.trace_stride);
  }
  const std::string summary = fmt::format(
      "scenario = {}\nduration_s = {:g}\nsamples = {}\nrms_error_motor_pct = {:.6f}\n"
      "rms_error_theta_pct = {:.6f}\nrms_error_stiffness_pct = {:.6f}\n"
      "saturation_fraction = {:.6f}\nenergy_mWh = {:.6f}\n",
      name, scenario.duration, trace.size(), m.rms_error_motor_pct, m.rms_error_theta_pct,
      m.rms_error_stiffness_pct, m.saturation_fraction, mwh);
  {
    auto f = open_output(o, stem + "_metrics.txt");
    f << summary;
  }
  if (o.svg) {
    PlotSeries tr{"theta ref", {}, {}}, te{"theta est", {}, {}};
    PlotSeries sr{"S ref", {}, {}}, se{"S est", {}, {}};
    for (std::size_t k = 0; k < trace.size(); k += c.trace_stride) {
      const auto& s = trace[k];
      tr.x.push_back(s.t);
      tr.y.push_back(s.theta_ref);
      te.x.push_back(s.t);
      te.y.push_back(s.theta_est);
      sr.x.push_back(s.t);
      sr.y.push_back(s.stiffness_ref);
      se.x.push_back(s.t);
      se.y.push_back(s.stiffness_est);
    }
    auto f1 = open_output(o, stem + "_theta.svg");
    write_plot_svg(f1, {fmt::format("{} position", name), "t [s]", "theta [rad]"}, {tr, te});
    auto f2 = open_output(o, stem + "_stiffness.svg");
    write_plot_svg(f2, {fmt::format("{} stiffness", name), "t [s]", "S [N mm/rad]"}, {sr, se});
  }
  log << summary;
  return kExitOk;
}

int cmd_characterize(const Config& c, const RunOptions& o, CharacterizeMode mode) {
  auto& log = log_of(o);
  auto p = c.characterize;
  p.levels = c.energy.levels;
  const auto report = characterize(c.hand_spec(), p, mode, c.seed);
  const std::string stem = fmt::format("characterize_{}", mode_name(mode));
  {
    auto f = open_output(o, stem + ".csv");
    write_characterize_csv(f, report);
  }
  std::vector<ReferenceValue> reference;
  try {
    reference = load_reference_values(default_reference_path());
  } catch (const ConfigError&) {
  }
  bool ok = true;
  for (const auto& t : report.trials) {
    if (!t.fit_ok) {
      ok = false;
      fmt::print(log, "fit failure: {} trial {} r={:.4f}\n", t.condition, t.trial, t.fit.r);
    }
  }
  fmt::print(log, "characterize {}: joint stiffness scale {:g}\n", mode_name(mode),
             p.joint_stiffness_scale);
  for (std::size_t i = 0; i < report.conditions.size(); ++i) {
    const auto ref = find_reference(reference, "hand_stiffness", report.conditions[i]);
    fmt::print(log, "  {:<13} slope {:.4f} N/mm  reference {}\n", report.conditions[i],
               report.mean_slopes[i], ref ? fmt::format("{:g}", *ref) : "-");
  }
  fmt::print(log, "  min r {:.6f}\n", report.min_r);
  if (o.svg) {
    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < report.conditions.size(); ++i) {
      const double k = report.mean_slopes[i];
      series.push_back({report.conditions[i], {0.0, p.force_max / k}, {0.0, p.force_max}});
    }
    auto f = open_output(o, stem + ".svg");
    write_plot_svg(f, {fmt::format("Fingertip stiffness, {} mode", mode_name(mode)),
                       "deflection [mm]", "force [N]"},
                   series);
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_grasp(const Config& c, const RunOptions& o) {
  auto& log = log_of(o);
  const auto hand = c.hand_spec();
  const fs::path suite = c.grasp.suite_path.empty() ? default_suite_path() : fs::path(c.grasp.suite_path);
  std::ifstream in(suite);
  if (!in) throw ConfigError(fmt::format("cannot open object suite '{}'", suite.string()));
  std::vector<hand::ObjectShape> objects;
  try {
    objects = hand::parse_object_suite(in, hand);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", suite.string(), e.what()));
  }
  const auto& l = c.energy.levels;
  const std::vector<hand::StiffnessSetting> settings{
      {"low", l.low}, {"intermediate", l.intermediate}, {"high", l.high}};
  hand::GraspCommand cmd;
  cmd.value = c.grasp.tension;
  cmd.steps = c.grasp.steps;
  const auto rows = hand::grasp_sweep(hand, objects, settings, cmd);
  {
    auto f = open_output(o, "grasp_results.csv");
    hand::write_sweep_csv(f, rows);
  }
  int succeeded = 0;
  int errors = 0;
  for (const auto& r : rows) {
    succeeded += r.success ? 1 : 0;
    if (!r.error.empty()) {
      ++errors;
      fmt::print(log, "grasp error: {} at {}: {}\n", r.object, r.stiffness_setting, r.error);
    }
  }
  if (o.svg) {
    for (const auto& obj : objects) {
      for (const auto& s : settings) {
        try {
          const auto result = hand::simulate_grasp(hand, obj, cmd, s.stiffness);
          auto f = open_output(o, fs::path("grasp") /
                                      fmt::format("{}_{}.svg", sanitize(obj.name), s.name));
          write_grasp_svg(f, hand, obj, result);
        } catch (const Error&) {
        }
      }
    }
  }
  fmt::print(log, "grasp: {} objects x {} settings, {} successful, {} errors\n", objects.size(),
             settings.size(), succeeded, errors);
  return errors == 0 ? kExitOk : kExitFailure;
}

int cmd_energy(const Config& c, const RunOptions& o) {
  auto& log = log_of(o);
  const auto rows = energy_table(c);
  std::vector<ReferenceValue> reference;
  try {
    reference = load_reference_values(default_reference_path());
  } catch (const ConfigError&) {
  }
  {
    auto f = open_output(o, "energy.csv");
    write_energy_csv(f, rows);
  }
  const auto cell = [&](std::string_view g, std::string_view s) {
    for (const auto& r : rows) {
      if (r.grasp == g && r.stiffness == s) {
        return fmt::format("{:8.3f} ({:>4})", r.simulated_mwh,
                           r.reference_mwh ? fmt::format("{:g}", *r.reference_mwh) : "-");
      }
    }
    return std::string("-");
  };
  fmt::print(log, "Energy [mWh], simulated (reference)\n");
  fmt::print(log, "{:<22}{:<20}{:<20}\n", "", "Low stiffness", "High stiffness");
  fmt::print(log, "{:<22}{:<20}{:<20}\n", "Power grasp", cell("power", "low"), cell("power", "high"));
  fmt::print(log, "{:<22}{:<20}{:<20}\n", "Pinch grasp", cell("pinch", "low"), cell("pinch", "high"));
  fmt::print(log, "{:<22}{:<40}\n", "Stiffness modulation", cell("modulation", "low_to_high"));
  const auto ord = check_energy_ordering(c, rows, reference);
  const auto line = [&](const char* what, bool ok) {
    fmt::print(log, "{} {}\n", ok ? "PASS" : "FAIL", what);
  };
  line("power grasp above pinch grasp at equal stiffness", ord.power_over_pinch);
  line("high stiffness above low stiffness per grasp", ord.high_over_low);
  line("stiffness modulation smallest", ord.modulation_smallest);
  fmt::print(log, "{} battery: {:.1f} grasps per charge\n", ord.battery_consistent ? "PASS" : "FAIL",
             ord.battery_grasps);
  return ord.all() ? kExitOk : kExitFailure;
}

int cmd_verify(const Config& c, const RunOptions& o, bool inject_fault) {
  auto& log = log_of(o);
  VerifyFault fault;
  if (inject_fault) fault.coefficient_a_scale = 1.01;
  const auto report = run_verify(c, c.seed, fault);
  {
    auto f = open_output(o, "verify_report.csv");
    write_verify_csv(f, report);
  }
  for (const auto& ch : report.checks) {
    fmt::print(log, "{} {}.{}  cases={} max_error={:.3e} tol={:.1e}\n",
               ch.passed ? "PASS" : "FAIL", ch.campaign, ch.name, ch.cases, ch.max_error,
               ch.tolerance);
  }
  return report.passed() ? kExitOk : kExitFailure;
}

}  // namespace vsahand::harness

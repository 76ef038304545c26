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

#include "vsahand/finger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "vsahand/errors.hpp"

namespace vsahand::finger {

namespace {

constexpr double kAngleTol = 1e-12;     // rad
constexpr int kSubsteps = 32;           // contact search resolution per sample
constexpr int kContactBisections = 60;
constexpr int kEquilibriumSamples = 256;

// Rotate by −90°: velocity of a point under unit clockwise joint rotation.
Vec2 clockwise_perp(const Vec2& v) { return {v.y(), -v.x()}; }

double free_angle(const JointSpec& j, double tension, double extension_tension) {
  const double torque = tension * j.flexion_arm - extension_tension * j.extension_arm - j.preload;
  return std::clamp(torque / j.stiffness, 0.0, j.limit);
}

struct Sweep {
  const FingerSpec& spec;
  const Obstacles& obstacles;
  const BasePose& base;
  double extension_tension;

  JointAngles q{};
  std::array<bool, kJointCount> contact{};
  double tension = 0.0;
  std::vector<Event>* events = nullptr;
  std::size_t sample = 0;

  bool locked(int j) const {
    for (int p = j; p < kJointCount; ++p) {
      if (contact[p]) return true;
    }
    return false;
  }

  JointAngles config(double t) const {
    JointAngles out = q;
    for (int j = 0; j < kJointCount; ++j) {
      if (!locked(j)) out[j] = free_angle(spec.joints[j], t, extension_tension);
    }
    return out;
  }

  double clearance(const JointAngles& angles, int p) const {
    return obstacles.clearance(forward_kinematics(spec, base, angles), angles, p);
  }

  void emit(EventKind kind, int joint, double t) { events->push_back({kind, joint, t, sample}); }

  // Threshold crossings of free joints while the lock set is constant.
  void emit_thresholds(double t_a, double t_b) {
    std::vector<Event> found;
    for (int j = 0; j < kJointCount; ++j) {
      if (locked(j)) continue;
      const double t_on = activation_tension(spec, j, extension_tension);
      const double t_sat = saturation_tension(spec, j, extension_tension);
      if (t_b > t_a) {
        if (t_a <= t_on && t_on < t_b) found.push_back({EventKind::kStart, j, t_on, sample});
        if (t_a < t_sat && t_sat <= t_b) found.push_back({EventKind::kLimit, j, t_sat, sample});
      } else if (t_b < t_a) {
        if (t_b <= t_on && t_on < t_a) found.push_back({EventKind::kReturn, j, t_on, sample});
      }
    }
    const bool rising = t_b >= t_a;
    std::stable_sort(found.begin(), found.end(), [rising](const Event& l, const Event& r) {
      return rising ? l.tension < r.tension : l.tension > r.tension;
    });
    events->insert(events->end(), found.begin(), found.end());
  }

  std::array<bool, kJointCount> release_contacts(double t) {
    std::array<bool, kJointCount> released{};
    for (int p = kJointCount - 1; p >= 0; --p) {
      if (!contact[p]) continue;
      if (free_angle(spec.joints[p], t, extension_tension) < q[p] - kAngleTol) {
        contact[p] = false;
        released[p] = true;
        emit(EventKind::kRelease, p, t);
      }
    }
    return released;
  }

  void touch_penetrating(double t, const std::array<bool, kJointCount>& skip = {}) {
    for (int p = 0; p < kJointCount; ++p) {
      if (!contact[p] && !skip[p] && clearance(q, p) <= 0.0) {
        contact[p] = true;
        emit(EventKind::kContact, p, t);
      }
    }
  }

  void advance(double t_target) {
    std::array<bool, kJointCount> released{};
    if (t_target < tension) released = release_contacts(t_target);
    touch_penetrating(tension, released);
    double t_a = tension;
    while (t_a != t_target) {
      double hit_t = t_target;
      int hit_p = -1;
      double s_prev = t_a;
      for (int i = 1; i <= kSubsteps && hit_p < 0; ++i) {
        const double s = i == kSubsteps ? t_target : t_a + (t_target - t_a) * i / kSubsteps;
        for (int p = 0; p < kJointCount; ++p) {
          if (contact[p] || clearance(config(s), p) > 0.0) continue;
          double lo = s_prev;
          double hi = s;
          for (int k = 0; k < kContactBisections; ++k) {
            const double mid = 0.5 * (lo + hi);
            if (clearance(config(mid), p) > 0.0) {
              lo = mid;
            } else {
              hi = mid;
            }
          }
          if (hit_p < 0 || std::abs(hi - t_a) < std::abs(hit_t - t_a)) {
            hit_t = hi;
            hit_p = p;
          }
        }
        s_prev = s;
      }
      emit_thresholds(t_a, hit_t);
      q = config(hit_t);
      if (hit_p >= 0) {
        contact[hit_p] = true;
        emit(EventKind::kContact, hit_p, hit_t);
        touch_penetrating(hit_t);
      }
      t_a = hit_t;
    }
    tension = t_target;
  }

  FingerState state() const {
    FingerState s;
    s.angles = q;
    s.in_contact = contact;
    s.tendon_tension = tension;
    s.extension_tension = extension_tension;
    for (int j = 0; j < kJointCount; ++j) {
      s.at_limit[j] = q[j] >= spec.joints[j].limit - kAngleTol;
    }
    const Chain chain = forward_kinematics(spec, base, q);
    // Back-substitute normal forces from the distal contact inward; each
    // contacted joint balances its own tendon surplus against the contact
    // moments of its own and all more distal contacts.
    for (int p = kJointCount - 1; p >= 0; --p) {
      if (!contact[p]) continue;
      s.contacts[p] = obstacles.contact(chain, q, p);
      const auto& j = spec.joints[p];
      double surplus = tension * j.flexion_arm - extension_tension * j.extension_arm - j.preload -
                       j.stiffness * q[p];
      const auto flex_moment = [&](int c) {
        const Vec2 lever = s.contacts[c].point - chain.points[p];
        return clockwise_perp(lever).dot(s.contacts[c].normal);
      };
      for (int c = p + 1; c < kJointCount; ++c) {
        if (contact[c]) surplus += s.contact_forces[c] * flex_moment(c);
      }
      const double own = flex_moment(p);
      s.contact_forces[p] = own < -1e-12 ? std::max(0.0, -surplus / own) : 0.0;
    }
    return s;
  }
};

}  // namespace

const char* joint_name(int joint) {
  switch (joint) {
    case kMcp: return "MCP";
    case kPip: return "PIP";
    case kDip: return "DIP";
    default: return "?";
  }
}

void FingerSpec::validate() const {
  for (int i = 0; i < kJointCount; ++i) {
    const auto& j = joints[i];
    const std::string name = joint_name(i);
    if (!(j.stiffness > 0.0)) throw InvalidArgument(name + " stiffness must be > 0");
    if (j.preload < 0.0) throw InvalidArgument(name + " preload must be >= 0");
    if (!(j.limit > 0.0 && j.limit <= std::numbers::pi / 2 + 1e-12)) {
      throw InvalidArgument(name + " limit must lie in (0, pi/2]");
    }
    if (!(j.flexion_arm > 0.0 && j.extension_arm > 0.0)) {
      throw InvalidArgument(name + " moment arms must be > 0");
    }
    if (!(j.flexion_arm > j.extension_arm)) {
      throw InvalidArgument(name + " flexion arm must exceed the extension arm");
    }
    if (!(phalanx_lengths[i] > 0.0)) throw InvalidArgument("phalanx lengths must be > 0");
  }
  if (!(joints[kMcp].stiffness < joints[kPip].stiffness &&
        joints[kPip].stiffness < joints[kDip].stiffness)) {
    throw InvalidArgument("joint stiffness must increase from MCP to DIP");
  }
  if (pad_friction_mu < 0.0) throw InvalidArgument("pad friction must be >= 0");
  if (pad_radius < 0.0) throw InvalidArgument("pad radius must be >= 0");
}

FingerSpec default_finger_spec() {
  FingerSpec s;
  s.joints[kMcp] = {2.0, 2.7, std::numbers::pi / 2, 9.0, 5.0};
  s.joints[kPip] = {2.5, 7.0, std::numbers::pi / 2, 7.0, 4.0};
  s.joints[kDip] = {3.0, 10.0, std::numbers::pi / 3, 5.0, 3.0};
  s.phalanx_lengths = {45.0, 28.0, 22.0};
  s.pad_friction_mu = 0.8;
  s.pad_radius = 5.0;
  return s;
}

Vec2 Chain::direction(int phalanx) const {
  return {std::cos(heading[phalanx]), std::sin(heading[phalanx])};
}

Vec2 Chain::palmar(int phalanx) const { return clockwise_perp(direction(phalanx)); }

Chain forward_kinematics(const FingerSpec& spec, const BasePose& base, const JointAngles& q) {
  Chain c;
  c.points[0] = base.origin;
  double h = base.heading;
  for (int i = 0; i < kJointCount; ++i) {
    h -= q[i];
    c.heading[i] = h;
    c.points[i + 1] = c.points[i] + spec.phalanx_lengths[i] * c.direction(i);
  }
  return c;
}

ContactGeometry NoObstacles::contact(const Chain& chain, const JointAngles&, int phalanx) const {
  return {0.5 * (chain.points[phalanx] + chain.points[phalanx + 1]), -chain.palmar(phalanx)};
}

double AngleStops::clearance(const Chain&, const JointAngles& q, int phalanx) const {
  return angle[phalanx] ? *angle[phalanx] - q[phalanx] : 1e300;
}

ContactGeometry AngleStops::contact(const Chain& chain, const JointAngles&, int phalanx) const {
  return {0.5 * (chain.points[phalanx] + chain.points[phalanx + 1]), -chain.palmar(phalanx)};
}

std::string Event::label() const {
  static constexpr const char* kinds[] = {"start", "limit", "contact", "release", "return"};
  return std::string(joint_name(joint)) + "_" + kinds[static_cast<int>(kind)];
}

double activation_tension(const FingerSpec& spec, int joint, double extension_tension) {
  const auto& j = spec.joints[joint];
  return (j.preload + extension_tension * j.extension_arm) / j.flexion_arm;
}

double saturation_tension(const FingerSpec& spec, int joint, double extension_tension) {
  const auto& j = spec.joints[joint];
  return (j.preload + j.stiffness * j.limit + extension_tension * j.extension_arm) / j.flexion_arm;
}

Trajectory closing_trajectory(const FingerSpec& spec, std::span<const double> tension_profile,
                              const Obstacles& obstacles, const BasePose& base,
                              double extension_tension) {
  spec.validate();
  if (extension_tension < 0.0) throw InvalidArgument("extension tension must be >= 0");
  for (double t : tension_profile) {
    if (t < 0.0 || std::isnan(t)) throw InvalidArgument("tension profile must be nonnegative");
  }
  Trajectory traj;
  traj.states.reserve(tension_profile.size());
  Sweep sweep{spec, obstacles, base, extension_tension};
  sweep.events = &traj.events;
  for (std::size_t k = 0; k < tension_profile.size(); ++k) {
    sweep.sample = k;
    sweep.advance(tension_profile[k]);
    traj.states.push_back(sweep.state());
  }
  return traj;
}

FingerState finger_equilibrium(const FingerSpec& spec, double tension, const Obstacles& obstacles,
                               const BasePose& base, double extension_tension) {
  if (tension < 0.0) throw InvalidArgument("tension must be >= 0");
  std::vector<double> ramp(kEquilibriumSamples);
  for (int i = 0; i < kEquilibriumSamples; ++i) {
    ramp[i] = tension * (i + 1) / kEquilibriumSamples;
  }
  auto traj = closing_trajectory(spec, ramp, obstacles, base, extension_tension);
  return traj.states.back();
}

double spring_energy(const FingerSpec& spec, const JointAngles& q) {
  double e = 0.0;
  for (int i = 0; i < kJointCount; ++i) {
    const auto& j = spec.joints[i];
    e += j.preload * q[i] + 0.5 * j.stiffness * q[i] * q[i];
  }
  return e;
}

WorkBalance work_balance(const FingerSpec& spec, const Trajectory& traj) {
  WorkBalance wb;
  const auto excursion = [&](const JointAngles& q, bool flexion) {
    double l = 0.0;
    for (int i = 0; i < kJointCount; ++i) {
      l += (flexion ? spec.joints[i].flexion_arm : spec.joints[i].extension_arm) * q[i];
    }
    return l;
  };
  FingerState prev;
  if (!traj.states.empty()) prev.extension_tension = traj.states.front().extension_tension;
  for (const auto& s : traj.states) {
    wb.tendon_work += 0.5 * (prev.tendon_tension + s.tendon_tension) *
                      (excursion(s.angles, true) - excursion(prev.angles, true));
    wb.tendon_work -= 0.5 * (prev.extension_tension + s.extension_tension) *
                      (excursion(s.angles, false) - excursion(prev.angles, false));
    prev = s;
  }
  wb.spring_energy = traj.states.empty() ? 0.0 : spring_energy(spec, traj.states.back().angles);
  const double scale = std::max({std::abs(wb.tendon_work), std::abs(wb.spring_energy), 1e-12});
  wb.relative_residual =
      std::abs(wb.tendon_work - wb.spring_energy - wb.contact_work) / scale;
  return wb;
}

double fingertip_stiffness(const FingerSpec& spec, const TendonStiffness& tendon,
                           const JointAngles& posture, const Probe& probe) {
  spec.validate();
  if (probe.phalanx < 0 || probe.phalanx >= kJointCount) {
    throw InvalidArgument("probe phalanx out of range");
  }
  if (tendon.flexion < 0.0 || tendon.extension < 0.0) {
    throw InvalidArgument("tendon stiffness must be >= 0");
  }
  for (int i = 0; i < kJointCount; ++i) {
    if (posture[i] < -kAngleTol || posture[i] > spec.joints[i].limit + kAngleTol) {
      throw InvalidArgument(std::string(joint_name(i)) + " posture outside its limits");
    }
  }
  const Chain chain = forward_kinematics(spec, {}, posture);
  const int ph = probe.phalanx;
  const Vec2 point = chain.points[ph] + probe.position * spec.phalanx_lengths[ph] * chain.direction(ph);
  Vec2 n = probe.direction ? probe.direction->normalized() : chain.palmar(ph);

  std::vector<int> free;
  for (int i = 0; i < kJointCount; ++i) {
    if (posture[i] < spec.joints[i].limit - 1e-9) free.push_back(i);
  }
  const int m = static_cast<int>(free.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  for (int a = 0; a < m; ++a) {
    const auto& ja = spec.joints[free[a]];
    K(a, a) += ja.stiffness;
    for (int b = 0; b < m; ++b) {
      const auto& jb = spec.joints[free[b]];
      K(a, b) += tendon.flexion * ja.flexion_arm * jb.flexion_arm +
                 tendon.extension * ja.extension_arm * jb.extension_arm;
    }
    if (free[a] <= ph) u(a) = n.dot(clockwise_perp(point - chain.points[free[a]]));
  }
  if (m == 0 || u.norm() < 1e-9) {
    throw Singular("probe direction does not load any free joint");
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw Singular("joint stiffness matrix is not positive definite");
  }
  const double compliance = u.dot(ldlt.solve(u));
  if (!(compliance > 0.0)) throw Singular("zero compliance along the probe direction");
  return 1.0 / compliance;
}

}  // namespace vsahand::finger

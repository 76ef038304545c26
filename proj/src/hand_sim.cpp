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

#include "vsahand/hand_sim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "vsahand/errors.hpp"
#include "vsahand/numeric.hpp"

namespace vsahand::hand {

namespace {

constexpr double kTouchTol = 1e-6;     // mm, object resting on the support
constexpr double kForceTol = 1e-9;     // N

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

Vec2 closest_on_segment(const Segment& s, const Vec2& p) {
  const Vec2 d = s.b - s.a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return s.a;
  return s.a + std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0) * d;
}

// Closest points between two segments.
std::pair<Vec2, Vec2> closest_between(const Segment& s1, const Segment& s2) {
  const Vec2 d1 = s1.b - s1.a;
  const Vec2 d2 = s2.b - s2.a;
  const Vec2 r = s1.a - s2.a;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 1e-18 && e <= 1e-18) return {s1.a, s2.a};
  if (a <= 1e-18) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-18) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 1e-18 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return {s1.a + s * d1, s2.a + t * d2};
}

bool inside_convex(const std::vector<Vec2>& poly, const Vec2& p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    if (cross(b - a, p - a) < 0.0) return false;
  }
  return true;
}

Vec2 outward_normal(const Vec2& a, const Vec2& b) {
  const Vec2 d = (b - a).normalized();
  return {d.y(), -d.x()};
}

// Contact point for a segment lying along an edge: middle of the overlap.
Vec2 overlap_midpoint(const Segment& edge, const Segment& seg) {
  const Vec2 d = edge.b - edge.a;
  const double len2 = d.squaredNorm();
  const double s0 = std::clamp((seg.a - edge.a).dot(d) / len2, 0.0, 1.0);
  const double s1 = std::clamp((seg.b - edge.a).dot(d) / len2, 0.0, 1.0);
  return edge.a + 0.5 * (s0 + s1) * d;
}

bool nearly_parallel(const Segment& s1, const Segment& s2) {
  const Vec2 d1 = s1.b - s1.a;
  const Vec2 d2 = s2.b - s2.a;
  return std::abs(cross(d1, d2)) <= 1e-9 * d1.norm() * d2.norm();
}

Proximity polygon_proximity(const std::vector<Vec2>& poly, const Segment& seg) {
  const std::size_t n = poly.size();
  const auto edge = [&](std::size_t i) { return Segment{poly[i], poly[(i + 1) % n]}; };
  Proximity best;
  best.distance = std::numeric_limits<double>::infinity();
  bool crosses = inside_convex(poly, seg.a) || inside_convex(poly, seg.b);
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = edge(i);
    const auto [on_edge, on_seg] = closest_between(e, seg);
    const double d = (on_seg - on_edge).norm();
    crosses = crosses || d <= 1e-12;
    if (d < best.distance) {
      best.distance = d;
      best.on_object = nearly_parallel(e, seg) ? overlap_midpoint(e, seg) : on_edge;
      best.on_segment = on_seg;
      best.normal = d > 1e-12 ? Vec2((on_seg - on_edge) / d) : outward_normal(e.a, e.b);
    }
  }
  if (!crosses) return best;

  // Touching or penetrating: the face whose half-plane the segment leaves the
  // least gives the depth and the normal.
  Proximity deep;
  double sep_best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = edge(i);
    const Vec2 nrm = outward_normal(e.a, e.b);
    const double sa = nrm.dot(seg.a - e.a);
    const double sb = nrm.dot(seg.b - e.a);
    const double sep = std::min(sa, sb);
    if (sep > sep_best) {
      sep_best = sep;
      const Vec2 inner = sa <= sb ? seg.a : seg.b;
      deep.on_segment = inner;
      deep.on_object = nearly_parallel(e, seg) ? overlap_midpoint(e, seg)
                                                : closest_on_segment(e, inner);
      deep.normal = nrm;
    }
  }
  deep.distance = std::min(0.0, sep_best);
  return deep;
}

double segment_distance(const Segment& s1, const Segment& s2) {
  const auto [p, q] = closest_between(s1, s2);
  return (p - q).norm();
}

Segment phalanx_segment(const finger::Chain& chain, int p) {
  return {chain.points[p], chain.points[p + 1]};
}

// Object plus support as seen by one finger.
class HandObstacles final : public finger::Obstacles {
 public:
  HandObstacles(const HandSpec& hand, const ObjectShape* object, double pad)
      : hand_(hand), object_(object), pad_(pad) {}

  double object_clearance(const finger::Chain& chain, int p) const {
    if (object_ == nullptr) return std::numeric_limits<double>::infinity();
    return proximity(*object_, phalanx_segment(chain, p)).distance - pad_;
  }

  double support_clearance(const finger::Chain& chain, int p) const {
    return segment_distance(hand_.support, phalanx_segment(chain, p)) - pad_;
  }

  double clearance(const finger::Chain& chain, const finger::JointAngles&, int p) const override {
    return std::min(object_clearance(chain, p), support_clearance(chain, p));
  }

  finger::ContactGeometry contact(const finger::Chain& chain, const finger::JointAngles&,
                                  int p) const override {
    const Segment seg = phalanx_segment(chain, p);
    if (object_clearance(chain, p) <= support_clearance(chain, p)) {
      const Proximity px = proximity(*object_, seg);
      return {px.on_object, px.normal};
    }
    const auto [on_support, on_seg] = closest_between(hand_.support, seg);
    const Vec2 d = on_seg - on_support;
    const Vec2 n = d.norm() > 1e-12 ? Vec2(d.normalized())
                                    : outward_normal(hand_.support.b, hand_.support.a);
    return {on_support, n};
  }

 private:
  const HandSpec& hand_;
  const ObjectShape* object_;
  double pad_;
};

struct Closure {
  std::array<finger::FingerState, kFingers> states;
  std::array<bool, kFingers * finger::kJointCount> on_object{};
  double tendon_work = 0.0;
  double excursion = 0.0;  // mean finger tendon take-up, mm
};

Closure close_fingers(const HandSpec& hand, const ObjectShape* object, double drive_tension,
                      int steps) {
  const auto tensions = transmission::distribute_tension(hand.tree, drive_tension);
  Closure c;
  for (int f = 0; f < kFingers; ++f) {
    const auto& spec = hand.fingers[f];
    const HandObstacles obs(hand, object, spec.pad_radius);
    std::vector<double> ramp(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) ramp[i] = tensions[f] * (i + 1) / steps;
    const auto traj = finger::closing_trajectory(spec, ramp, obs, hand.bases[f]);
    c.states[f] = traj.states.back();
    c.tendon_work += finger::work_balance(spec, traj).tendon_work;
    double take_up = 0.0;
    for (int j = 0; j < finger::kJointCount; ++j) {
      take_up += spec.joints[j].flexion_arm * c.states[f].angles[j];
    }
    c.excursion += take_up / kFingers;
    const auto chain = finger::forward_kinematics(spec, hand.bases[f], c.states[f].angles);
    for (int p = 0; p < finger::kJointCount; ++p) {
      if (!c.states[f].in_contact[p]) continue;
      c.on_object[f * finger::kJointCount + p] =
          obs.object_clearance(chain, p) <= obs.support_clearance(chain, p) + 1e-9;
    }
  }
  return c;
}

// Tangential friction and support reaction that hold the object still. The
// unknowns are scaled by each contact's friction capacity and the largest
// scaled friction is minimized by iteratively reweighted least norm.
void settle_object(const HandSpec& hand, const ObjectShape& object, double mu, GraspResult& r) {
  const Vec2 c = object.centroid();
  Eigen::Vector3d wrench = Eigen::Vector3d::Zero();
  for (const auto& k : r.contacts) {
    const Vec2 f = -k.normal_force * k.normal;
    wrench += Eigen::Vector3d(f.x(), f.y(), cross(k.point - c, f));
  }

  const Proximity sp = proximity(object, hand.support);
  const bool supported = sp.distance <= kTouchTol;
  const int n_finger = static_cast<int>(r.contacts.size());
  const int n = n_finger + (supported ? 2 : 0);
  if (n == 0) {
    r.equilibrium_residual = wrench.norm();
    r.friction_feasible = false;
    return;
  }
  const auto column = [&](const Vec2& point, const Vec2& dir) {
    return Eigen::Vector3d(dir.x(), dir.y(), cross(point - c, dir));
  };
  const auto tangent = [](const Vec2& nrm) { return Vec2(-nrm.y(), nrm.x()); };
  const Vec2 n_sup = -sp.normal;  // support pushes the object out along its own normal

  Eigen::MatrixXd A(3, n);
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  for (int i = 0; i < n_finger; ++i) {
    const auto& k = r.contacts[i];
    scale(i) = mu * k.normal_force;
    A.col(i) = column(k.point, tangent(k.normal));
  }
  if (supported) {
    A.col(n_finger) = column(sp.on_object, n_sup);
    A.col(n_finger + 1) = column(sp.on_object, tangent(sp.normal));
    scale(n_finger + 1) = hand.support_friction_mu * std::max(wrench.head<2>().norm(), 1.0);
  }
  // Scaled friction y_i is feasible when |y_i| <= 1.

  constexpr int kIterations = 80;
  constexpr double kMinWeight = 1e-8;
  Eigen::VectorXd weight = Eigen::VectorXd::Ones(n);
  if (supported) weight(n_finger) = kMinWeight;  // support normal force is nearly free
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);  // scaled unknowns
  for (int it = 0; it < kIterations; ++it) {
    const Eigen::MatrixXd As = A * scale.asDiagonal();
    const Eigen::VectorXd winv = weight.cwiseInverse();
    const Eigen::Matrix3d M = As * winv.asDiagonal() * As.transpose();
    const Eigen::Vector3d lambda = M.completeOrthogonalDecomposition().solve(-wrench);
    y = winv.asDiagonal() * As.transpose() * lambda;
    if (supported) {
      const double cap = hand.support_friction_mu * std::max(y(n_finger), 1e-9);
      y(n_finger + 1) *= scale(n_finger + 1) / cap;
      scale(n_finger + 1) = cap;
    }
    // p-norm weights with a growing exponent approach the minimax solution.
    const double p = 2.0 + 14.0 * std::min(1.0, it / 40.0);
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(supported && i == n_finger)) peak = std::max(peak, std::abs(y(i)));
    }
    if (peak <= 0.0) break;
    for (int i = 0; i < n; ++i) {
      if (supported && i == n_finger) continue;
      weight(i) = std::pow(std::abs(y(i)) / peak, p - 2.0) + kMinWeight;
    }
  }
  const Eigen::VectorXd x = scale.asDiagonal() * y;
  r.equilibrium_residual = (A * x + wrench).norm();

  bool feasible = true;
  for (int i = 0; i < n_finger; ++i) {
    auto& k = r.contacts[i];
    k.tangential_force = x(i);
    feasible = feasible && std::abs(k.tangential_force) <= mu * k.normal_force + kForceTol;
  }
  if (supported) {
    Contact s;
    s.finger = -1;
    s.point = sp.on_object;
    s.normal = sp.normal;
    s.normal_force = x(n_finger);
    s.tangential_force = x(n_finger + 1);
    feasible = feasible && s.normal_force >= -kForceTol &&
               std::abs(s.tangential_force) <= hand.support_friction_mu * s.normal_force + kForceTol;
    s.normal_force = std::max(0.0, s.normal_force);
    if (!object.rigid()) s.indentation = s.normal_force / object.stiffness;
    r.contacts.push_back(s);
  }
  r.friction_feasible = feasible;
}

bool has_opposing_pair(const std::vector<Contact>& contacts) {
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    for (std::size_t j = i + 1; j < contacts.size(); ++j) {
      if (contacts[i].normal.dot(contacts[j].normal) < 0.0) return true;
    }
  }
  return false;
}

double parse_number(const std::string& key, const std::string& text, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + text + "'", line);
  }
  if (used != text.size()) throw ConfigError("bad number for " + key + ": '" + text + "'", line);
  return v;
}

}  // namespace

void HandSpec::validate() const {
  for (const auto& f : fingers) f.validate();
  tree.validate();
  vsa.validate();
  if ((support.b - support.a).norm() <= 0.0) throw InvalidArgument("support segment is degenerate");
  for (int f = 0; f < kFingers; ++f) {
    const Vec2 foot = closest_on_segment(support, bases[f].origin);
    if ((foot - bases[f].origin).norm() <= fingers[f].pad_radius) {
      throw InvalidArgument(fmt::format("support intersects the base of finger {}", f));
    }
  }
  if (support_friction_mu < 0.0) throw InvalidArgument("support friction must be >= 0");
}

HandSpec default_hand_spec() {
  HandSpec h;
  // Index, middle, ring and little finger share the sequential joint design
  // and differ only in phalanx length.
  constexpr std::array<double, kFingers> scale{1.0, 1.08, 1.0, 0.85};
  for (int f = 0; f < kFingers; ++f) {
    h.fingers[f] = finger::default_finger_spec();
    for (double& l : h.fingers[f].phalanx_lengths) l *= scale[f];
    h.bases[f] = {};
  }
  h.support = {{0.0, -70.0}, {110.0, -70.0}};
  h.support_friction_mu = 0.8;
  h.vsa = vsa::VsaParameters::from_targets(cam::StiffnessTargets{}, 10.0);
  return h;
}

void ObjectShape::validate() const {
  switch (kind) {
    case ShapeKind::kCircle:
      if (!(radius > 0.0)) throw InvalidArgument("circle radius must be > 0");
      break;
    case ShapeKind::kRectangle:
      if (!(width > 0.0 && height > 0.0)) throw InvalidArgument("rectangle sides must be > 0");
      break;
    case ShapeKind::kPolygon: {
      if (vertices.size() < 3) throw InvalidArgument("polygon needs at least 3 vertices");
      for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[(i + 1) % vertices.size()];
        const Vec2& c = vertices[(i + 2) % vertices.size()];
        if (cross(b - a, c - b) <= 0.0) {
          throw InvalidArgument("polygon must be convex and counter-clockwise");
        }
      }
      break;
    }
  }
  if (!(stiffness > 0.0)) throw InvalidArgument("object stiffness must be > 0 or infinite");
  if (mass < 0.0) throw InvalidArgument("object mass must be >= 0");
}

std::vector<Vec2> ObjectShape::outline() const {
  std::vector<Vec2> local;
  if (kind == ShapeKind::kRectangle) {
    const double w = 0.5 * width;
    const double h = 0.5 * height;
    local = {{-w, -h}, {w, -h}, {w, h}, {-w, h}};
  } else if (kind == ShapeKind::kPolygon) {
    local = vertices;
  }
  for (auto& v : local) v = position + rotate(v, orientation);
  return local;
}

Vec2 ObjectShape::centroid() const {
  if (kind != ShapeKind::kPolygon) return position;
  // Area-weighted centroid of the outline.
  const auto pts = outline();
  double area = 0.0;
  Vec2 acc{0.0, 0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % pts.size()];
    const double w = cross(a, b);
    area += w;
    acc += w * (a + b);
  }
  return acc / (3.0 * area);
}

Proximity proximity(const ObjectShape& object, const Segment& segment) {
  if (object.kind == ShapeKind::kCircle) {
    const Vec2 s = closest_on_segment(segment, object.position);
    const Vec2 d = s - object.position;
    const double len = d.norm();
    Proximity p;
    p.normal = len > 1e-12 ? Vec2(d / len) : Vec2(0.0, 1.0);
    p.distance = len - object.radius;
    p.on_object = object.position + object.radius * p.normal;
    p.on_segment = s;
    return p;
  }
  return polygon_proximity(object.outline(), segment);
}

ObjectShape place_on_support(const HandSpec& hand, ObjectShape object) {
  // Lowest point of the object above the support line, measured along −y.
  const Vec2 dir = (hand.support.b - hand.support.a).normalized();
  if (std::abs(dir.y()) > 1e-12) throw InvalidArgument("resting placement needs a level support");
  const double y_support = hand.support.a.y();
  double low = 0.0;
  if (object.kind == ShapeKind::kCircle) {
    low = object.position.y() - object.radius;
  } else {
    low = std::numeric_limits<double>::infinity();
    for (const auto& v : object.outline()) low = std::min(low, v.y());
  }
  object.position.y() += y_support - low;
  return object;
}

const char* grasp_type_name(GraspType t) {
  switch (t) {
    case GraspType::kPinch: return "pinch";
    case GraspType::kPower: return "power";
    default: return "none";
  }
}

GraspType classify_grasp(const std::vector<Contact>& contacts) {
  bool any = false;
  bool proximal = false;
  for (const auto& k : contacts) {
    if (k.finger < 0) continue;
    any = true;
    proximal = proximal || k.phalanx != finger::kDip;
  }
  if (!any) return GraspType::kNone;
  return proximal ? GraspType::kPower : GraspType::kPinch;
}

GraspResult simulate_grasp(const HandSpec& hand, const ObjectShape& object,
                           const GraspCommand& command, double vsa_stiffness) {
  hand.validate();
  object.validate();
  if (command.steps < 1) throw InvalidArgument("grasp command needs at least one step");
  if (command.value < 0.0) throw InvalidArgument("grasp command must be >= 0");
  const auto [s_lo, s_hi] = vsa::stiffness_range(hand.vsa);
  if (vsa_stiffness < s_lo - 1e-9 * s_hi || vsa_stiffness > s_hi * (1.0 + 1e-9)) {
    throw UnreachableStiffness(fmt::format("stiffness {} N·mm/rad outside [{}, {}]", vsa_stiffness,
                                           s_lo, s_hi));
  }

  GraspResult r;
  if (command.mode == GraspCommand::Mode::kTension) {
    r.drive_tension = command.value;
  } else {
    // Drive tendon in series with the VSA output: take-up = finger excursion
    // + tension / K, with K the translational stiffness at the joint pulley.
    const double k = vsa_stiffness / (hand.vsa.r_j * hand.vsa.r_j);
    const auto gap = [&](double t) {
      const double excursion = hand.tree.reduction *
                               close_fingers(hand, &object, t, command.steps).excursion;
      return excursion + t / k - command.value;
    };
    const auto root = numeric::bisect(gap, 0.0, k * command.value, 1e-9, 1e-9, 80);
    r.drive_tension = root.value_or(0.0);
  }

  const Closure c = close_fingers(hand, &object, r.drive_tension, command.steps);
  r.fingers = c.states;
  r.tendon_work = c.tendon_work;
  r.drive_displacement = hand.tree.reduction * c.excursion;
  if (command.mode == GraspCommand::Mode::kDisplacement) r.drive_displacement = command.value;
  r.finger_tensions = transmission::distribute_tension(hand.tree, r.drive_tension);
  r.vsa_saturated =
      r.drive_tension * hand.vsa.r_j > vsa::max_load_at_stiffness(hand.vsa, vsa_stiffness);

  for (int f = 0; f < kFingers; ++f) {
    for (int p = 0; p < finger::kJointCount; ++p) {
      if (!c.on_object[f * finger::kJointCount + p]) continue;
      Contact k;
      k.finger = f;
      k.phalanx = p;
      k.point = c.states[f].contacts[p].point;
      k.normal = c.states[f].contacts[p].normal;
      k.normal_force = c.states[f].contact_forces[p];
      if (!object.rigid()) k.indentation = k.normal_force / object.stiffness;
      r.contacts.push_back(k);
    }
  }
  r.grasp_type = classify_grasp(r.contacts);

  const double mu = hand.fingers[0].pad_friction_mu;
  settle_object(hand, object, mu, r);
  r.success = r.grasp_type != GraspType::kNone && r.contacts.size() >= 2 &&
              has_opposing_pair(r.contacts) && r.friction_feasible &&
              r.equilibrium_residual < 1e-6;
  r.lift_capacity = lift_capacity(r, mu);
  return r;
}

double lift_capacity(const GraspResult& result, double mu) {
  double hold = 0.0;
  for (const auto& k : result.contacts) hold += mu * k.normal_force;
  return hold / kGravity;
}

double grasp_energy_mwh(const HandSpec& hand, const GraspResult& result, double vsa_stiffness) {
  const auto& p = hand.vsa;
  const auto& q = p.coefficients;
  // Both springs at the co-contraction that yields this stiffness at theta = 0.
  const double x = (vsa_stiffness / (2.0 * p.r_j * p.r_j) - q.b) / (2.0 * q.a);
  const double offset = q.c - std::min(q.c, 0.0);
  const double stored = 2.0 * (q.a * x * x * x / 3.0 + 0.5 * q.b * x * x + offset * x);
  const double drive_work =
      result.tendon_work / std::pow(hand.tree.efficiency, hand.tree.depth);
  constexpr double kNmmPerMwh = 3600.0;
  return (drive_work + stored) / kNmmPerMwh;
}

std::vector<SweepRow> grasp_sweep(const HandSpec& hand, const std::vector<ObjectShape>& objects,
                                  const std::vector<StiffnessSetting>& settings,
                                  const GraspCommand& command) {
  std::vector<SweepRow> rows;
  rows.reserve(objects.size() * settings.size());
  for (const auto& obj : objects) {
    for (const auto& s : settings) {
      SweepRow row;
      row.object = obj.name;
      row.stiffness_setting = s.name;
      try {
        const auto r = simulate_grasp(hand, obj, command, s.stiffness);
        row.grasp_type = r.grasp_type;
        row.success = r.success;
        row.n_contacts = static_cast<int>(r.contacts.size());
        row.peak_tension = r.drive_tension;
        row.energy_mwh = grasp_energy_mwh(hand, r, s.stiffness);
      } catch (const Error& e) {
        row.error = e.what();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{},{:.6f},{:.6f}\n", r.object, r.stiffness_setting,
                       grasp_type_name(r.grasp_type), r.success ? 1 : 0, r.n_contacts,
                       r.peak_tension, r.energy_mwh);
  }
}

std::vector<ObjectShape> parse_object_suite(std::istream& in, const HandSpec& hand) {
  std::vector<ObjectShape> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    std::istringstream ls(text);
    std::string kind;
    if (!(ls >> kind)) continue;
    ObjectShape o;
    if (kind == "circle") {
      o.kind = ShapeKind::kCircle;
    } else if (kind == "rectangle") {
      o.kind = ShapeKind::kRectangle;
    } else if (kind == "polygon") {
      o.kind = ShapeKind::kPolygon;
    } else {
      throw ConfigError("unknown shape '" + kind + "'", line);
    }
    if (!(ls >> o.name) || o.name.find('=') != std::string::npos) {
      throw ConfigError("missing object name", line);
    }
    std::map<std::string, std::string> kv;
    std::string tok;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + tok + "'", line);
      if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) {
        throw ConfigError("duplicate key '" + tok.substr(0, eq) + "'", line);
      }
    }
    bool rest = true;
    for (const auto& [k, v] : kv) {
      if (k == "x_mm") {
        o.position.x() = parse_number(k, v, line);
      } else if (k == "y_mm") {
        o.position.y() = parse_number(k, v, line);
        rest = false;
      } else if (k == "angle_deg") {
        o.orientation = parse_number(k, v, line) * std::numbers::pi / 180.0;
      } else if (k == "r_mm") {
        o.radius = parse_number(k, v, line);
      } else if (k == "w_mm") {
        o.width = parse_number(k, v, line);
      } else if (k == "h_mm") {
        o.height = parse_number(k, v, line);
      } else if (k == "mass_kg") {
        o.mass = parse_number(k, v, line);
      } else if (k == "stiffness_N_per_mm") {
        o.stiffness = v == "inf" ? std::numeric_limits<double>::infinity() : parse_number(k, v, line);
      } else if (k == "vertices_mm") {
        std::istringstream vs(v);
        std::string pair;
        while (std::getline(vs, pair, ';')) {
          const auto comma = pair.find(',');
          if (comma == std::string::npos) throw ConfigError("vertex needs x,y: '" + pair + "'", line);
          o.vertices.emplace_back(parse_number(k, pair.substr(0, comma), line),
                                  parse_number(k, pair.substr(comma + 1), line));
        }
      } else {
        throw ConfigError("unknown key '" + k + "'", line);
      }
    }
    try {
      o.validate();
      if (rest) o = place_on_support(hand, o);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string(o.name) + ": " + e.what(), line);
    }
    out.push_back(o);
  }
  return out;
}

}  // namespace vsahand::hand

#include "scenesim/world/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scenesim::world {

using geom::Pose2;
using geom::Vec2;
using geom::Velocity2;

namespace {

// Ground-plane projection of a 17-joint template (nose, eyes, ears,
// shoulders, elbows, wrists, hips, knees, ankles), person facing +x.
constexpr double kJointOffsets[kSkeletonJoints][2] = {
    {0.10, 0.00},   // nose
    {0.09, 0.03},  {0.09, -0.03},   // eyes
    {0.05, 0.07},  {0.05, -0.07},   // ears
    {0.00, 0.20},  {0.00, -0.20},   // shoulders
    {0.02, 0.28},  {0.02, -0.28},   // elbows
    {0.05, 0.33},  {0.05, -0.33},   // wrists
    {0.00, 0.10},  {0.00, -0.10},   // hips
    {0.02, 0.11},  {0.02, -0.11},   // knees
    {0.05, 0.12},  {0.05, -0.12},   // ankles
};

Velocity2 clamp_twist(const Velocity2& cmd, double v_max, double w_max) {
  Velocity2 out = cmd;
  double lin = cmd.linear_norm();
  if (lin > v_max) {
    double s = v_max / lin;
    out.vx *= s;
    out.vy *= s;
  }
  out.omega = std::clamp(out.omega, -w_max, w_max);
  return out;
}

// Largest fraction of the step that keeps the disk clear of lethal cells.
double contact_fraction(const geom::Grid2& map, const Pose2& pose, const Velocity2& twist,
                        double dt, double radius) {
  if (!disk_hits_static(map, geom::integrate_twist(pose, twist, dt).position(), radius)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 25; ++i) {
    double mid = 0.5 * (lo + hi);
    Vec2 p = geom::integrate_twist(pose, twist, dt * mid).position();
    if (disk_hits_static(map, p, radius)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

Vec2 walk_toward(const geom::Grid2& map, Vec2 root, Vec2 target, double speed, double dt) {
  Vec2 d = target - root;
  double dist = d.norm();
  if (dist < 1e-12) return root;
  double step = std::min(speed, kHumanVMax) * dt;
  Vec2 next = dist <= step ? target : root + d * (step / dist);
  if (disk_hits_static(map, next, kHumanRadius)) {
    // Stop at the contact boundary along the straight segment.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 25; ++i) {
      double mid = 0.5 * (lo + hi);
      Vec2 p = root + (next - root) * mid;
      if (disk_hits_static(map, p, kHumanRadius)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    next = root + (next - root) * lo;
  }
  return next;
}

void advance_human(WorldState& w, HumanAgent& h, double dt) {
  Vec2 old_root = h.root;

  if (auto* wp = std::get_if<WaypointPolicy>(&h.policy)) {
    if (w.time >= wp->start_time && h.waypoint_index < wp->waypoints.size()) {
      Vec2 target = wp->waypoints[h.waypoint_index];
      h.root = walk_toward(w.static_map, h.root, target, wp->speed, dt);
      if ((h.root - target).norm() < 1e-9) ++h.waypoint_index;
    }
  } else if (auto* op = std::get_if<OperatorPolicy>(&h.policy)) {
    const FurnitureObject* held = nullptr;
    for (const auto& o : w.objects) {
      if (o.carried_by_human == h.id && o.carried_rel.has_value()) held = &o;
    }
    if (held != nullptr) {
      // Rigidly follow the carried object at the edge opposite the robot.
      Pose2 robot_in_obj = geom::inverse(*held->carried_rel);
      double side = robot_in_obj.x >= 0.0 ? 1.0 : -1.0;
      double edge = held->cls == ObjectClass::table ? kTableHalfLong : kChairHalf;
      Vec2 local{-side * (edge + 0.45), 0.0};
      h.root = geom::transform_from_frame(held->pose, local);
    } else if (op->walk_target.has_value()) {
      h.root = walk_toward(w.static_map, h.root, *op->walk_target, op->walk_speed, dt);
    }
  }

  h.velocity = (h.root - old_root) * (1.0 / dt);
  if (h.velocity.norm() > 1e-6) h.heading = std::atan2(h.velocity.y, h.velocity.x);
}

}  // namespace

geom::Polygon2 object_footprint(ObjectClass c) {
  if (c == ObjectClass::table) return geom::make_rect({0, 0}, kTableHalfLong, kTableHalfShort);
  return geom::make_rect({0, 0}, kChairHalf, kChairHalf);
}

HumanAgent* find_human(WorldState& w, int id) {
  for (auto& h : w.humans) {
    if (h.id == id) return &h;
  }
  return nullptr;
}

FurnitureObject* find_object(WorldState& w, int id) {
  for (auto& o : w.objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

const FurnitureObject* find_object(const WorldState& w, int id) {
  for (const auto& o : w.objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

std::vector<Vec2> human_keypoints(const HumanAgent& a) {
  std::vector<Vec2> kps;
  kps.reserve(kSkeletonJoints);
  double c = std::cos(a.heading), s = std::sin(a.heading);
  for (const auto& o : kJointOffsets) {
    kps.push_back({a.root.x + c * o[0] - s * o[1], a.root.y + s * o[0] + c * o[1]});
  }
  return kps;
}

geom::Polygon2 object_footprint_world(const FurnitureObject& o) {
  return geom::transform_polygon(object_footprint(o.cls), o.pose);
}

std::vector<Pose2> grasp_dock_poses(const FurnitureObject& o) {
  std::vector<Pose2> docks;
  if (o.cls == ObjectClass::table) {
    for (double side : {1.0, -1.0}) {
      Vec2 p = geom::transform_from_frame(o.pose, {side * kGraspStandoff, 0.0});
      double heading = std::atan2(o.pose.y - p.y, o.pose.x - p.x);
      docks.push_back({p.x, p.y, heading});
    }
  } else {
    // Push a chair from behind its backrest (the -x edge).
    Vec2 p = geom::transform_from_frame(o.pose, {-kGraspStandoff, 0.0});
    docks.push_back({p.x, p.y, o.pose.theta});
  }
  return docks;
}

Vec2 operator_displacement(const HumanAgent& agent, const RobotBody& robot,
                           const FurnitureObject& carried) {
  const auto* op = std::get_if<OperatorPolicy>(&agent.policy);
  if (op == nullptr) throw std::invalid_argument("not an operator");
  if (!op->intended_goal.has_value()) return {0.0, 0.0};
  Vec2 to_goal = op->intended_goal->position() - carried.pose.position();
  if (to_goal.norm() <= kOperatorStopRadius) return {0.0, 0.0};
  Vec2 dir_robot = geom::rotate(to_goal * (1.0 / to_goal.norm()), -robot.pose.theta);
  double mag = std::min(op->displacement_gain, kOperatorDispCap);
  return dir_robot * mag;
}

bool attach_object(WorldState& w, int object_id, std::optional<int> operator_id) {
  FurnitureObject* obj = find_object(w, object_id);
  if (obj == nullptr) throw std::invalid_argument("no such object");
  bool aligned = false;
  for (const Pose2& dock : grasp_dock_poses(*obj)) {
    double pos_err = (w.robot.pose.position() - dock.position()).norm();
    double ang_err = std::abs(geom::angle_diff(w.robot.pose.theta, dock.theta));
    if (pos_err <= kAttachPosTol && ang_err <= kAttachAngTol) aligned = true;
  }
  if (!aligned) return false;  // grasp alignment failed
  obj->carried_rel = geom::pose_to_frame(w.robot.pose, obj->pose);
  obj->carried_by_human = operator_id;
  w.robot.attached_object = object_id;
  return true;
}

void detach_object(WorldState& w, int object_id) {
  FurnitureObject* obj = find_object(w, object_id);
  if (obj == nullptr) throw std::invalid_argument("no such object");
  obj->carried_rel.reset();
  obj->carried_by_human.reset();
  if (w.robot.attached_object == object_id) w.robot.attached_object.reset();
  w.robot.ee = w.robot.ee_init;
}

bool disk_hits_static(const geom::Grid2& map, Vec2 center, double radius) {
  auto c = map.world_to_cell(center);
  int span = static_cast<int>(std::ceil(radius / map.resolution)) + 1;
  for (int iy = c.iy - span; iy <= c.iy + span; ++iy) {
    for (int ix = c.ix - span; ix <= c.ix + span; ++ix) {
      if (!map.in_bounds(ix, iy)) continue;
      if (map(ix, iy) < geom::kCellLethal || map(ix, iy) == geom::kCellUnknown) continue;
      if ((map.cell_center({ix, iy}) - center).norm() <= radius) return true;
    }
  }
  return false;
}

void step_world(WorldState& w, const Velocity2& robot_cmd, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");

  Velocity2 cmd = clamp_twist(robot_cmd, kRobotVMax, kRobotWMax);
  double frac = contact_fraction(w.static_map, w.robot.pose, cmd, dt, w.robot.footprint_radius);
  w.robot.pose = geom::integrate_twist(w.robot.pose, cmd, dt * frac);
  w.robot.velocity = {cmd.vx * frac, cmd.vy * frac, cmd.omega * frac};

  if (w.robot.attached_object.has_value()) {
    FurnitureObject* obj = find_object(w, *w.robot.attached_object);
    if (obj != nullptr && obj->carried_rel.has_value()) {
      obj->pose = geom::compose(w.robot.pose, *obj->carried_rel);
    }
  }

  for (auto& h : w.humans) advance_human(w, h, dt);

  // Operator compliance: the grasped edge is displaced away from ee_init.
  w.robot.ee = w.robot.ee_init;
  if (w.robot.attached_object.has_value()) {
    FurnitureObject* obj = find_object(w, *w.robot.attached_object);
    if (obj != nullptr && obj->carried_by_human.has_value()) {
      HumanAgent* op = find_human(w, *obj->carried_by_human);
      if (op != nullptr) {
        w.robot.ee = w.robot.ee_init + operator_displacement(*op, w.robot, *obj);
      }
    }
  }

  w.time += dt;
  w.tick += 1;
}

}  // namespace scenesim::world

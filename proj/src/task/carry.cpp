#include "scenesim/task/carry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scenesim::task {

namespace {

constexpr double kAlignPosTol = 0.1;
constexpr double kAlignAngTol = 5.0 * geom::kPi / 180.0;
constexpr double kAlignLinGain = 1.0;
constexpr double kAlignAngGain = 1.5;
constexpr double kAlignLinCap = 0.3;
constexpr double kAlignAngCap = 0.6;

geom::Velocity2 clamp_command(geom::Velocity2 v, double v_max, double w_max) {
  const double lin = v.linear_norm();
  if (lin > v_max) {
    const double s = v_max / lin;
    v.vx *= s;
    v.vy *= s;
  }
  v.omega = std::clamp(v.omega, -w_max, w_max);
  return v;
}

}  // namespace

CarryCommand carry_velocity(geom::Vec2 ee_disp, geom::Vec2 goal_vec, double robot_heading,
                            double heading_err, const CarryParams& params, bool rotate_goal) {
  CarryCommand out;
  if (goal_vec.norm() < params.tau_goal) {
    out.reached = true;
    return out;
  }

  geom::Velocity2 v_ee;
  if (std::abs(ee_disp.x) > params.tau_ee) v_ee.vx = params.k_e_lin * ee_disp.x;
  if (std::abs(ee_disp.y) > params.tau_ee) {
    if (v_ee.vx != 0.0) {
      v_ee.omega = params.k_e_rot * ee_disp.y;  // steer while driving
    } else {
      v_ee.vy = params.k_e_lin * ee_disp.y;  // sidestep when stationary
    }
  }

  const geom::Vec2 goal_local = rotate_goal ? geom::rotate(goal_vec, -robot_heading) : goal_vec;
  geom::Velocity2 v_a;
  v_a.vx = params.k_a_lin * goal_local.x;
  v_a.vy = params.k_a_lin * goal_local.y;
  v_a.omega = params.k_a_rot * heading_err;

  const bool operator_active = v_ee.vx != 0.0 || v_ee.vy != 0.0 || v_ee.omega != 0.0;
  geom::Velocity2 v_r;
  if (goal_vec.norm() >= params.tau_direct || operator_active) {
    v_r.vx = v_ee.vx + v_a.vx;
    v_r.vy = v_ee.vy + v_a.vy;
    v_r.omega = v_ee.omega + v_a.omega;
  } else {
    // Close and unopposed: scale the attraction up so the last stretch does
    // not crawl.
    v_r.vx = params.k_direct * v_a.vx;
    v_r.vy = params.k_direct * v_a.vy;
    v_r.omega = params.k_direct * v_a.omega;
  }

  out.cmd = clamp_command(v_r, params.v_max, params.w_max);
  return out;
}

PlacementGoal update_goal(const Layout& layout, const geom::Pose2& robot, double side_sign,
                          world::ObjectClass cls, const CarryParams& params) {
  const LayoutEntry* best = nullptr;
  size_t best_index = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < layout.entries.size(); ++i) {
    const auto& e = layout.entries[i];
    if (e.occupied || e.cls != cls) continue;
    const double d = (e.target.position() - robot.position()).norm();
    if (d < best_d) {
      best = &e;
      best_index = i;
      best_d = d;
    }
  }
  if (!best) throw std::runtime_error("layout complete");

  // Stand delta_grasp short of the target along its axis, facing the center,
  // so the carried piece (held delta_grasp ahead) lands on the target.
  const geom::Vec2 axis = geom::heading_vec(best->target.theta);
  PlacementGoal g;
  g.entry_index = best_index;
  g.robot_goal.x = best->target.x - side_sign * params.delta_grasp * axis.x;
  g.robot_goal.y = best->target.y - side_sign * params.delta_grasp * axis.y;
  g.robot_goal.theta =
      std::atan2(best->target.y - g.robot_goal.y, best->target.x - g.robot_goal.x);
  return g;
}

AlignResult align_base(const geom::Pose2& robot, const geom::Pose2& dock) {
  const geom::Vec2 local = geom::transform_to_frame(robot, dock.position());
  const double ang_err = geom::angle_diff(dock.theta, robot.theta);

  AlignResult out;
  if (local.norm() < kAlignPosTol && std::abs(ang_err) < kAlignAngTol) {
    out.aligned = true;
    return out;
  }
  out.cmd.vx = kAlignLinGain * local.x;
  out.cmd.vy = kAlignLinGain * local.y;
  out.cmd.omega = kAlignAngGain * ang_err;
  out.cmd = clamp_command(out.cmd, kAlignLinCap, kAlignAngCap);
  return out;
}

}  // namespace scenesim::task

#pragma once

#include <cstddef>

#include "scenesim/geometry/pose2.hpp"
#include "scenesim/task/layout.hpp"
#include "scenesim/task/params.hpp"

namespace scenesim::task {

struct CarryCommand {
  geom::Velocity2 cmd;
  bool reached = false;
};

// Blended compliant carry controller. ee_disp is the grasped-edge offset in
// the robot frame; goal_vec the world-frame vector to the robot's placement
// pose; heading_err the heading error toward that pose. When rotate_goal is
// set (default) the goal vector is rotated into the robot frame before the
// attraction gain; the raw world-frame variant is kept for comparison runs.
// Within tau_goal the command is zero and reached is set. Otherwise the edge
// compliance term (forward from the x offset; the y offset steers when
// driving, strafes when not) is blended with the goal attraction term, or
// the attraction alone is scaled up by k_direct once the goal is close and
// the operator passive. Linear speed is norm-clamped to v_max, turn rate to
// w_max.
CarryCommand carry_velocity(geom::Vec2 ee_disp, geom::Vec2 goal_vec, double robot_heading,
                            double heading_err, const CarryParams& params,
                            bool rotate_goal = true);

struct PlacementGoal {
  size_t entry_index = 0;
  geom::Pose2 robot_goal;  // standing here puts the carried piece on target
};

// Nearest unoccupied layout entry of the carried class; the robot goal backs
// off the target by delta_grasp against the carry side, heading at the
// target center. Throws std::runtime_error("layout complete") when nothing
// of the class is left.
PlacementGoal update_goal(const Layout& layout, const geom::Pose2& robot, double side_sign,
                          world::ObjectClass cls, const CarryParams& params);

struct AlignResult {
  geom::Velocity2 cmd;
  bool aligned = false;
};

// Proportional servo toward a docking pose; aligned within 0.1 m and 5 deg.
AlignResult align_base(const geom::Pose2& robot, const geom::Pose2& dock);

}  // namespace scenesim::task

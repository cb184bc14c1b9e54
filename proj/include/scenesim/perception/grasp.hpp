#pragma once

#include "scenesim/geometry/polygon2.hpp"
#include "scenesim/geometry/pose2.hpp"

namespace scenesim::percept {

// Dual-arm grasp affordance: two grasp points on the object edge, the
// direction the robot faces while grasping, and the base dock pose at the
// given standoff from the object center.
struct GraspPair {
  geom::Vec2 left, right;   // world coordinates, 0.4 m (table) / 0.3 m (chair) apart
  geom::Vec2 approach_dir;  // unit vector pointing from the robot into the object
  geom::Pose2 dock;         // base pose at the standoff, heading along approach_dir
};

// Grasp the table short edge selected by side_sign (+1: the edge at +long
// axis). Grasp points sit at the short-edge midpoint +-0.2 m.
GraspPair table_grasp_pair(const geom::Pose2& table, int side_sign, double standoff);

// Grasp the chair backrest (its -x footprint edge): total-least-squares line
// through the two backrest vertices and their midpoint, grasps projected onto
// that line 0.3 m apart. footprint_local may carry per-vertex noise; throws
// std::invalid_argument("bad footprint") unless it has exactly 4 vertices.
GraspPair chair_grasp_pair(const geom::Pose2& chair, const geom::Polygon2& footprint_local,
                           double standoff);

}  // namespace scenesim::percept

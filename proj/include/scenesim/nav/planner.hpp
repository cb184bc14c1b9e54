#pragma once

#include <vector>

#include "scenesim/geometry/grid2.hpp"
#include "scenesim/geometry/pose2.hpp"

namespace scenesim::nav {

inline constexpr double kCellCostWeight = 0.02;
inline constexpr double kGoalSubstituteRadius = 0.5;

struct PlanResult {
  std::vector<geom::Vec2> waypoints;  // cell centers, start through goal
  double cost = 0.0;
};

// 8-connected A* over the combined layer; edge cost is step length plus
// kCellCostWeight times the target cell value. Cells at or above the
// inscribed threshold are impassable. A goal inside lethal space is replaced
// by the nearest free cell within kGoalSubstituteRadius. Throws
// std::runtime_error("goal unreachable") when no path exists.
PlanResult plan_path(const geom::Grid2& combined, geom::Vec2 start, geom::Vec2 goal);

// Surface-to-surface clearance between the robot and a person, floored at 0.
double safety_distance(geom::Vec2 robot_center, geom::Vec2 person_center);

}  // namespace scenesim::nav

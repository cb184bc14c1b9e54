#pragma once

#include <vector>

#include "scenesim/geometry/grid2.hpp"
#include "scenesim/geometry/pose2.hpp"

namespace scenesim::nav {

// Layered occupancy for the robot's planner. All layers share the static
// map's geometry; combined is their cell-wise max.
struct CostMap {
  geom::Grid2 static_layer;
  geom::Grid2 onboard;
  geom::Grid2 virtual_layer;
  geom::Grid2 combined;
};

// Copies the static map and grows its lethal cells by the robot radius as
// inscribed cells, so planning over cell centers keeps the body off walls.
CostMap make_costmap(const geom::Grid2& static_map, double robot_radius);

// Onboard layer: lethal disks of inflation_radius at the scan hit endpoints
// (world frame). Rebuilt from scratch on every scan.
void rebuild_onboard(CostMap& map, const std::vector<geom::Vec2>& hit_points, double inflation);

// Virtual layer: lethal disks at the anticipation cloud points (world
// frame). Rebuilt from scratch on every feedback message, no decay.
void rebuild_virtual(CostMap& map, const std::vector<geom::Vec2>& cloud, double inflation);

// combined = max(static, onboard, virtual) at every cell.
void recombine(CostMap& map);

}  // namespace scenesim::nav

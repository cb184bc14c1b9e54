#pragma once

#include <optional>

#include "scenesim/geometry/grid2.hpp"

namespace scenesim::geom {

struct RayHit {
  GridIndex cell;
  Vec2 point;       // entry point into the blocking cell
  double distance;  // from the ray start
};

// First cell with value >= blocked_min along the segment, visiting cells in
// traversal order (DDA). Both endpoints must lie inside the grid, otherwise
// std::out_of_range is thrown.
std::optional<RayHit> ray_cast(const Grid2& g, Vec2 from, Vec2 to, uint8_t blocked_min = kCellLethal);

bool line_of_sight(const Grid2& g, Vec2 a, Vec2 b, uint8_t blocked_min = kCellLethal);

// Lidar-style variant: from must be inside the grid, the ray is clipped to
// the grid boundary and to max_range; leaving the grid counts as a miss.
std::optional<RayHit> ray_cast_clipped(const Grid2& g, Vec2 from, Vec2 dir_unit, double max_range,
                                       uint8_t blocked_min = kCellLethal);

}  // namespace scenesim::geom

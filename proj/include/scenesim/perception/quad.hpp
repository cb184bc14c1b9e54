#pragma once

#include <array>
#include <vector>

#include "scenesim/geometry/polygon2.hpp"

namespace scenesim::percept {

struct QuadSelection {
  std::array<geom::Vec2, 4> corners;
  std::array<int, 4> indices;  // positions in the input contour, ascending
  double iou = 0.0;            // against the full contour polygon
};

// Best 4-corner subset of the contour in cyclic order, maximizing IoU with
// the contour polygon. Ties prefer the larger quad, then lexicographically
// smaller index tuple. Contour size must be within 4..12.
QuadSelection select_four_corners(const std::vector<geom::Vec2>& contour);

// Least-squares refit of each quad edge to the contour points within 0.05 m,
// corners recomputed from adjacent line intersections. Near-parallel lines
// (intersection beyond 10 m) keep the original corner. The refined quad is
// returned only if its IoU against the contour does not decrease.
std::array<geom::Vec2, 4> refine_quad_edges(const std::array<geom::Vec2, 4>& quad,
                                            const std::vector<geom::Vec2>& contour,
                                            bool* changed = nullptr);

}  // namespace scenesim::percept

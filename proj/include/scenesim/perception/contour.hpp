#pragma once

#include <vector>

#include "scenesim/geometry/pose2.hpp"

namespace scenesim::percept {

// Ramer-Douglas-Peucker simplification of an open polyline; both endpoints
// are always kept.
std::vector<geom::Vec2> douglas_peucker(const std::vector<geom::Vec2>& pts, double eps);

// Closed-contour variant: rotates the cycle so it starts at the vertex
// farthest from the centroid (necessarily a corner), then simplifies with the
// first vertex doubling as both endpoints.
std::vector<geom::Vec2> simplify_closed_contour(const std::vector<geom::Vec2>& pts, double eps);

double point_segment_distance(geom::Vec2 p, geom::Vec2 a, geom::Vec2 b);

}  // namespace scenesim::percept

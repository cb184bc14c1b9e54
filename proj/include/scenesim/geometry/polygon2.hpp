#pragma once

#include <vector>

#include "scenesim/geometry/pose2.hpp"

namespace scenesim::geom {

// Simple polygon, vertices in CCW order. Operations that require positive
// area throw std::invalid_argument("degenerate polygon") when it is ~0.
struct Polygon2 {
  std::vector<Vec2> v;

  size_t size() const { return v.size(); }
};

double signed_area(const Polygon2& p);
Vec2 centroid(const Polygon2& p);
bool is_convex(const Polygon2& p, double eps = 1e-9);
// Boundary-inclusive point test (crossing number with on-edge check).
bool contains(const Polygon2& p, Vec2 q);

// Sutherland-Hodgman; both polygons must be convex.
Polygon2 clip_convex(const Polygon2& subject, const Polygon2& clip);

// Intersection-over-union. Convex pairs use exact clipping; anything else
// falls back to cell-center rasterization at 1 cm.
double polygon_iou(const Polygon2& a, const Polygon2& b);

Polygon2 transform_polygon(const Polygon2& p, const Pose2& frame);  // local -> world

// Axis-aligned rectangle helper, CCW starting at (cx-hx, cy-hy).
Polygon2 make_rect(Vec2 center, double half_x, double half_y);

}  // namespace scenesim::geom

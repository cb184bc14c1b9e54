#include "scenesim/geometry/raycast.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scenesim::geom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Amanatides-Woo traversal over [from, from + dir * len]; dir is unit length.
// Assumes the start cell is in bounds; stops silently when the ray leaves the
// grid (the caller decides whether that is legal).
std::optional<RayHit> traverse(const Grid2& g, Vec2 from, Vec2 dir, double len, uint8_t blocked_min) {
  GridIndex c = g.world_to_cell(from);
  double res = g.resolution;

  int step_x = dir.x > 0 ? 1 : (dir.x < 0 ? -1 : 0);
  int step_y = dir.y > 0 ? 1 : (dir.y < 0 ? -1 : 0);
  double t_max_x = kInf, t_max_y = kInf, t_delta_x = kInf, t_delta_y = kInf;
  if (step_x != 0) {
    double boundary = g.origin.x + (c.ix + (step_x > 0 ? 1 : 0)) * res;
    t_max_x = (boundary - from.x) / dir.x;
    t_delta_x = res / std::abs(dir.x);
  }
  if (step_y != 0) {
    double boundary = g.origin.y + (c.iy + (step_y > 0 ? 1 : 0)) * res;
    t_max_y = (boundary - from.y) / dir.y;
    t_delta_y = res / std::abs(dir.y);
  }

  double t = 0.0;
  while (true) {
    if (g(c.ix, c.iy) >= blocked_min) {
      return RayHit{c, from + dir * t, t};
    }
    double t_next = std::min(t_max_x, t_max_y);
    if (t_next > len) return std::nullopt;  // end cell reached unobstructed
    if (t_max_x <= t_max_y) {
      c.ix += step_x;
      t = t_max_x;
      t_max_x += t_delta_x;
    } else {
      c.iy += step_y;
      t = t_max_y;
      t_max_y += t_delta_y;
    }
    if (!g.in_bounds(c)) return std::nullopt;
  }
}

}  // namespace

std::optional<RayHit> ray_cast(const Grid2& g, Vec2 from, Vec2 to, uint8_t blocked_min) {
  if (!g.world_in_bounds(from) || !g.world_in_bounds(to)) {
    throw std::out_of_range("ray endpoint outside grid");
  }
  Vec2 d = to - from;
  double len = d.norm();
  if (len == 0.0) {
    GridIndex c = g.world_to_cell(from);
    if (g(c.ix, c.iy) >= blocked_min) return RayHit{c, from, 0.0};
    return std::nullopt;
  }
  return traverse(g, from, d * (1.0 / len), len, blocked_min);
}

bool line_of_sight(const Grid2& g, Vec2 a, Vec2 b, uint8_t blocked_min) {
  return !ray_cast(g, a, b, blocked_min).has_value();
}

std::optional<RayHit> ray_cast_clipped(const Grid2& g, Vec2 from, Vec2 dir_unit, double max_range,
                                       uint8_t blocked_min) {
  if (!g.world_in_bounds(from)) throw std::out_of_range("ray start outside grid");
  return traverse(g, from, dir_unit, max_range, blocked_min);
}

}  // namespace scenesim::geom

#include "scenesim/kernels/raycast_sweep.hpp"

#include <cmath>
#include <limits>

namespace scenesim::kern {

using geom::Vec2;

namespace {

// Smallest t >= 0 with |from + t*dir - c| = r, or infinity.
double ray_circle(Vec2 from, Vec2 dir, const CirclePrim& c) {
  Vec2 f = from - c.center;
  double b = geom::dot(f, dir);
  double q = f.squared_norm() - c.radius * c.radius;
  if (q <= 0.0) return 0.0;  // start inside the circle
  double disc = b * b - q;
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  double t = -b - std::sqrt(disc);
  return t >= 0.0 ? t : std::numeric_limits<double>::infinity();
}

double ray_segment(Vec2 from, Vec2 dir, const SegmentPrim& s) {
  Vec2 e = s.b - s.a;
  double denom = geom::cross(dir, e);
  if (std::abs(denom) < 1e-15) return std::numeric_limits<double>::infinity();
  Vec2 d = s.a - from;
  double t = geom::cross(d, e) / denom;
  double u = geom::cross(d, dir) / denom;
  if (t >= 0.0 && u >= 0.0 && u <= 1.0) return t;
  return std::numeric_limits<double>::infinity();
}

void trace_one(const geom::Grid2& grid, Vec2 from, double angle, double max_range,
               uint8_t blocked_min, const std::vector<CirclePrim>& circles,
               const std::vector<SegmentPrim>& segments, RayResult& out) {
  Vec2 dir = geom::heading_vec(angle);
  double best = max_range;
  HitKind kind = HitKind::none;
  int id = -1;

  if (auto hit = geom::ray_cast_clipped(grid, from, dir, max_range, blocked_min)) {
    best = hit->distance;
    kind = HitKind::grid;
  }
  for (const CirclePrim& c : circles) {
    double t = ray_circle(from, dir, c);
    if (t < best) {
      best = t;
      kind = HitKind::circle;
      id = c.id;
    }
  }
  for (const SegmentPrim& s : segments) {
    double t = ray_segment(from, dir, s);
    if (t < best) {
      best = t;
      kind = HitKind::segment;
      id = s.id;
    }
  }
  out = {best, kind, id};
}

}  // namespace

void sweep_serial(const geom::Grid2& grid, Vec2 from, const std::vector<double>& angles,
                  double max_range, uint8_t blocked_min, const std::vector<CirclePrim>& circles,
                  const std::vector<SegmentPrim>& segments, std::vector<RayResult>& out) {
  out.resize(angles.size());
  for (size_t i = 0; i < angles.size(); ++i) {
    trace_one(grid, from, angles[i], max_range, blocked_min, circles, segments, out[i]);
  }
}

void sweep_parallel(const geom::Grid2& grid, Vec2 from, const std::vector<double>& angles,
                    double max_range, uint8_t blocked_min, const std::vector<CirclePrim>& circles,
                    const std::vector<SegmentPrim>& segments, std::vector<RayResult>& out) {
  out.resize(angles.size());
  const long n = static_cast<long>(angles.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    trace_one(grid, from, angles[i], max_range, blocked_min, circles, segments, out[i]);
  }
}

void sweep(const geom::Grid2& grid, Vec2 from, const std::vector<double>& angles, double max_range,
           uint8_t blocked_min, const std::vector<CirclePrim>& circles,
           const std::vector<SegmentPrim>& segments, std::vector<RayResult>& out) {
#ifdef _OPENMP
  sweep_parallel(grid, from, angles, max_range, blocked_min, circles, segments, out);
#else
  sweep_serial(grid, from, angles, max_range, blocked_min, circles, segments, out);
#endif
}

}  // namespace scenesim::kern

#include "scenesim/geometry/polygon2.hpp"

#include <cmath>
#include <stdexcept>

#include "scenesim/kernels/raster_overlap.hpp"

namespace scenesim::geom {

namespace {
constexpr double kDegenerateArea = 1e-12;
constexpr double kRasterRes = 0.01;
}  // namespace

double signed_area(const Polygon2& p) {
  double a = 0.0;
  size_t n = p.v.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 u = p.v[i], w = p.v[(i + 1) % n];
    a += cross(u, w);
  }
  return 0.5 * a;
}

Vec2 centroid(const Polygon2& p) {
  double a = signed_area(p);
  size_t n = p.v.size();
  if (std::abs(a) < kDegenerateArea) {
    // Fall back to the vertex mean so callers can still anchor degenerate
    // contours somewhere sensible.
    Vec2 m{0, 0};
    for (Vec2 q : p.v) m = m + q;
    return n ? m * (1.0 / static_cast<double>(n)) : m;
  }
  double cx = 0.0, cy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    Vec2 u = p.v[i], w = p.v[(i + 1) % n];
    double f = cross(u, w);
    cx += (u.x + w.x) * f;
    cy += (u.y + w.y) * f;
  }
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

bool is_convex(const Polygon2& p, double eps) {
  size_t n = p.v.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = p.v[i], b = p.v[(i + 1) % n], c = p.v[(i + 2) % n];
    if (cross(b - a, c - b) < -eps) return false;
  }
  return true;
}

bool contains(const Polygon2& p, Vec2 q) {
  size_t n = p.v.size();
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    Vec2 a = p.v[j], b = p.v[i];
    // On-edge counts as inside.
    double cr = cross(b - a, q - a);
    if (std::abs(cr) < 1e-12 && dot(q - a, q - b) <= 1e-12) return true;
    if (((b.y > q.y) != (a.y > q.y)) &&
        (q.x < (a.x - b.x) * (q.y - b.y) / (a.y - b.y) + b.x)) {
      inside = !inside;
    }
  }
  return inside;
}

Polygon2 clip_convex(const Polygon2& subject, const Polygon2& clip) {
  Polygon2 out = subject;
  size_t m = clip.v.size();
  for (size_t e = 0; e < m && !out.v.empty(); ++e) {
    Vec2 a = clip.v[e], b = clip.v[(e + 1) % m];
    Vec2 dir = b - a;
    Polygon2 in;
    in.v.swap(out.v);
    size_t n = in.v.size();
    for (size_t i = 0; i < n; ++i) {
      Vec2 cur = in.v[i], nxt = in.v[(i + 1) % n];
      double dc = cross(dir, cur - a);
      double dn = cross(dir, nxt - a);
      if (dc >= 0.0) out.v.push_back(cur);
      if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
        double t = dc / (dc - dn);
        out.v.push_back(cur + (nxt - cur) * t);
      }
    }
  }
  return out;
}

double polygon_iou(const Polygon2& a, const Polygon2& b) {
  double area_a = signed_area(a);
  double area_b = signed_area(b);
  if (std::abs(area_a) < kDegenerateArea || std::abs(area_b) < kDegenerateArea) {
    throw std::invalid_argument("degenerate polygon");
  }
  if (area_a > 0.0 && area_b > 0.0 && is_convex(a) && is_convex(b)) {
    Polygon2 inter = clip_convex(a, b);
    double ai = inter.v.size() >= 3 ? signed_area(inter) : 0.0;
    if (ai < 0.0) ai = 0.0;
    double u = area_a + area_b - ai;
    return u > 0.0 ? ai / u : 0.0;
  }
  kern::OverlapCounts c = kern::overlap_counts(a, b, kRasterRes);
  long long u = c.only_a + c.only_b + c.both;
  return u > 0 ? static_cast<double>(c.both) / static_cast<double>(u) : 0.0;
}

Polygon2 transform_polygon(const Polygon2& p, const Pose2& frame) {
  Polygon2 out;
  out.v.reserve(p.v.size());
  for (Vec2 q : p.v) out.v.push_back(transform_from_frame(frame, q));
  return out;
}

Polygon2 make_rect(Vec2 c, double hx, double hy) {
  return Polygon2{{{c.x - hx, c.y - hy}, {c.x + hx, c.y - hy}, {c.x + hx, c.y + hy}, {c.x - hx, c.y + hy}}};
}

}  // namespace scenesim::geom

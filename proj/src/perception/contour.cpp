#include "scenesim/perception/contour.hpp"

#include <algorithm>
#include <cmath>

namespace scenesim::percept {

using geom::Vec2;

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double len2 = ab.squared_norm();
  if (len2 < 1e-24) return (p - a).norm();
  double t = std::clamp(geom::dot(p - a, ab) / len2, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

namespace {

void dp_recurse(const std::vector<Vec2>& pts, size_t i, size_t j, double eps,
                std::vector<char>& keep) {
  if (j <= i + 1) return;
  double worst = -1.0;
  size_t split = i;
  for (size_t k = i + 1; k < j; ++k) {
    double d = point_segment_distance(pts[k], pts[i], pts[j]);
    if (d > worst) {
      worst = d;
      split = k;
    }
  }
  if (worst > eps) {
    keep[split] = 1;
    dp_recurse(pts, i, split, eps, keep);
    dp_recurse(pts, split, j, eps, keep);
  }
}

}  // namespace

std::vector<Vec2> douglas_peucker(const std::vector<Vec2>& pts, double eps) {
  if (pts.size() <= 2) return pts;
  std::vector<char> keep(pts.size(), 0);
  keep.front() = 1;
  keep.back() = 1;
  dp_recurse(pts, 0, pts.size() - 1, eps, keep);
  std::vector<Vec2> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (keep[i]) out.push_back(pts[i]);
  }
  return out;
}

std::vector<Vec2> simplify_closed_contour(const std::vector<Vec2>& pts, double eps) {
  size_t n = pts.size();
  if (n <= 3) return pts;
  Vec2 mean{0, 0};
  for (Vec2 p : pts) mean = mean + p;
  mean = mean * (1.0 / static_cast<double>(n));
  size_t start = 0;
  double best = -1.0;
  for (size_t i = 0; i < n; ++i) {
    double d = (pts[i] - mean).squared_norm();
    if (d > best) {
      best = d;
      start = i;
    }
  }
  std::vector<Vec2> open;
  open.reserve(n + 1);
  for (size_t i = 0; i <= n; ++i) open.push_back(pts[(start + i) % n]);
  std::vector<Vec2> simplified = douglas_peucker(open, eps);
  simplified.pop_back();  // drop the duplicated start vertex
  return simplified;
}

}  // namespace scenesim::percept

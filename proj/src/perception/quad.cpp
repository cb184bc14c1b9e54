#include "scenesim/perception/quad.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "scenesim/perception/contour.hpp"

namespace scenesim::percept {

using geom::Polygon2;
using geom::Vec2;

namespace {

constexpr double kEdgeBand = 0.05;       // contour points this close belong to an edge
constexpr double kParallelLimit = 10.0;  // intersection farther than this keeps the corner

double quad_area(const std::array<Vec2, 4>& q) {
  double a = 0.0;
  for (int i = 0; i < 4; ++i) a += geom::cross(q[i], q[(i + 1) % 4]);
  return 0.5 * a;
}

double quad_contour_iou(const std::array<Vec2, 4>& q, const Polygon2& contour) {
  Polygon2 quad{{q[0], q[1], q[2], q[3]}};
  return geom::polygon_iou(quad, contour);
}

struct FitLine {
  Vec2 point;
  Vec2 dir;  // unit
};

// Total least squares: mean point + dominant eigenvector of the scatter.
FitLine fit_line(const std::vector<Vec2>& pts) {
  Vec2 mean{0, 0};
  for (Vec2 p : pts) mean = mean + p;
  mean = mean * (1.0 / static_cast<double>(pts.size()));
  double sxx = 0, sxy = 0, syy = 0;
  for (Vec2 p : pts) {
    Vec2 d = p - mean;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  double tr = sxx + syy, det = sxx * syy - sxy * sxy;
  double lam = 0.5 * tr + std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  Vec2 dir;
  if (std::abs(sxy) > 1e-18) {
    dir = {lam - syy, sxy};
  } else {
    dir = sxx >= syy ? Vec2{1, 0} : Vec2{0, 1};
  }
  double n = dir.norm();
  if (n > 0) dir = dir * (1.0 / n);
  return {mean, dir};
}

std::optional<Vec2> intersect_lines(const FitLine& a, const FitLine& b) {
  double denom = geom::cross(a.dir, b.dir);
  if (std::abs(denom) < 1e-12) return std::nullopt;
  double t = geom::cross(b.point - a.point, b.dir) / denom;
  return a.point + a.dir * t;
}

}  // namespace

QuadSelection select_four_corners(const std::vector<Vec2>& contour) {
  int n = static_cast<int>(contour.size());
  if (n < 4 || n > 12) throw std::invalid_argument("contour size out of range");
  Polygon2 poly{contour};

  QuadSelection best;
  best.iou = -1.0;
  double best_area = 0.0;
  std::array<int, 4> idx{};
  for (idx[0] = 0; idx[0] < n - 3; ++idx[0]) {
    for (idx[1] = idx[0] + 1; idx[1] < n - 2; ++idx[1]) {
      for (idx[2] = idx[1] + 1; idx[2] < n - 1; ++idx[2]) {
        for (idx[3] = idx[2] + 1; idx[3] < n; ++idx[3]) {
          std::array<Vec2, 4> q{contour[idx[0]], contour[idx[1]], contour[idx[2]],
                                contour[idx[3]]};
          double area = quad_area(q);
          if (area < 1e-9) continue;  // degenerate candidates cannot win
          double iou = quad_contour_iou(q, poly);
          // Ties prefer larger area; the index loop order already yields the
          // lexicographically smallest tuple first, so strictly-better only.
          if (iou > best.iou + 1e-12 ||
              (std::abs(iou - best.iou) <= 1e-12 && area > best_area + 1e-12)) {
            best.corners = q;
            best.indices = idx;
            best.iou = iou;
            best_area = area;
          }
        }
      }
    }
  }
  if (best.iou < 0.0) throw std::invalid_argument("degenerate polygon");
  return best;
}

std::array<Vec2, 4> refine_quad_edges(const std::array<Vec2, 4>& quad,
                                      const std::vector<Vec2>& contour, bool* changed) {
  if (changed != nullptr) *changed = false;

  std::array<FitLine, 4> lines;
  for (int e = 0; e < 4; ++e) {
    Vec2 a = quad[e], b = quad[(e + 1) % 4];
    std::vector<Vec2> band;
    for (Vec2 p : contour) {
      if (point_segment_distance(p, a, b) <= kEdgeBand) band.push_back(p);
    }
    if (band.size() >= 2) {
      lines[e] = fit_line(band);
    } else {
      Vec2 d = b - a;
      double nrm = d.norm();
      lines[e] = {a, nrm > 0 ? d * (1.0 / nrm) : Vec2{1, 0}};
    }
  }

  std::array<Vec2, 4> refined;
  for (int c = 0; c < 4; ++c) {
    // Corner c joins edge (c-1) and edge c.
    const FitLine& prev = lines[(c + 3) % 4];
    const FitLine& cur = lines[c];
    auto hit = intersect_lines(prev, cur);
    if (hit.has_value() && (*hit - quad[c]).norm() <= kParallelLimit) {
      refined[c] = *hit;
    } else {
      refined[c] = quad[c];
    }
  }

  Polygon2 poly{contour};
  double before, after;
  try {
    before = geom::polygon_iou(Polygon2{{quad[0], quad[1], quad[2], quad[3]}}, poly);
    after = geom::polygon_iou(Polygon2{{refined[0], refined[1], refined[2], refined[3]}}, poly);
  } catch (const std::invalid_argument&) {
    return quad;  // refinement produced a degenerate quad
  }
  if (after + 1e-12 < before) return quad;
  if (changed != nullptr) {
    for (int i = 0; i < 4; ++i) {
      if ((refined[i] - quad[i]).norm() > 1e-12) *changed = true;
    }
  }
  return refined;
}

}  // namespace scenesim::percept

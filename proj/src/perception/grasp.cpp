#include "scenesim/perception/grasp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace scenesim::percept {

using geom::Pose2;
using geom::Vec2;

namespace {

constexpr double kTableHalfLong = 0.6;
constexpr double kTableGraspHalfSep = 0.2;
constexpr double kChairGraspHalfSep = 0.15;

Pose2 dock_pose(const Pose2& obj, double along, double standoff) {
  Vec2 p = geom::transform_from_frame(obj, {along * standoff, 0.0});
  double heading = std::atan2(obj.y - p.y, obj.x - p.x);
  return {p.x, p.y, heading};
}

}  // namespace

GraspPair table_grasp_pair(const Pose2& table, int side_sign, double standoff) {
  double s = side_sign >= 0 ? 1.0 : -1.0;
  GraspPair g;
  g.left = geom::transform_from_frame(table, {s * kTableHalfLong, kTableGraspHalfSep});
  g.right = geom::transform_from_frame(table, {s * kTableHalfLong, -kTableGraspHalfSep});
  g.approach_dir = geom::heading_vec(table.theta) * -s;
  g.dock = dock_pose(table, s, standoff);
  return g;
}

GraspPair chair_grasp_pair(const Pose2& chair, const geom::Polygon2& footprint_local,
                           double standoff) {
  if (footprint_local.v.size() != 4) throw std::invalid_argument("bad footprint");

  // Backrest edge: the two vertices with the smallest local x.
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return footprint_local.v[a].x < footprint_local.v[b].x;
  });
  Vec2 v1 = footprint_local.v[order[0]];
  Vec2 v2 = footprint_local.v[order[1]];
  Vec2 mid = (v1 + v2) * 0.5;

  // TLS line through {v1, v2, mid}; its mean is mid, so only the direction
  // needs the scatter.
  double sxx = 0, sxy = 0, syy = 0;
  for (Vec2 p : {v1, v2, mid}) {
    Vec2 d = p - mid;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  double tr = sxx + syy, det = sxx * syy - sxy * sxy;
  double lam = 0.5 * tr + std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  Vec2 dir = std::abs(sxy) > 1e-18 ? Vec2{lam - syy, sxy} : (sxx >= syy ? Vec2{1, 0} : Vec2{0, 1});
  double n = dir.norm();
  if (n > 0) dir = dir * (1.0 / n);
  if (dir.y < 0 || (dir.y == 0 && dir.x < 0)) dir = -dir;  // deterministic orientation

  GraspPair g;
  g.left = geom::transform_from_frame(chair, mid + dir * kChairGraspHalfSep);
  g.right = geom::transform_from_frame(chair, mid - dir * kChairGraspHalfSep);
  g.approach_dir = geom::heading_vec(chair.theta);
  g.dock = dock_pose(chair, -1.0, standoff);
  return g;
}

}  // namespace scenesim::percept

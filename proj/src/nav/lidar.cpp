#include "scenesim/nav/lidar.hpp"

namespace scenesim::nav {

LidarScan simulate_lidar(const world::WorldState& w, const LidarParams& params) {
  LidarScan scan;
  scan.origin = w.robot.pose;
  scan.max_range = params.max_range;
  scan.angles.reserve(params.rays);
  for (int i = 0; i < params.rays; ++i) {
    const double offset =
        params.rays > 1 ? -params.fov / 2.0 + params.fov * i / (params.rays - 1) : 0.0;
    scan.angles.push_back(geom::wrap_angle(w.robot.pose.theta + offset));
  }

  std::vector<kern::CirclePrim> circles;
  circles.reserve(w.humans.size());
  for (const auto& h : w.humans) circles.push_back({h.root, world::kHumanRadius, h.id});

  std::vector<kern::SegmentPrim> segments;
  for (const auto& o : w.objects) {
    if (o.carried_rel) continue;  // rides on the robot, would self-shadow
    const geom::Polygon2 fp = world::object_footprint_world(o);
    for (size_t i = 0; i < fp.v.size(); ++i)
      segments.push_back({fp.v[i], fp.v[(i + 1) % fp.v.size()], o.id});
  }

  kern::sweep(w.static_map, {w.robot.pose.x, w.robot.pose.y}, scan.angles, params.max_range,
              geom::kCellLethal, circles, segments, scan.returns);
  return scan;
}

std::vector<geom::Vec2> scan_hit_points(const LidarScan& scan) {
  std::vector<geom::Vec2> out;
  for (size_t i = 0; i < scan.returns.size(); ++i) {
    if (scan.returns[i].kind == kern::HitKind::none) continue;
    out.push_back({scan.origin.x + scan.returns[i].range * std::cos(scan.angles[i]),
                   scan.origin.y + scan.returns[i].range * std::sin(scan.angles[i])});
  }
  return out;
}

bool scan_sees_person(const LidarScan& scan, int human_id) {
  for (const auto& r : scan.returns)
    if (r.kind == kern::HitKind::circle && r.id == human_id) return true;
  return false;
}

}  // namespace scenesim::nav

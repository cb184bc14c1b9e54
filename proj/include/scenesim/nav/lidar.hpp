#pragma once

#include <vector>

#include "scenesim/kernels/raycast_sweep.hpp"
#include "scenesim/world/world.hpp"

namespace scenesim::nav {

struct LidarParams {
  int rays = 440;
  double fov = 220.0 * geom::kPi / 180.0;
  double max_range = 5.6;
};

struct LidarScan {
  geom::Pose2 origin;               // true robot pose at scan time
  std::vector<double> angles;       // absolute bearings, one per ray
  std::vector<kern::RayResult> returns;
  double max_range = 0.0;
};

// Ground-truth scan from the robot center: static walls by grid traversal,
// humans as disks, furniture footprints as segments. The object the robot is
// carrying travels with it and is excluded (it would only shadow the scan).
LidarScan simulate_lidar(const world::WorldState& w, const LidarParams& params = {});

// World-frame endpoints of the rays that hit something.
std::vector<geom::Vec2> scan_hit_points(const LidarScan& scan);

// True when any ray's closest hit is the given human.
bool scan_sees_person(const LidarScan& scan, int human_id);

}  // namespace scenesim::nav

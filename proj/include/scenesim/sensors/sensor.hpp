#pragma once

#include <optional>
#include <vector>

#include "scenesim/geometry/polygon2.hpp"
#include "scenesim/world/world.hpp"

namespace scenesim::sensors {

// Ceiling-mounted smart edge sensor: fixed pose, cone field of view, finite
// range, wall-occluded, noisy, lossy detector.
struct SensorNode {
  int id = 0;
  geom::Pose2 pose;
  double fov_halfangle = 0.6;  // rad
  double range = 8.0;          // m
  int rate = 10;               // Hz; must divide the world tick rate
  double noise_sigma_pos = 0.05;
  double noise_sigma_theta = 0.03;
  double detection_prob = 0.95;
};

struct PersonObs {
  geom::Vec2 root;
  std::vector<geom::Vec2> keypoints;  // always kSkeletonJoints entries
};

struct ObjectObs {
  world::ObjectClass cls = world::ObjectClass::table;
  geom::Pose2 pose;        // direct noisy pose; table yaw reported in [0, pi)
  geom::Polygon2 contour;  // noisy corners with exactly-collinear mid-edge points
};

struct PerceptMsg {
  int node_id = 0;
  long seq = 0;
  double stamp = 0.0;
  std::optional<geom::Pose2> robot;
  std::vector<PersonObs> persons;
  std::vector<ObjectObs> objects;
};

// Range, field-of-view and wall line-of-sight test against the static map.
bool visible(const SensorNode& node, const geom::Grid2& map, geom::Vec2 target);

bool emits_at_tick(const SensorNode& node, long tick);

// Snapshot of everything this node currently sees. Noise and detection draws
// come from a stream keyed by (run_seed, node id, tick): bit-reproducible and
// independent of evaluation order across nodes.
PerceptMsg observe(const SensorNode& node, const world::WorldState& w, uint64_t run_seed);

}  // namespace scenesim::sensors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scenesim/nav/anticipation.hpp"
#include "scenesim/sensors/channel.hpp"
#include "scenesim/sensors/sensor.hpp"
#include "scenesim/task/controller.hpp"
#include "scenesim/world/world.hpp"

namespace scenesim::exp {

// Scripted human. Waypoint walkers can carry per-seed jitter (start delay
// and speed range) so repeated experiments differ; operators collaborate on
// the carry task and are choreographed by the runner.
struct HumanSpec {
  enum class Kind { idle, waypoints, collaborator };
  int id = 0;
  Kind kind = Kind::idle;
  geom::Vec2 start;
  std::vector<geom::Vec2> waypoints;
  double speed = 1.2;
  double start_time = 0.0;
  double start_jitter = 0.0;  // uniform +- applied per seed
  double speed_lo = 0.0;      // speed drawn from [lo, hi] when hi > 0
  double speed_hi = 0.0;
};

struct ObjectSpec {
  int id = 0;
  world::ObjectClass cls = world::ObjectClass::table;
  geom::Pose2 pose;
};

// Where the collaborator stands while the robot fetches each successive
// table; index advances with the number of placed table entries.
struct OperatorScript {
  int human_id = -1;
  std::vector<geom::Vec2> approach_points;
};

struct ScenarioConfig {
  std::string id;
  std::string source_path;
  geom::Grid2 map;
  double max_duration = 60.0;
  task::Mission mission = task::Mission::navigate;
  geom::Pose2 robot_start;
  geom::Pose2 standby;
  std::vector<sensors::SensorNode> sensor_nodes;
  std::vector<HumanSpec> humans;
  std::vector<ObjectSpec> objects;
  std::vector<task::PickupArea> areas;
  task::Layout layout;
  task::CarryParams carry;
  nav::AnticipationParams anticipation;
  sensors::ChannelParams channel;
  double input_delay = 20.0;
  double off_side_sign = 1.0;
  double nav_speed = 0.4;
  OperatorScript op_script;
};

// Parses and validates a scenario JSON file (comments allowed). Map geometry
// comes from a .grid file referenced relative to the scenario, or from an
// inline rectangle list. Throws std::runtime_error with a "scenario: ..."
// message naming the offending field.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& json_text, const std::string& base_dir);

// Seeds the jittered human parameters and assembles the initial world.
world::WorldState make_world(const ScenarioConfig& cfg, uint64_t seed);

}  // namespace scenesim::exp

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scenesim/geometry/grid2.hpp"
#include "scenesim/geometry/polygon2.hpp"
#include "scenesim/geometry/pose2.hpp"

namespace scenesim::world {

inline constexpr double kTickDt = 0.05;
inline constexpr int kTickRate = 20;

inline constexpr double kRobotVMax = 0.5;          // m/s, omnidirectional base
inline constexpr double kRobotWMax = 1.0;          // rad/s
inline constexpr double kRobotFootprintRadius = 0.27;
inline constexpr double kEeReach = 0.9;            // end-effector reach disk
inline constexpr double kGraspStandoff = 0.9;      // dock distance from object center

inline constexpr double kHumanVMax = 2.0;
inline constexpr double kHumanRadius = 0.25;
inline constexpr int kSkeletonJoints = 17;

inline constexpr double kAttachPosTol = 0.15;
inline constexpr double kAttachAngTol = 10.0 * geom::kPi / 180.0;

inline constexpr double kOperatorDispCap = 0.12;
inline constexpr double kOperatorStopRadius = 0.15;

enum class ObjectClass { table, chair };

// Footprint half extents in the object frame; the table's long axis is +x.
inline constexpr double kTableHalfLong = 0.6;
inline constexpr double kTableHalfShort = 0.4;
inline constexpr double kChairHalf = 0.225;

geom::Polygon2 object_footprint(ObjectClass c);  // object-frame CCW polygon

struct RobotBody {
  geom::Pose2 pose;
  geom::Velocity2 velocity;            // applied body twist of the last step
  double footprint_radius = kRobotFootprintRadius;
  geom::Vec2 ee_init{0.45, 0.0};       // robot frame
  geom::Vec2 ee{0.45, 0.0};
  std::optional<int> attached_object;
};

struct WaypointPolicy {
  std::vector<geom::Vec2> waypoints;
  double speed = 1.2;
  double start_time = 0.0;  // agent idles until then
};

// Collaborating operator. Walking target and object intent are scripted by
// the scenario runner; while the object they hold is attached to the robot,
// their root rigidly follows the object.
struct OperatorPolicy {
  double displacement_gain = 0.12;  // metres of grasped-edge displacement
  double walk_speed = 1.2;
  std::optional<geom::Vec2> walk_target;
  std::optional<geom::Pose2> intended_goal;  // where they want the carried object
};

struct IdlePolicy {};

using HumanPolicy = std::variant<IdlePolicy, WaypointPolicy, OperatorPolicy>;

struct HumanAgent {
  int id = 0;
  geom::Vec2 root;
  geom::Vec2 velocity;
  double heading = 0.0;  // keeps its last value when standing still
  HumanPolicy policy;
  size_t waypoint_index = 0;
};

struct FurnitureObject {
  int id = 0;
  ObjectClass cls = ObjectClass::table;
  geom::Pose2 pose;
  std::optional<geom::Pose2> carried_rel;   // object pose in robot frame while attached
  std::optional<int> carried_by_human;      // collaborating operator, if any
};

struct WorldState {
  double time = 0.0;
  long tick = 0;
  RobotBody robot;
  std::vector<HumanAgent> humans;
  std::vector<FurnitureObject> objects;
  geom::Grid2 static_map;
};

HumanAgent* find_human(WorldState& w, int id);
FurnitureObject* find_object(WorldState& w, int id);
const FurnitureObject* find_object(const WorldState& w, int id);

// Ground-truth 2D keypoints: root plus a fixed 17-joint template rotated by
// the agent's heading.
std::vector<geom::Vec2> human_keypoints(const HumanAgent& a);

geom::Polygon2 object_footprint_world(const FurnitureObject& o);

// Candidate docking poses at kGraspStandoff from the object center: both
// short edges for a table, behind the backrest for a chair.
std::vector<geom::Pose2> grasp_dock_poses(const FurnitureObject& o);

// Grasped-edge displacement commanded by the operator, in the robot frame.
// Zero once the carried object is within kOperatorStopRadius of the intent.
// Throws std::invalid_argument("not an operator") for non-operator agents.
geom::Vec2 operator_displacement(const HumanAgent& agent, const RobotBody& robot,
                                 const FurnitureObject& carried);

// Rigidly couples the object to the robot. Requires base alignment within
// (kAttachPosTol, kAttachAngTol) of one of the dock poses; returns false
// ("grasp alignment failed") otherwise. operator_id marks a collaborative
// carry; pass nullopt for autonomous (chair) handling.
bool attach_object(WorldState& w, int object_id, std::optional<int> operator_id);

// Leaves the object where it is and retracts the end effector to ee_init.
void detach_object(WorldState& w, int object_id);

// Advances one fixed tick: clamps the command, moves the robot along the
// exact constant-twist arc, drags the attached object, advances every human
// by its policy and applies the operator's grasped-edge displacement. Bodies
// hitting lethal static cells stop at the contact boundary.
void step_world(WorldState& w, const geom::Velocity2& robot_cmd, double dt = kTickDt);

// True when a disk body at `center` overlaps a lethal static cell (by cell
// center), the collision predicate used by step_world.
bool disk_hits_static(const geom::Grid2& map, geom::Vec2 center, double radius);

}  // namespace scenesim::world

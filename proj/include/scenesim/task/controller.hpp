#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scenesim/fusion/backend.hpp"
#include "scenesim/nav/anticipation.hpp"
#include "scenesim/nav/costmap.hpp"
#include "scenesim/nav/planner.hpp"
#include "scenesim/task/carry.hpp"
#include "scenesim/task/layout.hpp"
#include "scenesim/task/params.hpp"
#include "scenesim/task/pickup.hpp"

namespace scenesim::task {

enum class TaskPhase {
  Idle,
  ApproachPickup,
  AlignBase,
  Grasp,
  CarryCompliant,
  DirectApproach,
  Place,
  ChairFetch,
  ChairPush,
  ReturnToStandby,
};

const char* phase_name(TaskPhase p);

enum class Mission { navigate, furnish };

struct ControllerConfig {
  Mission mission = Mission::furnish;
  bool anticipation = true;  // false: lidar-only obstacles, scripted task input
  CarryParams carry;
  nav::AnticipationParams anticipation_params;
  geom::Pose2 standby;            // navigate-mission goal and end-of-task parking
  double input_delay = 20.0;      // s before tasks start without anticipation
  double off_side_sign = 1.0;     // scripted grasp side without anticipation
  bool rotate_goal_frame = true;  // carry attraction in the robot frame
  double lookahead = 0.3;         // m, carrot spacing along the planned path
  double nav_speed = 0.4;         // m/s cruise while following a path
  double dock_radius = 1.2;       // m, switch from the planner to a direct servo
};

struct Event {
  double t = 0.0;
  std::string text;
};

// Side effects the controller asks the experiment loop to perform on the
// world: grasp the object whose track it has been servoing to, or release
// the carried one onto a layout slot.
struct AttachRequest {
  int track_id = 0;
  world::ObjectClass cls = world::ObjectClass::table;
  geom::Pose2 dock;
};
struct PlaceRequest {
  size_t entry_index = 0;
  geom::Pose2 target;
  world::ObjectClass cls = world::ObjectClass::table;
};

struct ControlOutput {
  geom::Velocity2 cmd;
  std::optional<AttachRequest> attach;
  std::optional<PlaceRequest> place;
  bool mission_complete = false;
};

// Robot-side control stack: layered costmap, planner, docking, grasping and
// the compliant carry, sequenced by a task phase machine. Consumes the
// latest feedback snapshot plus the per-tick lidar scan; every person-track
// read is counted so runs without anticipation can assert they never touch
// person feedback.
class Controller {
 public:
  Controller(ControllerConfig config, Layout layout, std::vector<PickupArea> areas,
             const geom::Grid2& static_map);

  void set_feedback(const fusion::FeedbackMsg& fb);
  void notify_attach(bool ok);

  ControlOutput tick(double now, const geom::Pose2& robot, geom::Vec2 ee_disp,
                     const std::vector<geom::Vec2>& lidar_hits);

  TaskPhase phase() const { return phase_; }
  size_t active_entry() const { return active_entry_; }
  bool failed() const { return failed_; }
  const std::string& failure() const { return failure_; }
  const std::vector<geom::Vec2>& current_plan() const { return plan_; }
  const std::vector<Event>& events() const { return events_; }
  long person_feedback_reads() const { return person_reads_; }
  const Layout& layout() const { return layout_; }
  const nav::CostMap& costmap() const { return costmap_; }

 private:
  // Every access to tracked persons goes through these two, so the counter
  // is exact by construction.
  const std::vector<fusion::PersonSnapshot>& fb_persons();
  const std::optional<fusion::PersonSnapshot>& area_person(const fusion::AreaState& a);

  void enter(TaskPhase next, double now);
  void fail_task(const std::string& why, double now);
  void log(double now, const std::string& text);

  std::optional<fusion::ObjectSnapshot> fused_object(int track_id) const;
  std::vector<fusion::ObjectSnapshot> area_tables(const fusion::AreaState& a) const;
  const fusion::AreaState* feedback_area(int area_id) const;

  void choose_next_task(double now);
  std::optional<PickupGoal> anticipated_pickup();
  std::optional<PickupGoal> scripted_pickup(world::ObjectClass cls);
  geom::Pose2 chair_dock(const geom::Pose2& chair) const;
  geom::Pose2 placement_goal(const geom::Pose2& target, const geom::Pose2& nominal) const;

  geom::Velocity2 navigate_to(const geom::Pose2& robot, const geom::Pose2& goal,
                              bool* arrived);
  geom::Velocity2 servo_to(const geom::Pose2& robot, const geom::Pose2& goal) const;

  ControllerConfig config_;
  Layout layout_;
  std::vector<PickupArea> areas_;
  nav::CostMap costmap_;

  fusion::FeedbackMsg fb_;
  bool have_fb_ = false;

  TaskPhase phase_ = TaskPhase::Idle;
  double phase_entered_ = 0.0;
  PickupGoal pickup_;
  world::ObjectClass carried_cls_ = world::ObjectClass::table;
  double side_sign_ = 1.0;
  size_t active_entry_ = 0;
  std::optional<geom::Pose2> rel_est_;  // carried object pose in the robot frame
  bool attach_requested_ = false;
  std::optional<bool> attach_result_;
  bool align_retried_ = false;
  bool plan_retried_ = false;
  bool look_logged_ = false;
  double release_since_ = -1.0;  // carry without goal: operator let go at this time

  std::vector<geom::Vec2> plan_;
  bool plan_failed_ = false;
  geom::Velocity2 last_cmd_;
  bool failed_ = false;
  std::string failure_;
  bool mission_complete_ = false;

  std::vector<Event> events_;
  long person_reads_ = 0;
};

}  // namespace scenesim::task

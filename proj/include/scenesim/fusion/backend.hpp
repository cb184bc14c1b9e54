#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scenesim/fusion/kalman.hpp"
#include "scenesim/sensors/sensor.hpp"
#include "scenesim/task/layout.hpp"

namespace scenesim::fusion {

struct BackendParams {
  double person_gate = 0.7;  // m, Euclidean association gates
  double object_gate = 0.5;
  int birth_hits = 3;
  double death_age = 1.0;  // s without update before a track is dropped
  double person_q = kPersonProcessNoise;
  double object_q = kObjectProcessNoise;
  double meas_sigma_pos = 0.05;  // measurement covariance fed to the filters
  double meas_sigma_theta = 0.03;
  double loc_alpha = 0.2;  // complementary blend per robot observation
  double loc_stale = 0.5;  // s, older external poses are ignored
  double person_feedback_range = 6.0;  // m around the robot
  double area_person_range = 2.5;      // m around a pickup-area center
  double contour_eps = 0.02;           // simplification tolerance, m
};

struct RobotEstimate {
  bool initialized = false;
  geom::Pose2 pose;
  double stamp = 0.0;
};

enum class LocResult { initialized, applied, stale };

// Complementary localization blend: pose <- pose (+) alpha * (external (-)
// pose), translation linear, rotation via angle_diff. The first message
// initializes outright; externals older than stale_age are ignored.
LocResult correct_localization(RobotEstimate& est, const geom::Pose2& external,
                               double external_stamp, double now, double alpha,
                               double stale_age);

// Greedy nearest-neighbor association on Mahalanobis distance, Euclidean
// gate, class must match. Returns (track index, observation index) pairs.
struct AssocEntry {
  geom::Vec2 pos;
  Eigen::Matrix2d innov_cov = Eigen::Matrix2d::Identity();
  int cls = 0;
};
struct AssocObs {
  geom::Vec2 pos;
  int cls = 0;
};
std::vector<std::pair<int, int>> associate(const std::vector<AssocEntry>& tracks,
                                           const std::vector<AssocObs>& observations,
                                           double gate);

struct SceneModel {
  double stamp = 0.0;
  std::vector<PersonTrack> persons;  // confirmed tracks only
  std::vector<ObjectTrack> objects;
  RobotEstimate robot;
};

// Line-delimited snapshot with stable ordering; doubles in %.17g.
std::string scene_to_wire(const SceneModel& m);

struct PersonSnapshot {
  int id = 0;
  geom::Vec2 root;
  geom::Vec2 velocity;
  std::vector<geom::Vec2> keypoints;
};

struct ObjectSnapshot {
  int id = 0;
  world::ObjectClass cls = world::ObjectClass::table;
  geom::Pose2 pose;
};

// Per pickup area: which tracked tables sit inside it and which person the
// backend considers the active collaborator there (closest to the area
// center within range, ties to the lower id).
struct AreaState {
  int area_id = 0;
  std::vector<int> table_ids;
  std::optional<PersonSnapshot> person;
};

struct FeedbackMsg {
  long seq = 0;
  double stamp = 0.0;
  bool robot_valid = false;
  geom::Pose2 robot_pose;
  double robot_stamp = 0.0;
  std::vector<PersonSnapshot> persons;  // within person_feedback_range of the robot
  std::vector<ObjectSnapshot> objects;  // every confirmed object track
  std::vector<task::LayoutEntry> layout;
  std::vector<AreaState> areas;
};

// Single-threaded fusion event loop: feed delivered percepts in channel
// order, prune by wall clock, emit feedback snapshots.
class Backend {
 public:
  Backend() = default;
  Backend(BackendParams params, task::Layout layout, std::vector<task::PickupArea> areas);

  void process(const sensors::PerceptMsg& msg);
  void prune(double now);
  FeedbackMsg emit_feedback(double now);

  // Task-progress mirror: the robot reports a filled layout slot.
  void mark_occupied(size_t entry_index);

  SceneModel snapshot() const;
  const task::Layout& layout() const { return layout_; }

  long divergence_resets() const { return divergence_resets_; }
  long stale_robot_msgs() const { return stale_robot_msgs_; }
  long contour_rejects() const { return contour_rejects_; }

 private:
  void advance_to(double t);
  std::optional<geom::Pose2> object_measurement(const sensors::ObjectObs& obs);

  BackendParams params_;
  task::Layout layout_;
  std::vector<task::PickupArea> areas_;
  std::vector<PersonTrack> persons_;  // includes provisional tracks (hits < birth)
  std::vector<ObjectTrack> objects_;
  RobotEstimate robot_;
  double time_ = 0.0;
  long feedback_seq_ = 0;
  int next_person_id_ = 1;
  int next_object_id_ = 1;
  long divergence_resets_ = 0;
  long stale_robot_msgs_ = 0;
  long contour_rejects_ = 0;
};

}  // namespace scenesim::fusion

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "scenesim/geometry/pose2.hpp"
#include "scenesim/world/world.hpp"

namespace scenesim::fusion {

// Constant-velocity person track. Keypoints are not filtered; they carry the
// latest accepted observation alongside the filtered root.
struct PersonTrack {
  int id = 0;
  Eigen::Vector4d state = Eigen::Vector4d::Zero();  // x, y, vx, vy
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();
  std::vector<geom::Vec2> keypoints;
  double last_update = 0.0;
  int hits = 0;

  geom::Vec2 position() const { return {state(0), state(1)}; }
  geom::Vec2 velocity() const { return {state(2), state(3)}; }
};

// Static furniture track. Table yaw lives in [0, pi) (half-turn symmetric),
// chair yaw in (-pi, pi].
struct ObjectTrack {
  int id = 0;
  world::ObjectClass cls = world::ObjectClass::table;
  Eigen::Vector3d state = Eigen::Vector3d::Zero();  // x, y, theta
  Eigen::Matrix3d cov = Eigen::Matrix3d::Identity();
  double last_update = 0.0;
  int hits = 0;

  geom::Vec2 position() const { return {state(0), state(1)}; }
  geom::Pose2 pose() const { return {state(0), state(1), state(2)}; }
};

// Process noise defaults: person q is a white-acceleration spectral density,
// object q a per-second drift allowance on an otherwise static model.
inline constexpr double kPersonProcessNoise = 0.5;
inline constexpr double kObjectProcessNoise = 0.01;

void person_predict(PersonTrack& t, double dt, double q = kPersonProcessNoise);
void object_predict(ObjectTrack& t, double dt, double q = kObjectProcessNoise);

// Joseph-form position update. Returns false when the covariance stops being
// positive definite ("filter divergence"); the track is then reset to a wide
// prior around the measurement and the caller should count the event.
bool person_update(PersonTrack& t, geom::Vec2 z, double sigma);

// Full-pose update. Table yaw innovation is wrapped into (-pi/2, pi/2] so the
// half-turn-symmetric measurement never drags the estimate toward theta+pi.
bool object_update(ObjectTrack& t, geom::Pose2 z, double sigma_pos, double sigma_theta);

}  // namespace scenesim::fusion

#pragma once

#include <stdexcept>
#include <vector>

#include "scenesim/fusion/backend.hpp"
#include "scenesim/geometry/pose2.hpp"

namespace scenesim::nav {

struct AnticipationParams {
  double t_pred = 2.0;            // s, extrapolation horizon
  double t_step = 0.5;            // s, replica spacing along the horizon
  double inflation_radius = 0.35; // m, disk stamped per cloud point
  double person_range = 6.0;      // m, ignore tracks farther from the robot
  int min_keypoints = 5;          // ignore skimpier tracks
};

inline void validate(const AnticipationParams& p, double robot_radius) {
  if (!(p.t_step > 0.0) || p.t_step > p.t_pred)
    throw std::invalid_argument("bad anticipation horizon");
  if (p.inflation_radius < robot_radius)
    throw std::invalid_argument("inflation below robot radius");
}

// Keeps tracks close enough and complete enough to anticipate.
std::vector<fusion::PersonSnapshot> filter_outlier(
    const std::vector<fusion::PersonSnapshot>& persons, const geom::Pose2& robot,
    const AnticipationParams& params);

// Keypoints of each person transformed into the robot frame and replicated
// along the constant-velocity extrapolation at dt = 0, t_step, ..., t_pred.
// Exact duplicates (a standing person collapses every replica) are removed.
// Inflation happens later, when the cloud is stamped into the cost map.
std::vector<geom::Vec2> build_virtual_cloud(const std::vector<fusion::PersonSnapshot>& persons,
                                            const geom::Pose2& robot,
                                            const AnticipationParams& params);

}  // namespace scenesim::nav

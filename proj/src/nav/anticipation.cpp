#include "scenesim/nav/anticipation.hpp"

#include <algorithm>
#include <cmath>

namespace scenesim::nav {

std::vector<fusion::PersonSnapshot> filter_outlier(
    const std::vector<fusion::PersonSnapshot>& persons, const geom::Pose2& robot,
    const AnticipationParams& params) {
  std::vector<fusion::PersonSnapshot> out;
  for (const auto& p : persons) {
    if ((p.root - geom::Vec2{robot.x, robot.y}).norm() > params.person_range) continue;
    if (static_cast<int>(p.keypoints.size()) < params.min_keypoints) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<geom::Vec2> build_virtual_cloud(const std::vector<fusion::PersonSnapshot>& persons,
                                            const geom::Pose2& robot,
                                            const AnticipationParams& params) {
  std::vector<geom::Vec2> cloud;
  const int steps = static_cast<int>(std::floor(params.t_pred / params.t_step + 1e-9));
  for (const auto& p : persons) {
    std::vector<geom::Vec2> local;
    local.reserve(p.keypoints.size());
    for (const auto& kp : p.keypoints) local.push_back(geom::transform_to_frame(robot, kp));
    const geom::Vec2 v_local = geom::rotate(p.velocity, -robot.theta);
    // current keypoints once, then every extrapolation step including dt = 0
    for (const auto& kp : local) cloud.push_back(kp);
    for (int i = 0; i <= steps; ++i) {
      const double dt = i * params.t_step;
      for (const auto& kp : local)
        cloud.push_back({kp.x + dt * v_local.x, kp.y + dt * v_local.y});
    }
  }
  std::sort(cloud.begin(), cloud.end(), [](const geom::Vec2& a, const geom::Vec2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  cloud.erase(std::unique(cloud.begin(), cloud.end(),
                          [](const geom::Vec2& a, const geom::Vec2& b) {
                            return a.x == b.x && a.y == b.y;
                          }),
              cloud.end());
  return cloud;
}

}  // namespace scenesim::nav

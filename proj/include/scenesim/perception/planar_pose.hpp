#pragma once

#include <array>

#include "scenesim/geometry/pose2.hpp"

namespace scenesim::percept {

inline constexpr double kPoseOutlierRms = 0.15;

struct PlanarFit {
  geom::Pose2 pose;  // maps model-frame points into the observation frame
  double rms = 0.0;  // residual of the best correspondence
};

// Closed-form 2D rigid fit between the 4 model corners and an observed quad
// with unknown cyclic correspondence (4 rotations x 2 orientations; the best
// residual wins). fold_halfturn folds the yaw into [0, pi) for 180-degree
// symmetric footprints (tables).
PlanarFit estimate_planar_pose(const std::array<geom::Vec2, 4>& model,
                               const std::array<geom::Vec2, 4>& quad, bool fold_halfturn);

// Fits worse than kPoseOutlierRms are discarded upstream ("pose outlier").
inline bool pose_outlier(const PlanarFit& f) { return f.rms > kPoseOutlierRms; }

// Yaw folded into [0, pi).
double fold_halfturn_angle(double theta);

}  // namespace scenesim::percept

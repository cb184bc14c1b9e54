#pragma once

#include <optional>
#include <vector>

#include "scenesim/fusion/backend.hpp"
#include "scenesim/task/layout.hpp"
#include "scenesim/task/params.hpp"

namespace scenesim::task {

// Tracked tables whose center lies inside the area. exclude_near skips
// anything within 0.6 m of that point, used to keep the table currently
// being carried out of the candidate set.
std::vector<fusion::ObjectSnapshot> select_tables(
    const std::vector<fusion::ObjectSnapshot>& objects, const PickupArea& area,
    std::optional<geom::Vec2> exclude_near = std::nullopt);

// Person closest to the area center among those within tau_p; ties go to the
// lower track id. Empty when nobody is near enough.
std::optional<fusion::PersonSnapshot> select_person(
    const std::vector<fusion::PersonSnapshot>& persons, const PickupArea& area, double tau_p);

// Anticipated docking side: picks the table closest to the person and places
// the approach goal at delta_grasp along the table axis on the side opposite
// the person (a zero dot product counts as the positive side), heading back
// toward the table center.
struct PickupGoal {
  int table_id = 0;
  geom::Pose2 goal;
  double side = 1.0;  // which end of the table axis the robot docks at
};
std::optional<PickupGoal> anticipate_pickup_pose(const fusion::PersonSnapshot& person,
                                                 const std::vector<fusion::ObjectSnapshot>& tables,
                                                 const CarryParams& params);

// Position within tau_goal, linear speed below tau_vel and heading within
// 10 degrees of the goal.
bool goal_reached(const geom::Pose2& goal, const geom::Pose2& robot,
                  const geom::Velocity2& vel, const CarryParams& params);

}  // namespace scenesim::task

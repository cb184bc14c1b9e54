#include "scenesim/task/pickup.hpp"

#include <cmath>
#include <limits>

namespace scenesim::task {

std::vector<fusion::ObjectSnapshot> select_tables(
    const std::vector<fusion::ObjectSnapshot>& objects, const PickupArea& area,
    std::optional<geom::Vec2> exclude_near) {
  std::vector<fusion::ObjectSnapshot> out;
  for (const auto& o : objects) {
    if (o.cls != world::ObjectClass::table) continue;
    const geom::Vec2 c{o.pose.x, o.pose.y};
    if (!geom::contains(area.polygon, c)) continue;
    if (exclude_near && (c - *exclude_near).norm() < 0.6) continue;
    out.push_back(o);
  }
  return out;
}

std::optional<fusion::PersonSnapshot> select_person(
    const std::vector<fusion::PersonSnapshot>& persons, const PickupArea& area, double tau_p) {
  const fusion::PersonSnapshot* best = nullptr;
  double best_d = tau_p;
  for (const auto& p : persons) {
    const double d = (p.root - area.center).norm();
    if (d > tau_p) continue;
    if (!best || d < best_d || (d == best_d && p.id < best->id)) {
      best = &p;
      best_d = d;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

std::optional<PickupGoal> anticipate_pickup_pose(const fusion::PersonSnapshot& person,
                                                 const std::vector<fusion::ObjectSnapshot>& tables,
                                                 const CarryParams& params) {
  const fusion::ObjectSnapshot* table = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& t : tables) {
    const double d = (geom::Vec2{t.pose.x, t.pose.y} - person.root).norm();
    if (d < best_d || (d == best_d && table && t.id < table->id)) {
      table = &t;
      best_d = d;
    }
  }
  if (!table) return std::nullopt;

  const geom::Vec2 xt{table->pose.x, table->pose.y};
  const geom::Vec2 n_t = geom::heading_vec(table->pose.theta);  // long-side axis
  const geom::Vec2 n_p = xt - person.root;                      // person approach vector
  const double side = geom::dot(n_p, n_t) >= 0.0 ? 1.0 : -1.0;
  PickupGoal g;
  g.table_id = table->id;
  g.side = side;
  g.goal.x = xt.x + side * params.delta_grasp * n_t.x;
  g.goal.y = xt.y + side * params.delta_grasp * n_t.y;
  g.goal.theta = std::atan2(xt.y - g.goal.y, xt.x - g.goal.x);  // face the table
  return g;
}

bool goal_reached(const geom::Pose2& goal, const geom::Pose2& robot,
                  const geom::Velocity2& vel, const CarryParams& params) {
  const double pos_err = std::hypot(goal.x - robot.x, goal.y - robot.y);
  if (pos_err >= params.tau_goal) return false;
  if (vel.linear_norm() >= params.tau_vel) return false;
  return std::abs(geom::angle_diff(goal.theta, robot.theta)) < 10.0 * geom::kPi / 180.0;
}

}  // namespace scenesim::task

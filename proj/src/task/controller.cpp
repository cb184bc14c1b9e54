#include "scenesim/task/controller.hpp"

#include <algorithm>
#include <cmath>

#include "scenesim/geometry/polygon2.hpp"

namespace scenesim::task {

namespace {

constexpr double kGraspDuration = 2.0;    // s of closing the gripper
constexpr double kAlignTimeout = 15.0;    // s before giving up on docking
constexpr double kReleaseHold = 1.0;      // s of slack grip that ends a guided carry
constexpr double kMinCarryTime = 3.0;     // s before a guided carry may end
constexpr double kPlaceAngTol = 2.0 * geom::kPi / 180.0;
constexpr double kHeadingGain = 1.5;

geom::Velocity2 clamp_cmd(geom::Velocity2 v, double v_max, double w_max) {
  const double lin = v.linear_norm();
  if (lin > v_max) {
    const double s = v_max / lin;
    v.vx *= s;
    v.vy *= s;
  }
  v.omega = std::clamp(v.omega, -w_max, w_max);
  return v;
}

}  // namespace

const char* phase_name(TaskPhase p) {
  switch (p) {
    case TaskPhase::Idle: return "Idle";
    case TaskPhase::ApproachPickup: return "ApproachPickup";
    case TaskPhase::AlignBase: return "AlignBase";
    case TaskPhase::Grasp: return "Grasp";
    case TaskPhase::CarryCompliant: return "CarryCompliant";
    case TaskPhase::DirectApproach: return "DirectApproach";
    case TaskPhase::Place: return "Place";
    case TaskPhase::ChairFetch: return "ChairFetch";
    case TaskPhase::ChairPush: return "ChairPush";
    case TaskPhase::ReturnToStandby: return "ReturnToStandby";
  }
  return "?";
}

Controller::Controller(ControllerConfig config, Layout layout, std::vector<PickupArea> areas,
                       const geom::Grid2& static_map)
    : config_(std::move(config)),
      layout_(std::move(layout)),
      areas_(std::move(areas)),
      costmap_(nav::make_costmap(static_map, world::kRobotFootprintRadius)) {
  validate(config_.carry);
  nav::validate(config_.anticipation_params, world::kRobotFootprintRadius);
}

void Controller::set_feedback(const fusion::FeedbackMsg& fb) {
  fb_ = fb;
  have_fb_ = true;
}

void Controller::notify_attach(bool ok) { attach_result_ = ok; }

const std::vector<fusion::PersonSnapshot>& Controller::fb_persons() {
  ++person_reads_;
  return fb_.persons;
}

const std::optional<fusion::PersonSnapshot>& Controller::area_person(const fusion::AreaState& a) {
  ++person_reads_;
  return a.person;
}

void Controller::enter(TaskPhase next, double now) {
  phase_ = next;
  phase_entered_ = now;
  release_since_ = -1.0;
  log(now, std::string("phase ") + phase_name(next));
}

void Controller::fail_task(const std::string& why, double now) {
  failed_ = true;
  failure_ = why;
  log(now, "error " + why);
  enter(TaskPhase::ReturnToStandby, now);
}

void Controller::log(double now, const std::string& text) { events_.push_back({now, text}); }

std::optional<fusion::ObjectSnapshot> Controller::fused_object(int track_id) const {
  for (const auto& o : fb_.objects)
    if (o.id == track_id) return o;
  return std::nullopt;
}

std::vector<fusion::ObjectSnapshot> Controller::area_tables(const fusion::AreaState& a) const {
  std::vector<fusion::ObjectSnapshot> out;
  for (int id : a.table_ids)
    if (auto o = fused_object(id)) out.push_back(*o);
  return out;
}

const fusion::AreaState* Controller::feedback_area(int area_id) const {
  for (const auto& a : fb_.areas)
    if (a.area_id == area_id) return &a;
  return nullptr;
}

std::optional<PickupGoal> Controller::anticipated_pickup() {
  for (const auto& area : areas_) {
    if (area.class_filter != world::ObjectClass::table) continue;
    const fusion::AreaState* st = feedback_area(area.id);
    if (!st) continue;
    const auto& person = area_person(*st);
    if (!person) continue;
    const auto tables = area_tables(*st);
    if (auto g = anticipate_pickup_pose(*person, tables, config_.carry)) return g;
  }
  return std::nullopt;
}

std::optional<PickupGoal> Controller::scripted_pickup(world::ObjectClass cls) {
  for (const auto& area : areas_) {
    if (area.class_filter != cls) continue;
    const fusion::ObjectSnapshot* best = nullptr;
    for (const auto& o : fb_.objects) {
      if (o.cls != cls) continue;
      if (!geom::contains(area.polygon, o.pose.position())) continue;
      if (!best || o.id < best->id) best = &o;
    }
    if (!best) continue;
    PickupGoal g;
    g.table_id = best->id;
    if (cls == world::ObjectClass::table) {
      g.side = config_.off_side_sign;
      const geom::Vec2 axis = geom::heading_vec(best->pose.theta);
      g.goal.x = best->pose.x + g.side * config_.carry.delta_grasp * axis.x;
      g.goal.y = best->pose.y + g.side * config_.carry.delta_grasp * axis.y;
      g.goal.theta = std::atan2(best->pose.y - g.goal.y, best->pose.x - g.goal.x);
    } else {
      g.goal = chair_dock(best->pose);
    }
    return g;
  }
  return std::nullopt;
}

geom::Pose2 Controller::chair_dock(const geom::Pose2& chair) const {
  const geom::Vec2 axis = geom::heading_vec(chair.theta);
  geom::Pose2 dock;
  dock.x = chair.x - config_.carry.delta_grasp * axis.x;
  dock.y = chair.y - config_.carry.delta_grasp * axis.y;
  dock.theta = chair.theta;  // push from behind the backrest
  return dock;
}

// Placement pose compensated by the measured grasp offset: standing at the
// returned pose puts the carried piece (at rel_est_ in the robot frame) on
// the target. Tables may land half-turned; of the two headings that work,
// the one closer to the nominal face-the-center pose wins.
geom::Pose2 Controller::placement_goal(const geom::Pose2& target, const geom::Pose2& nominal) const {
  if (!rel_est_) return nominal;
  double heading = geom::wrap_angle(target.theta - rel_est_->theta);
  if (carried_cls_ == world::ObjectClass::table) {
    const double flipped = geom::wrap_angle(heading + geom::kPi);
    if (std::abs(geom::angle_diff(flipped, nominal.theta)) <
        std::abs(geom::angle_diff(heading, nominal.theta)))
      heading = flipped;
  }
  const geom::Vec2 offset = geom::rotate(rel_est_->position(), heading);
  geom::Pose2 goal;
  goal.x = target.x - offset.x;
  goal.y = target.y - offset.y;
  goal.theta = heading;
  return goal;
}

geom::Velocity2 Controller::servo_to(const geom::Pose2& robot, const geom::Pose2& goal) const {
  const geom::Vec2 local = geom::transform_to_frame(robot, goal.position());
  geom::Velocity2 v;
  v.vx = local.x;
  v.vy = local.y;
  v.omega = kHeadingGain * geom::angle_diff(goal.theta, robot.theta);
  return clamp_cmd(v, config_.carry.v_max, config_.carry.w_max);
}

geom::Velocity2 Controller::navigate_to(const geom::Pose2& robot, const geom::Pose2& goal,
                                        bool* arrived) {
  if (arrived) *arrived = false;
  plan_failed_ = false;
  const double dist = (goal.position() - robot.position()).norm();
  if (dist <= config_.dock_radius) {
    plan_.clear();
    if (goal_reached(goal, robot, last_cmd_, config_.carry)) {
      if (arrived) *arrived = true;
      return {};
    }
    return servo_to(robot, goal);
  }

  try {
    plan_ = nav::plan_path(costmap_.combined, robot.position(), goal.position()).waypoints;
    plan_failed_ = false;
  } catch (const std::runtime_error&) {
    plan_.clear();
    plan_failed_ = true;
    return {};  // hold still until the blockage clears or the caller reacts
  }

  geom::Vec2 carrot = goal.position();
  for (const auto& wp : plan_) {
    if ((wp - robot.position()).norm() >= config_.lookahead) {
      carrot = wp;
      break;
    }
  }
  const geom::Vec2 local = geom::rotate(carrot - robot.position(), -robot.theta);
  const double range = local.norm();
  geom::Velocity2 v;
  if (range > 1e-9) {
    const double speed = std::min(config_.nav_speed, dist);
    v.vx = speed * local.x / range;
    v.vy = speed * local.y / range;
  }
  v.omega = kHeadingGain * std::atan2(local.y, local.x);
  return clamp_cmd(v, world::kRobotVMax, world::kRobotWMax);
}

void Controller::choose_next_task(double now) {
  const LayoutEntry* next = nullptr;
  for (const auto& e : layout_.entries) {
    if (!e.occupied) {
      next = &e;
      break;
    }
  }
  if (!next) {
    if (config_.mission == Mission::furnish && !mission_complete_) {
      mission_complete_ = true;
      log(now, "layout complete");
      enter(TaskPhase::ReturnToStandby, now);
    }
    return;
  }
  if (!config_.anticipation && now < config_.input_delay) return;
  if (!have_fb_) return;

  std::optional<PickupGoal> g;
  if (next->cls == world::ObjectClass::table)
    g = config_.anticipation ? anticipated_pickup() : scripted_pickup(world::ObjectClass::table);
  else
    g = scripted_pickup(world::ObjectClass::chair);
  if (!g) return;

  pickup_ = *g;
  carried_cls_ = next->cls;
  side_sign_ = pickup_.side;
  align_retried_ = false;
  plan_retried_ = false;
  attach_requested_ = false;
  attach_result_.reset();
  rel_est_.reset();
  log(now, std::string("pickup object ") + std::to_string(pickup_.table_id));
  enter(next->cls == world::ObjectClass::table ? TaskPhase::ApproachPickup : TaskPhase::ChairFetch,
        now);
}

ControlOutput Controller::tick(double now, const geom::Pose2& robot, geom::Vec2 ee_disp,
                               const std::vector<geom::Vec2>& lidar_hits) {
  ControlOutput out;
  const double inflation = config_.anticipation_params.inflation_radius;
  nav::rebuild_onboard(costmap_, lidar_hits, inflation);
  if (config_.anticipation && have_fb_) {
    const auto near = nav::filter_outlier(fb_persons(), robot, config_.anticipation_params);
    const auto cloud = nav::build_virtual_cloud(near, robot, config_.anticipation_params);
    std::vector<geom::Vec2> world_pts;
    world_pts.reserve(cloud.size());
    for (const auto& p : cloud) world_pts.push_back(geom::transform_from_frame(robot, p));
    nav::rebuild_virtual(costmap_, world_pts, inflation);
  } else {
    nav::rebuild_virtual(costmap_, {}, inflation);
  }
  nav::recombine(costmap_);

  switch (phase_) {
    case TaskPhase::Idle: {
      if (config_.mission == Mission::navigate) {
        if (!mission_complete_) enter(TaskPhase::ReturnToStandby, now);
        break;
      }
      choose_next_task(now);
      break;
    }

    case TaskPhase::ApproachPickup: {
      if (config_.anticipation) {
        if (auto g = anticipated_pickup()) {
          if (g->table_id != pickup_.table_id)
            log(now, "pickup switches to " + std::to_string(g->table_id));
          pickup_ = *g;
          side_sign_ = pickup_.side;
        }
      } else {
        // Track the fused pose so the dock stays put as the estimate settles.
        auto g = scripted_pickup(world::ObjectClass::table);
        if (g && g->table_id == pickup_.table_id) pickup_ = *g;
      }
      bool arrived = false;
      out.cmd = navigate_to(robot, pickup_.goal, &arrived);
      if (arrived) enter(TaskPhase::AlignBase, now);
      break;
    }

    case TaskPhase::ChairFetch: {
      if (auto obj = fused_object(pickup_.table_id)) pickup_.goal = chair_dock(obj->pose);
      bool arrived = false;
      out.cmd = navigate_to(robot, pickup_.goal, &arrived);
      if (arrived) enter(TaskPhase::AlignBase, now);
      break;
    }

    case TaskPhase::AlignBase: {
      geom::Pose2 dock = pickup_.goal;
      if (auto obj = fused_object(pickup_.table_id)) {
        if (carried_cls_ == world::ObjectClass::table) {
          const geom::Vec2 axis = geom::heading_vec(obj->pose.theta);
          dock.x = obj->pose.x + side_sign_ * config_.carry.delta_grasp * axis.x;
          dock.y = obj->pose.y + side_sign_ * config_.carry.delta_grasp * axis.y;
          dock.theta = std::atan2(obj->pose.y - dock.y, obj->pose.x - dock.x);
        } else {
          dock = chair_dock(obj->pose);
        }
      }
      const AlignResult res = align_base(robot, dock);
      out.cmd = res.cmd;
      if (res.aligned) {
        attach_requested_ = false;
        attach_result_.reset();
        enter(TaskPhase::Grasp, now);
      } else if (now - phase_entered_ > kAlignTimeout) {
        fail_task("alignment timeout", now);
      }
      break;
    }

    case TaskPhase::Grasp: {
      if (attach_result_) {
        if (*attach_result_) {
          if (auto obj = fused_object(pickup_.table_id))
            rel_est_ = geom::pose_to_frame(robot, obj->pose);
          log(now, "attached object " + std::to_string(pickup_.table_id));
          look_logged_ = false;
          if (carried_cls_ == world::ObjectClass::table) {
            enter(TaskPhase::CarryCompliant, now);
          } else {
            enter(TaskPhase::ChairPush, now);
          }
        } else if (!align_retried_) {
          align_retried_ = true;
          log(now, "grasp alignment failed");
          enter(TaskPhase::AlignBase, now);
        } else {
          fail_task("grasp alignment failed", now);
        }
        attach_requested_ = false;
        attach_result_.reset();
      } else if (!attach_requested_ && now - phase_entered_ >= kGraspDuration) {
        out.attach = AttachRequest{pickup_.table_id, carried_cls_, pickup_.goal};
        attach_requested_ = true;
      }
      break;
    }

    case TaskPhase::CarryCompliant:
    case TaskPhase::DirectApproach: {
      if (!config_.anticipation) {
        // Guided carry: the operator steers through the grasped edge; the
        // carry ends when they hold still with the grip relaxed.
        geom::Velocity2 v;
        if (std::abs(ee_disp.x) > config_.carry.tau_ee) v.vx = config_.carry.k_e_lin * ee_disp.x;
        if (std::abs(ee_disp.y) > config_.carry.tau_ee) {
          if (v.vx != 0.0)
            v.omega = config_.carry.k_e_rot * ee_disp.y;
          else
            v.vy = config_.carry.k_e_lin * ee_disp.y;
        }
        out.cmd = clamp_cmd(v, config_.carry.v_max, config_.carry.w_max);
        const bool passive =
            std::abs(ee_disp.x) <= config_.carry.tau_ee && std::abs(ee_disp.y) <= config_.carry.tau_ee;
        if (!passive || now - phase_entered_ < kMinCarryTime) {
          release_since_ = -1.0;
        } else if (release_since_ < 0.0) {
          release_since_ = now;
        } else if (now - release_since_ >= kReleaseHold) {
          const PlacementGoal g =
              update_goal(layout_, robot, side_sign_, carried_cls_, config_.carry);
          out.place = PlaceRequest{g.entry_index, layout_.entries[g.entry_index].target,
                                   carried_cls_};
          layout_.entries[g.entry_index].occupied = true;
          rel_est_.reset();
          enter(TaskPhase::Place, now);
        }
        break;
      }

      const PlacementGoal g = update_goal(layout_, robot, side_sign_, carried_cls_, config_.carry);
      if (!look_logged_ || active_entry_ != g.entry_index) {
        log(now, "look at goal " + std::to_string(g.entry_index));
        look_logged_ = true;
      }
      active_entry_ = g.entry_index;
      const geom::Pose2 target = layout_.entries[g.entry_index].target;
      const geom::Pose2 final_goal = placement_goal(target, g.robot_goal);
      const geom::Vec2 goal_vec = final_goal.position() - robot.position();
      const double heading_err = geom::angle_diff(final_goal.theta, robot.theta);
      const CarryCommand res = carry_velocity(ee_disp, goal_vec, robot.theta, heading_err,
                                              config_.carry, config_.rotate_goal_frame);
      out.cmd = res.cmd;
      if (res.reached) {
        out.place = PlaceRequest{g.entry_index, target, carried_cls_};
        layout_.entries[g.entry_index].occupied = true;
        rel_est_.reset();
        enter(TaskPhase::Place, now);
        break;
      }
      const bool direct =
          goal_vec.norm() < config_.carry.tau_direct &&
          std::abs(ee_disp.x) <= config_.carry.tau_ee && std::abs(ee_disp.y) <= config_.carry.tau_ee;
      if (direct && phase_ == TaskPhase::CarryCompliant) enter(TaskPhase::DirectApproach, now);
      if (!direct && phase_ == TaskPhase::DirectApproach) enter(TaskPhase::CarryCompliant, now);
      break;
    }

    case TaskPhase::ChairPush: {
      const PlacementGoal g = update_goal(layout_, robot, 1.0, carried_cls_, config_.carry);
      active_entry_ = g.entry_index;
      const geom::Pose2 target = layout_.entries[g.entry_index].target;
      const geom::Pose2 final_goal = placement_goal(target, g.robot_goal);
      const double dist = (final_goal.position() - robot.position()).norm();
      if (dist > config_.dock_radius) {
        bool arrived = false;
        out.cmd = navigate_to(robot, final_goal, &arrived);
        if (plan_failed_) {
          if (!plan_retried_) {
            plan_retried_ = true;
            if (auto obj = fused_object(pickup_.table_id))
              rel_est_ = geom::pose_to_frame(robot, obj->pose);
            log(now, "chair replan with re-fused pose");
          } else {
            fail_task("chair task failed", now);
          }
        }
        break;
      }
      const double pos_err = dist;
      const double ang_err = geom::angle_diff(final_goal.theta, robot.theta);
      if (pos_err < config_.carry.tau_goal && std::abs(ang_err) < kPlaceAngTol &&
          last_cmd_.linear_norm() < config_.carry.tau_vel) {
        out.place = PlaceRequest{g.entry_index, target, carried_cls_};
        layout_.entries[g.entry_index].occupied = true;
        rel_est_.reset();
        enter(TaskPhase::Place, now);
        break;
      }
      out.cmd = servo_to(robot, final_goal);
      break;
    }

    case TaskPhase::Place: {
      enter(TaskPhase::Idle, now);
      break;
    }

    case TaskPhase::ReturnToStandby: {
      bool arrived = false;
      out.cmd = navigate_to(robot, config_.standby, &arrived);
      if (arrived) {
        if (config_.mission == Mission::navigate) mission_complete_ = true;
        enter(TaskPhase::Idle, now);
      }
      break;
    }
  }

  last_cmd_ = out.cmd;
  out.mission_complete = mission_complete_;
  return out;
}

}  // namespace scenesim::task

#include "scenesim/exp/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "scenesim/common/digest.hpp"
#include "scenesim/common/strfmt.hpp"
#include "scenesim/fusion/backend.hpp"
#include "scenesim/nav/lidar.hpp"
#include "scenesim/nav/planner.hpp"
#include "scenesim/sensors/channel.hpp"
#include "scenesim/sensors/wire.hpp"
#include "scenesim/task/controller.hpp"

namespace scenesim::exp {

namespace {

constexpr int kFeedbackRate = 10;  // Hz
constexpr double kVerifyAngTol = 3.0 * geom::kPi / 180.0;
constexpr double kDeviationTol = 0.15;  // m off the straight line counts as a detour
constexpr double kAttachSearchRadius = 0.5;

double point_segment_distance(geom::Vec2 p, geom::Vec2 a, geom::Vec2 b) {
  const geom::Vec2 ab = b - a;
  const double len2 = ab.squared_norm();
  double t = len2 > 0.0 ? geom::dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

world::OperatorPolicy* operator_policy(world::WorldState& w, int human_id) {
  world::HumanAgent* agent = world::find_human(w, human_id);
  if (agent == nullptr) return nullptr;
  return std::get_if<world::OperatorPolicy>(&agent->policy);
}

const task::LayoutEntry* first_open_table(const task::Layout& layout) {
  for (const auto& e : layout.entries)
    if (!e.occupied && e.cls == world::ObjectClass::table) return &e;
  return nullptr;
}

}  // namespace

RunReport run(const ScenarioConfig& cfg, uint64_t seed, const RunOptions& opt) {
  RunReport rep;
  rep.scenario_id = cfg.id;
  rep.seed = seed;
  rep.anticipation = opt.anticipation;

  world::WorldState w = make_world(cfg, seed);

  fusion::BackendParams bp;
  fusion::Backend backend(bp, cfg.layout, cfg.areas);

  sensors::Channel<sensors::PerceptMsg> up(cfg.channel, seed, "chan.percept");
  sensors::Channel<fusion::FeedbackMsg> down(cfg.channel, seed, "chan.feedback");

  task::ControllerConfig cc;
  cc.mission = cfg.mission;
  cc.anticipation = opt.anticipation;
  cc.carry = cfg.carry;
  cc.anticipation_params = cfg.anticipation;
  cc.standby = cfg.standby;
  cc.input_delay = cfg.input_delay;
  cc.off_side_sign = cfg.off_side_sign;
  cc.nav_speed = cfg.nav_speed;
  task::Controller ctl(cc, cfg.layout, cfg.areas, cfg.map);

  fusion::RobotEstimate est;
  est.initialized = true;
  est.pose = cfg.robot_start;
  geom::Pose2 prev_true = w.robot.pose;
  bool had_plan = false;

  std::map<int, long> node_seq;
  long fb_seq = 0;
  const int fb_every = world::kTickRate / kFeedbackRate;

  std::vector<int> walkers;
  for (const auto& h : cfg.humans)
    if (h.kind == HumanSpec::Kind::waypoints) walkers.push_back(h.id);

  Fnv1a64 digest;
  std::string trace;
  auto emit = [&](const std::string& line) {
    digest.update(line);
    digest.update("\n");
    if (opt.keep_trace) {
      trace += line;
      trace += '\n';
    }
  };
  emit("trace v1 scenario " + cfg.id + " seed " + std::to_string(seed) + " anticipation " +
       (opt.anticipation ? "on" : "off"));

  double safety_sum = 0.0;
  long safety_ticks = 0;
  double min_safety = -1.0;
  const long max_ticks = static_cast<long>(std::llround(cfg.max_duration / world::kTickDt));

  while (w.tick <= max_ticks) {
    const double now = w.time;

    // Edge sensors observe and transmit at their own rates.
    for (const auto& node : cfg.sensor_nodes) {
      if (!sensors::emits_at_tick(node, w.tick)) continue;
      sensors::PerceptMsg msg = sensors::observe(node, w, seed);
      const long seq = node_seq[node.id]++;
      msg.seq = seq;
      up.submit(std::move(msg), node.id, seq, now);
    }
    for (const auto& msg : up.deliver(now)) backend.process(sensors::from_wire(sensors::to_wire(msg)));
    backend.prune(now);

    if (w.tick % fb_every == 0) {
      fusion::FeedbackMsg fb = backend.emit_feedback(now);
      down.submit(std::move(fb), 0, fb_seq++, now);
    }
    for (fusion::FeedbackMsg& fb : down.deliver(now)) {
      if (fb.robot_valid)
        fusion::correct_localization(est, fb.robot_pose, fb.robot_stamp, now, bp.loc_alpha,
                                     bp.loc_stale);
      if (!opt.anticipation) {
        fb.persons.clear();
        for (auto& a : fb.areas) a.person.reset();
      }
      ctl.set_feedback(fb);
    }

    const nav::LidarScan scan = nav::simulate_lidar(w);
    if (rep.person_visible < 0.0)
      for (int id : walkers)
        if (nav::scan_sees_person(scan, id)) {
          rep.person_visible = now;
          break;
        }

    // Exact odometry: fold the true motion since the last tick into the
    // estimate, then let feedback corrections pull it toward the fused pose.
    est.pose = geom::compose(est.pose, geom::pose_to_frame(prev_true, w.robot.pose));
    prev_true = w.robot.pose;

    const geom::Vec2 ee_disp = w.robot.ee - w.robot.ee_init;
    const task::ControlOutput out =
        ctl.tick(now, est.pose, ee_disp, nav::scan_hit_points(scan));

    if (out.attach) {
      const geom::Vec2 expect =
          out.attach->dock.position() +
          cfg.carry.delta_grasp * geom::heading_vec(out.attach->dock.theta);
      const world::FurnitureObject* pick = nullptr;
      for (const auto& o : w.objects) {
        if (o.cls != out.attach->cls || o.carried_rel) continue;
        if ((o.pose.position() - expect).norm() > kAttachSearchRadius) continue;
        if (!pick || (o.pose.position() - expect).norm() <
                         (pick->pose.position() - expect).norm())
          pick = &o;
      }
      bool ok = false;
      if (pick) {
        const std::optional<int> op_id =
            out.attach->cls == world::ObjectClass::table && cfg.op_script.human_id >= 0
                ? std::optional<int>(cfg.op_script.human_id)
                : std::nullopt;
        ok = world::attach_object(w, pick->id, op_id);
      }
      ctl.notify_attach(ok);
    }

    if (out.place && w.robot.attached_object) {
      const int obj_id = *w.robot.attached_object;
      world::detach_object(w, obj_id);
      const world::FurnitureObject* obj = world::find_object(w, obj_id);
      PlacementRecord rec;
      rec.entry_index = out.place->entry_index;
      rec.object_id = obj_id;
      rec.trans_err = (obj->pose.position() - out.place->target.position()).norm();
      const double dth = geom::angle_diff(obj->pose.theta, out.place->target.theta);
      rec.ang_err = out.place->cls == world::ObjectClass::table
                        ? std::abs(std::remainder(dth, geom::kPi))
                        : std::abs(dth);
      rec.verified = rec.trans_err < cfg.carry.tau_goal && rec.ang_err < kVerifyAngTol;
      if (!rec.verified) {
        ++rep.verify_failures;
        emit("event " + fmt_g17(now) + " placement verification failed entry " +
             std::to_string(rec.entry_index));
      }
      rep.placements.push_back(rec);
      backend.mark_occupied(out.place->entry_index);
    }

    // Collaborator choreography: wait at the staging point for the next
    // table, push toward the robot's goal while the carry is attached.
    if (cfg.op_script.human_id >= 0) {
      if (world::OperatorPolicy* pol = operator_policy(w, cfg.op_script.human_id)) {
        const bool carrying_table =
            w.robot.attached_object &&
            world::find_object(w, *w.robot.attached_object)->cls == world::ObjectClass::table &&
            (ctl.phase() == task::TaskPhase::CarryCompliant ||
             ctl.phase() == task::TaskPhase::DirectApproach);
        if (carrying_table) {
          pol->walk_target.reset();
          if (opt.anticipation) {
            pol->intended_goal = ctl.layout().entries[ctl.active_entry()].target;
          } else if (const task::LayoutEntry* e = first_open_table(ctl.layout())) {
            pol->intended_goal = e->target;
          }
        } else {
          pol->intended_goal.reset();
          if (!cfg.op_script.approach_points.empty()) {
            size_t placed = 0;
            for (const auto& e : ctl.layout().entries)
              if (e.occupied && e.cls == world::ObjectClass::table) ++placed;
            const size_t idx = std::min(placed, cfg.op_script.approach_points.size() - 1);
            pol->walk_target = cfg.op_script.approach_points[idx];
          }
        }
      }
    }

    double tick_safety = -1.0;
    if (!w.humans.empty()) {
      double tick_min = std::numeric_limits<double>::infinity();
      for (const auto& h : w.humans)
        tick_min = std::min(tick_min,
                            nav::safety_distance(w.robot.pose.position(), h.root));
      safety_sum += tick_min;
      ++safety_ticks;
      if (min_safety < 0.0 || tick_min < min_safety) min_safety = tick_min;
      tick_safety = tick_min;
    }

    if (cfg.mission == task::Mission::navigate && rep.first_deviation < 0.0) {
      // The plan leaving the straight line counts, and so does losing the
      // plan altogether (a blocked corridor leaves a halt as the reaction).
      if (had_plan && ctl.current_plan().empty()) rep.first_deviation = now;
      for (const auto& wp : ctl.current_plan()) {
        if (point_segment_distance(wp, cfg.robot_start.position(), cfg.standby.position()) >
            kDeviationTol) {
          rep.first_deviation = now;
          break;
        }
      }
    }
    had_plan = had_plan || !ctl.current_plan().empty();

    {
      std::string line = "tick " + std::to_string(w.tick) + " t " + fmt_g17(now);
      line += " robot " + fmt_g17(w.robot.pose.x) + " " + fmt_g17(w.robot.pose.y) + " " +
              fmt_g17(w.robot.pose.theta);
      line += " est " + fmt_g17(est.pose.x) + " " + fmt_g17(est.pose.y) + " " +
              fmt_g17(est.pose.theta);
      line += " cmd " + fmt_g17(out.cmd.vx) + " " + fmt_g17(out.cmd.vy) + " " +
              fmt_g17(out.cmd.omega);
      line += std::string(" phase ") + task::phase_name(ctl.phase());
      line += " attached " + std::to_string(w.robot.attached_object.value_or(-1));
      line += " safety " + fmt_g17(tick_safety);
      emit(line);
    }

    rep.ticks = w.tick + 1;
    if (out.mission_complete) {
      rep.completed = true;
      rep.duration = now;
      break;
    }
    if (ctl.failed()) {
      rep.failure = ctl.failure();
      rep.duration = now;
      break;
    }

    world::step_world(w, out.cmd);
  }

  if (!rep.completed && rep.failure.empty()) rep.duration = cfg.max_duration;
  rep.min_safety = min_safety;
  rep.avg_safety = safety_ticks > 0 ? safety_sum / safety_ticks : -1.0;
  rep.person_feedback_reads = ctl.person_feedback_reads();

  for (const auto& ev : ctl.events()) emit("event " + fmt_g17(ev.t) + " " + ev.text);
  rep.digest = digest.value();
  rep.digest_hex = digest.hex();
  if (opt.keep_trace) trace += "digest fnv1a " + rep.digest_hex + "\n";
  rep.trace = std::move(trace);
  return rep;
}

double mean_trans_err(const RunReport& r) {
  if (r.placements.empty()) return -1.0;
  double s = 0.0;
  for (const auto& p : r.placements) s += p.trans_err;
  return s / r.placements.size();
}

double mean_ang_err_deg(const RunReport& r) {
  if (r.placements.empty()) return -1.0;
  double s = 0.0;
  for (const auto& p : r.placements) s += p.ang_err;
  return (s / r.placements.size()) * 180.0 / geom::kPi;
}

}  // namespace scenesim::exp

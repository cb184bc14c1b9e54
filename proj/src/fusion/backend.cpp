#include "scenesim/fusion/backend.hpp"

#include <algorithm>
#include <cmath>

#include "scenesim/common/strfmt.hpp"
#include "scenesim/perception/contour.hpp"
#include "scenesim/perception/planar_pose.hpp"
#include "scenesim/perception/quad.hpp"
#include "scenesim/task/pickup.hpp"

namespace scenesim::fusion {

LocResult correct_localization(RobotEstimate& est, const geom::Pose2& external,
                               double external_stamp, double now, double alpha,
                               double stale_age) {
  if (now - external_stamp > stale_age) return LocResult::stale;
  if (!est.initialized) {
    est.initialized = true;
    est.pose = external;
    est.stamp = external_stamp;
    return LocResult::initialized;
  }
  est.pose.x += alpha * (external.x - est.pose.x);
  est.pose.y += alpha * (external.y - est.pose.y);
  est.pose.theta = geom::wrap_angle(est.pose.theta +
                                    alpha * geom::angle_diff(external.theta, est.pose.theta));
  est.stamp = external_stamp;
  return LocResult::applied;
}

std::vector<std::pair<int, int>> associate(const std::vector<AssocEntry>& tracks,
                                           const std::vector<AssocObs>& observations,
                                           double gate) {
  struct Cand {
    double d2;
    int track;
    int obs;
  };
  std::vector<Cand> cands;
  for (size_t ti = 0; ti < tracks.size(); ++ti) {
    for (size_t oi = 0; oi < observations.size(); ++oi) {
      if (tracks[ti].cls != observations[oi].cls) continue;
      const geom::Vec2 d = observations[oi].pos - tracks[ti].pos;
      if (d.norm() > gate) continue;
      const Eigen::Vector2d dv(d.x, d.y);
      cands.push_back({dv.dot(tracks[ti].innov_cov.inverse() * dv), static_cast<int>(ti),
                       static_cast<int>(oi)});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    if (a.track != b.track) return a.track < b.track;
    return a.obs < b.obs;
  });
  std::vector<bool> track_used(tracks.size(), false);
  std::vector<bool> obs_used(observations.size(), false);
  std::vector<std::pair<int, int>> out;
  for (const Cand& c : cands) {
    if (track_used[c.track] || obs_used[c.obs]) continue;
    track_used[c.track] = true;
    obs_used[c.obs] = true;
    out.emplace_back(c.track, c.obs);
  }
  return out;
}

std::string scene_to_wire(const SceneModel& m) {
  std::string s = "S " + fmt_g17(m.stamp) + "\n";
  s += "R " + std::to_string(m.robot.initialized ? 1 : 0);
  if (m.robot.initialized) {
    s += ' ' + fmt_g17(m.robot.pose.x) + ' ' + fmt_g17(m.robot.pose.y) + ' ' +
         fmt_g17(m.robot.pose.theta) + ' ' + fmt_g17(m.robot.stamp);
  }
  s += '\n';
  for (const auto& p : m.persons) {
    s += "H " + std::to_string(p.id);
    for (int i = 0; i < 4; ++i) s += ' ' + fmt_g17(p.state(i));
    s += ' ' + std::to_string(p.keypoints.size());
    for (const auto& k : p.keypoints) s += ' ' + fmt_g17(k.x) + ' ' + fmt_g17(k.y);
    s += '\n';
  }
  for (const auto& o : m.objects) {
    s += "O " + std::to_string(o.id);
    s += o.cls == world::ObjectClass::chair ? " chair" : " table";
    for (int i = 0; i < 3; ++i) s += ' ' + fmt_g17(o.state(i));
    s += '\n';
  }
  return s;
}

Backend::Backend(BackendParams params, task::Layout layout, std::vector<task::PickupArea> areas)
    : params_(params), layout_(std::move(layout)), areas_(std::move(areas)) {}

void Backend::advance_to(double t) {
  if (t <= time_) return;
  const double dt = t - time_;
  for (auto& p : persons_) person_predict(p, dt, params_.person_q);
  for (auto& o : objects_) object_predict(o, dt, params_.object_q);
  time_ = t;
}

// Table poses come from the contour, not the transmitted pose: simplify,
// pick the best 4 corners, refit the edges and solve the rigid alignment
// against the model footprint. Chairs use the transmitted pose directly.
std::optional<geom::Pose2> Backend::object_measurement(const sensors::ObjectObs& obs) {
  if (obs.cls != world::ObjectClass::table) return obs.pose;
  try {
    const std::vector<geom::Vec2> simplified =
        percept::simplify_closed_contour(obs.contour.v, params_.contour_eps);
    const percept::QuadSelection sel = percept::select_four_corners(simplified);
    const std::array<geom::Vec2, 4> refined = percept::refine_quad_edges(sel.corners, obs.contour.v);
    const geom::Polygon2 model = world::object_footprint(world::ObjectClass::table);
    std::array<geom::Vec2, 4> model_corners;
    std::copy_n(model.v.begin(), 4, model_corners.begin());
    const percept::PlanarFit fit = percept::estimate_planar_pose(model_corners, refined, true);
    if (percept::pose_outlier(fit)) {
      ++contour_rejects_;
      return std::nullopt;
    }
    return fit.pose;
  } catch (const std::exception&) {
    ++contour_rejects_;
    return std::nullopt;
  }
}

void Backend::process(const sensors::PerceptMsg& msg) {
  advance_to(msg.stamp);

  if (msg.robot) {
    if (correct_localization(robot_, *msg.robot, msg.stamp, time_, params_.loc_alpha,
                             params_.loc_stale) == LocResult::stale)
      ++stale_robot_msgs_;
  }

  const double r2 = params_.meas_sigma_pos * params_.meas_sigma_pos;

  {
    std::vector<AssocEntry> entries(persons_.size());
    for (size_t i = 0; i < persons_.size(); ++i) {
      entries[i].pos = persons_[i].position();
      entries[i].innov_cov = persons_[i].cov.topLeftCorner<2, 2>() + r2 * Eigen::Matrix2d::Identity();
    }
    std::vector<AssocObs> obs(msg.persons.size());
    for (size_t i = 0; i < msg.persons.size(); ++i) obs[i].pos = msg.persons[i].root;

    std::vector<bool> matched(obs.size(), false);
    for (auto [ti, oi] : associate(entries, obs, params_.person_gate)) {
      matched[oi] = true;
      PersonTrack& t = persons_[ti];
      if (!person_update(t, msg.persons[oi].root, params_.meas_sigma_pos)) ++divergence_resets_;
      t.keypoints = msg.persons[oi].keypoints;
      t.last_update = time_;
      ++t.hits;
    }
    for (size_t oi = 0; oi < obs.size(); ++oi) {
      if (matched[oi]) continue;
      PersonTrack t;
      t.id = next_person_id_++;
      t.state << msg.persons[oi].root.x, msg.persons[oi].root.y, 0.0, 0.0;
      t.cov = Eigen::Vector4d(r2, r2, 1.0, 1.0).asDiagonal();
      t.keypoints = msg.persons[oi].keypoints;
      t.last_update = time_;
      t.hits = 1;
      persons_.push_back(std::move(t));
    }
  }

  {
    std::vector<geom::Pose2> meas;
    std::vector<const sensors::ObjectObs*> srcs;
    for (const auto& o : msg.objects) {
      if (std::optional<geom::Pose2> m = object_measurement(o)) {
        meas.push_back(*m);
        srcs.push_back(&o);
      }
    }
    std::vector<AssocEntry> entries(objects_.size());
    for (size_t i = 0; i < objects_.size(); ++i) {
      entries[i].pos = objects_[i].position();
      entries[i].innov_cov = objects_[i].cov.topLeftCorner<2, 2>() + r2 * Eigen::Matrix2d::Identity();
      entries[i].cls = static_cast<int>(objects_[i].cls);
    }
    std::vector<AssocObs> obs(meas.size());
    for (size_t i = 0; i < meas.size(); ++i) {
      obs[i].pos = {meas[i].x, meas[i].y};
      obs[i].cls = static_cast<int>(srcs[i]->cls);
    }
    std::vector<bool> matched(obs.size(), false);
    for (auto [ti, oi] : associate(entries, obs, params_.object_gate)) {
      matched[oi] = true;
      ObjectTrack& t = objects_[ti];
      if (!object_update(t, meas[oi], params_.meas_sigma_pos, params_.meas_sigma_theta))
        ++divergence_resets_;
      t.last_update = time_;
      ++t.hits;
    }
    for (size_t oi = 0; oi < obs.size(); ++oi) {
      if (matched[oi]) continue;
      ObjectTrack t;
      t.id = next_object_id_++;
      t.cls = srcs[oi]->cls;
      t.state << meas[oi].x, meas[oi].y, meas[oi].theta;
      t.cov = Eigen::Vector3d(r2, r2, params_.meas_sigma_theta * params_.meas_sigma_theta)
                  .asDiagonal();
      t.last_update = time_;
      t.hits = 1;
      objects_.push_back(std::move(t));
    }
  }
}

void Backend::prune(double now) {
  advance_to(now);
  const double cutoff = now - params_.death_age;
  std::erase_if(persons_, [&](const PersonTrack& t) { return t.last_update < cutoff; });
  std::erase_if(objects_, [&](const ObjectTrack& t) { return t.last_update < cutoff; });
}

SceneModel Backend::snapshot() const {
  SceneModel m;
  m.stamp = time_;
  m.robot = robot_;
  for (const auto& p : persons_)
    if (p.hits >= params_.birth_hits) m.persons.push_back(p);
  for (const auto& o : objects_)
    if (o.hits >= params_.birth_hits) m.objects.push_back(o);
  return m;
}

void Backend::mark_occupied(size_t entry_index) {
  if (entry_index >= layout_.entries.size())
    throw std::out_of_range("layout entry index out of range");
  layout_.entries[entry_index].occupied = true;
}

FeedbackMsg Backend::emit_feedback(double now) {
  advance_to(now);
  const SceneModel m = snapshot();

  FeedbackMsg fb;
  fb.seq = feedback_seq_++;
  fb.stamp = now;
  fb.robot_valid = m.robot.initialized;
  fb.robot_pose = m.robot.pose;
  fb.robot_stamp = m.robot.stamp;

  std::vector<PersonSnapshot> everyone;
  everyone.reserve(m.persons.size());
  for (const auto& p : m.persons) {
    PersonSnapshot s;
    s.id = p.id;
    s.root = p.position();
    s.velocity = p.velocity();
    s.keypoints = p.keypoints;
    everyone.push_back(std::move(s));
  }
  if (fb.robot_valid) {
    const geom::Vec2 rc{fb.robot_pose.x, fb.robot_pose.y};
    for (const auto& s : everyone)
      if ((s.root - rc).norm() <= params_.person_feedback_range) fb.persons.push_back(s);
  }

  for (const auto& o : m.objects) {
    ObjectSnapshot s;
    s.id = o.id;
    s.cls = o.cls;
    s.pose = o.pose();
    fb.objects.push_back(s);
  }

  fb.layout = layout_.entries;

  for (const auto& area : areas_) {
    AreaState st;
    st.area_id = area.id;
    for (const auto& t : task::select_tables(fb.objects, area)) st.table_ids.push_back(t.id);
    st.person = task::select_person(everyone, area, params_.area_person_range);
    fb.areas.push_back(std::move(st));
  }
  return fb;
}

}  // namespace scenesim::fusion

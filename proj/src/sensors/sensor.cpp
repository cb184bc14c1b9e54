#include "scenesim/sensors/sensor.hpp"

#include <stdexcept>

#include "scenesim/common/rng.hpp"
#include "scenesim/geometry/raycast.hpp"
#include "scenesim/perception/planar_pose.hpp"

namespace scenesim::sensors {

bool visible(const SensorNode& node, const geom::Grid2& map, geom::Vec2 target) {
  const geom::Vec2 eye{node.pose.x, node.pose.y};
  const geom::Vec2 d = target - eye;
  const double dist = d.norm();
  if (dist > node.range) return false;
  if (dist > 1e-12) {
    const double bearing = std::atan2(d.y, d.x);
    if (std::abs(geom::angle_diff(bearing, node.pose.theta)) > node.fov_halfangle) return false;
  }
  // A body dragged past the map edge (an operator swung wide during a carry)
  // is outside the node's occupancy knowledge; treat it as unobservable.
  if (!map.world_in_bounds(target)) return false;
  return geom::line_of_sight(map, eye, target);
}

bool emits_at_tick(const SensorNode& node, long tick) {
  if (node.rate <= 0 || world::kTickRate % node.rate != 0)
    throw std::invalid_argument("bad sensor rate");
  const long period = world::kTickRate / node.rate;
  return tick % period == 0;
}

namespace {

geom::Vec2 jitter(RngStream& rng, geom::Vec2 p, double sigma) {
  return {p.x + rng.gauss(sigma), p.y + rng.gauss(sigma)};
}

// Noisy corners, then two interior points at 1/3 and 2/3 of every noisy edge
// so the synthetic contour has the collinear runs a real boundary trace would.
geom::Polygon2 synth_contour(RngStream& rng, const geom::Polygon2& footprint, double sigma) {
  std::vector<geom::Vec2> noisy;
  noisy.reserve(footprint.v.size());
  for (const auto& c : footprint.v) noisy.push_back(jitter(rng, c, sigma));
  geom::Polygon2 out;
  out.v.reserve(noisy.size() * 3);
  for (size_t i = 0; i < noisy.size(); ++i) {
    const geom::Vec2 a = noisy[i];
    const geom::Vec2 b = noisy[(i + 1) % noisy.size()];
    const geom::Vec2 e = b - a;
    out.v.push_back(a);
    out.v.push_back({a.x + e.x / 3.0, a.y + e.y / 3.0});
    out.v.push_back({a.x + e.x * 2.0 / 3.0, a.y + e.y * 2.0 / 3.0});
  }
  return out;
}

}  // namespace

PerceptMsg observe(const SensorNode& node, const world::WorldState& w, uint64_t run_seed) {
  PerceptMsg msg;
  msg.node_id = node.id;
  msg.stamp = w.time;
  RngStream rng = substream(run_seed, tag64("sensor"), static_cast<uint64_t>(node.id),
                            static_cast<uint64_t>(w.tick));

  for (const auto& h : w.humans) {
    if (!visible(node, w.static_map, h.root)) continue;
    if (!rng.bernoulli(node.detection_prob)) continue;
    PersonObs obs;
    obs.root = jitter(rng, h.root, node.noise_sigma_pos);
    for (const auto& kp : world::human_keypoints(h))
      obs.keypoints.push_back(jitter(rng, kp, node.noise_sigma_pos));
    msg.persons.push_back(std::move(obs));
  }

  for (const auto& o : w.objects) {
    if (!visible(node, w.static_map, {o.pose.x, o.pose.y})) continue;
    if (!rng.bernoulli(node.detection_prob)) continue;
    ObjectObs obs;
    obs.cls = o.cls;
    obs.pose.x = o.pose.x + rng.gauss(node.noise_sigma_pos);
    obs.pose.y = o.pose.y + rng.gauss(node.noise_sigma_pos);
    const double th = o.pose.theta + rng.gauss(node.noise_sigma_theta);
    // A table is half-turn symmetric, so its yaw is only observable mod pi.
    obs.pose.theta = o.cls == world::ObjectClass::table ? percept::fold_halfturn_angle(th)
                                                        : geom::wrap_angle(th);
    obs.contour = synth_contour(rng, world::object_footprint_world(o), node.noise_sigma_pos);
    msg.objects.push_back(std::move(obs));
  }

  const geom::Vec2 rc{w.robot.pose.x, w.robot.pose.y};
  if (visible(node, w.static_map, rc) && rng.bernoulli(node.detection_prob)) {
    geom::Pose2 rp;
    rp.x = w.robot.pose.x + rng.gauss(node.noise_sigma_pos);
    rp.y = w.robot.pose.y + rng.gauss(node.noise_sigma_pos);
    rp.theta = geom::wrap_angle(w.robot.pose.theta + rng.gauss(node.noise_sigma_theta));
    msg.robot = rp;
  }
  return msg;
}

}  // namespace scenesim::sensors

#include "scenesim/exp/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "scenesim/common/rng.hpp"
#include "scenesim/geometry/polygon2.hpp"

namespace scenesim::exp {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error("scenario: " + what); }

geom::Vec2 vec2_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) bad(field + " must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

geom::Pose2 pose_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) bad(field + " must be [x, y, theta]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

world::ObjectClass class_of(const json& j, const std::string& field) {
  const std::string s = j.get<std::string>();
  if (s == "table") return world::ObjectClass::table;
  if (s == "chair") return world::ObjectClass::chair;
  bad(field + " must be \"table\" or \"chair\"");
}

geom::Grid2 map_of(const json& j, const std::string& base_dir) {
  if (j.contains("file")) {
    std::string path = j["file"].get<std::string>();
    if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
    try {
      return geom::load_grid(path);
    } catch (const std::exception& e) {
      bad(std::string("map file: ") + e.what());
    }
  }
  if (!j.contains("build")) bad("map needs \"file\" or \"build\"");
  const json& b = j["build"];
  const double res = b.value("resolution", 0.1);
  const geom::Vec2 origin = b.contains("origin") ? vec2_of(b["origin"], "map.origin") : geom::Vec2{};
  const int w = b.value("width", 0), h = b.value("height", 0);
  if (res <= 0.0 || w <= 0 || h <= 0) bad("map build dimensions");
  geom::Grid2 g = geom::make_grid(res, origin, w, h);
  if (b.value("border", true)) {
    const geom::Vec2 hi{origin.x + w * res, origin.y + h * res};
    geom::fill_rect(g, origin, {hi.x, origin.y + res}, geom::kCellLethal);
    geom::fill_rect(g, {origin.x, hi.y - res}, hi, geom::kCellLethal);
    geom::fill_rect(g, origin, {origin.x + res, hi.y}, geom::kCellLethal);
    geom::fill_rect(g, {hi.x - res, origin.y}, hi, geom::kCellLethal);
  }
  for (const auto& r : b.value("walls", json::array())) {
    if (!r.is_array() || r.size() != 4) bad("map.walls entries must be [x0, y0, x1, y1]");
    geom::fill_rect(g, {r[0].get<double>(), r[1].get<double>()},
                    {r[2].get<double>(), r[3].get<double>()}, geom::kCellLethal);
  }
  return g;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    bad(std::string("parse error: ") + e.what());
  }

  ScenarioConfig cfg;
  if (!j.contains("id")) bad("missing id");
  cfg.id = j["id"].get<std::string>();
  if (!j.contains("map")) bad("missing map");
  cfg.map = map_of(j["map"], base_dir);
  cfg.max_duration = j.value("max_duration", 60.0);
  if (cfg.max_duration <= 0.0) bad("max_duration must be positive");

  const std::string mission = j.value("mission", "navigate");
  if (mission == "navigate")
    cfg.mission = task::Mission::navigate;
  else if (mission == "furnish")
    cfg.mission = task::Mission::furnish;
  else
    bad("mission must be \"navigate\" or \"furnish\"");

  if (!j.contains("robot")) bad("missing robot");
  cfg.robot_start = pose_of(j["robot"]["start"], "robot.start");
  cfg.standby = j["robot"].contains("standby") ? pose_of(j["robot"]["standby"], "robot.standby")
                                               : cfg.robot_start;
  if (!cfg.map.world_in_bounds(cfg.robot_start.position())) bad("robot.start outside map");

  for (const auto& s : j.value("sensors", json::array())) {
    sensors::SensorNode n;
    n.id = s.at("id").get<int>();
    n.pose = pose_of(s.at("pose"), "sensor.pose");
    n.fov_halfangle = s.value("fov_halfangle", n.fov_halfangle);
    n.range = s.value("range", n.range);
    n.rate = s.value("rate", n.rate);
    n.noise_sigma_pos = s.value("sigma_pos", n.noise_sigma_pos);
    n.noise_sigma_theta = s.value("sigma_theta", n.noise_sigma_theta);
    n.detection_prob = s.value("detection", n.detection_prob);
    if (world::kTickRate % n.rate != 0) bad("sensor rate must divide the tick rate");
    cfg.sensor_nodes.push_back(n);
  }

  for (const auto& h : j.value("humans", json::array())) {
    HumanSpec spec;
    spec.id = h.at("id").get<int>();
    spec.start = vec2_of(h.at("start"), "human.start");
    const std::string kind = h.value("policy", "idle");
    if (kind == "idle") {
      spec.kind = HumanSpec::Kind::idle;
    } else if (kind == "waypoints") {
      spec.kind = HumanSpec::Kind::waypoints;
      for (const auto& wp : h.at("waypoints")) spec.waypoints.push_back(vec2_of(wp, "waypoint"));
      if (spec.waypoints.empty()) bad("waypoint human without waypoints");
    } else if (kind == "collaborator") {
      spec.kind = HumanSpec::Kind::collaborator;
    } else {
      bad("human.policy must be idle, waypoints or collaborator");
    }
    spec.speed = h.value("speed", 1.2);
    spec.start_time = h.value("start_time", 0.0);
    spec.start_jitter = h.value("start_jitter", 0.0);
    if (h.contains("speed_range")) {
      spec.speed_lo = h["speed_range"][0].get<double>();
      spec.speed_hi = h["speed_range"][1].get<double>();
      if (spec.speed_lo > spec.speed_hi || spec.speed_lo <= 0.0) bad("human.speed_range");
    }
    cfg.humans.push_back(spec);
  }

  for (const auto& o : j.value("objects", json::array())) {
    ObjectSpec spec;
    spec.id = o.at("id").get<int>();
    spec.cls = class_of(o.at("class"), "object.class");
    spec.pose = pose_of(o.at("pose"), "object.pose");
    if (!cfg.map.world_in_bounds(spec.pose.position())) bad("object pose outside map");
    cfg.objects.push_back(spec);
  }

  for (const auto& a : j.value("areas", json::array())) {
    geom::Polygon2 poly;
    for (const auto& v : a.at("polygon")) poly.v.push_back(vec2_of(v, "area vertex"));
    if (poly.v.size() < 3) bad("area polygon needs >= 3 vertices");
    for (const auto& v : poly.v)
      if (!cfg.map.world_in_bounds(v)) bad("area polygon outside map");
    cfg.areas.push_back(task::make_pickup_area(
        a.at("id").get<int>(), poly,
        a.contains("class") ? class_of(a["class"], "area.class") : world::ObjectClass::table));
  }

  for (const auto& e : j.value("layout", json::array())) {
    task::LayoutEntry entry;
    entry.cls = class_of(e.at("class"), "layout.class");
    entry.target = pose_of(e.at("target"), "layout.target");
    if (entry.cls == world::ObjectClass::table &&
        (entry.target.theta < 0.0 || entry.target.theta >= geom::kPi))
      bad("table layout target theta must lie in [0, pi)");
    if (!cfg.map.world_in_bounds(entry.target.position())) bad("layout target outside map");
    cfg.layout.entries.push_back(entry);
  }

  if (j.contains("carry")) {
    const json& c = j["carry"];
    auto& p = cfg.carry;
    p.tau_ee = c.value("tau_ee", p.tau_ee);
    p.tau_goal = c.value("tau_goal", p.tau_goal);
    p.tau_vel = c.value("tau_vel", p.tau_vel);
    p.tau_p = c.value("tau_p", p.tau_p);
    p.tau_direct = c.value("tau_direct", p.tau_direct);
    p.delta_grasp = c.value("delta_grasp", p.delta_grasp);
    p.k_e_lin = c.value("k_e_lin", p.k_e_lin);
    p.k_e_rot = c.value("k_e_rot", p.k_e_rot);
    p.k_a_lin = c.value("k_a_lin", p.k_a_lin);
    p.k_a_rot = c.value("k_a_rot", p.k_a_rot);
    p.k_direct = c.value("k_direct", p.k_direct);
    p.v_max = c.value("v_max", p.v_max);
    p.w_max = c.value("w_max", p.w_max);
  }
  try {
    task::validate(cfg.carry);
  } catch (const std::exception& e) {
    bad(std::string("carry: ") + e.what());
  }

  if (j.contains("anticipation")) {
    const json& a = j["anticipation"];
    auto& p = cfg.anticipation;
    p.t_pred = a.value("t_pred", p.t_pred);
    p.t_step = a.value("t_step", p.t_step);
    p.inflation_radius = a.value("inflation_radius", p.inflation_radius);
    p.person_range = a.value("person_range", p.person_range);
    p.min_keypoints = a.value("min_keypoints", p.min_keypoints);
  }
  try {
    nav::validate(cfg.anticipation, world::kRobotFootprintRadius);
  } catch (const std::exception& e) {
    bad(std::string("anticipation: ") + e.what());
  }

  if (j.contains("channel")) {
    const json& c = j["channel"];
    cfg.channel.latency = c.value("latency", cfg.channel.latency);
    cfg.channel.jitter = c.value("jitter", cfg.channel.jitter);
    cfg.channel.drop_prob = c.value("drop", cfg.channel.drop_prob);
    if (cfg.channel.latency < 0.0 || cfg.channel.jitter < 0.0 || cfg.channel.drop_prob < 0.0 ||
        cfg.channel.drop_prob >= 1.0)
      bad("channel parameters");
  }

  cfg.input_delay = j.value("input_delay", cfg.input_delay);
  cfg.off_side_sign = j.value("off_side_sign", cfg.off_side_sign) >= 0.0 ? 1.0 : -1.0;
  cfg.nav_speed = j.value("nav_speed", cfg.nav_speed);
  if (cfg.nav_speed <= 0.0 || cfg.nav_speed > world::kRobotVMax) bad("nav_speed");

  if (j.contains("operator_script")) {
    const json& s = j["operator_script"];
    cfg.op_script.human_id = s.at("human_id").get<int>();
    for (const auto& p : s.value("approach_points", json::array()))
      cfg.op_script.approach_points.push_back(vec2_of(p, "approach point"));
    bool found = false;
    for (const auto& h : cfg.humans)
      if (h.id == cfg.op_script.human_id && h.kind == HumanSpec::Kind::collaborator) found = true;
    if (!found) bad("operator_script.human_id is not a collaborator");
  }

  if (cfg.mission == task::Mission::furnish) {
    if (cfg.layout.entries.empty()) bad("furnish mission without layout");
    bool any_table = false;
    for (const auto& e : cfg.layout.entries)
      if (e.cls == world::ObjectClass::table) any_table = true;
    if (any_table && cfg.op_script.human_id < 0) bad("table layout without a collaborator script");
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string base_dir;
  const auto slash = path.find_last_of('/');
  if (slash != std::string::npos) base_dir = path.substr(0, slash);
  ScenarioConfig cfg = parse_scenario(ss.str(), base_dir);
  cfg.source_path = path;
  return cfg;
}

world::WorldState make_world(const ScenarioConfig& cfg, uint64_t seed) {
  world::WorldState w;
  w.static_map = cfg.map;
  w.robot.pose = cfg.robot_start;

  for (const auto& spec : cfg.humans) {
    world::HumanAgent agent;
    agent.id = spec.id;
    agent.root = spec.start;
    switch (spec.kind) {
      case HumanSpec::Kind::idle:
        agent.policy = world::IdlePolicy{};
        break;
      case HumanSpec::Kind::waypoints: {
        world::WaypointPolicy pol;
        pol.waypoints = spec.waypoints;
        RngStream rng = substream(seed, tag64("scenario"), static_cast<uint64_t>(spec.id));
        pol.start_time = spec.start_time;
        if (spec.start_jitter > 0.0)
          pol.start_time += rng.uniform(-spec.start_jitter, spec.start_jitter);
        pol.start_time = std::max(0.0, pol.start_time);
        pol.speed = spec.speed_hi > 0.0 ? rng.uniform(spec.speed_lo, spec.speed_hi) : spec.speed;
        agent.policy = pol;
        break;
      }
      case HumanSpec::Kind::collaborator: {
        world::OperatorPolicy pol;
        pol.walk_speed = spec.speed;
        agent.policy = pol;
        break;
      }
    }
    w.humans.push_back(agent);
  }

  for (const auto& spec : cfg.objects) {
    world::FurnitureObject o;
    o.id = spec.id;
    o.cls = spec.cls;
    o.pose = spec.pose;
    w.objects.push_back(o);
  }
  return w;
}

}  // namespace scenesim::exp

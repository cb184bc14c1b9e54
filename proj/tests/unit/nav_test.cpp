#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "scenesim/common/rng.hpp"
#include "scenesim/nav/anticipation.hpp"
#include "scenesim/nav/costmap.hpp"
#include "scenesim/nav/lidar.hpp"
#include "scenesim/nav/planner.hpp"
#include "support/oracles.hpp"

using namespace scenesim;

namespace {

fusion::PersonSnapshot snap_at(int id, geom::Vec2 root, geom::Vec2 vel, int n_kp) {
  fusion::PersonSnapshot p;
  p.id = id;
  p.root = root;
  p.velocity = vel;
  for (int i = 0; i < n_kp; ++i)
    p.keypoints.push_back({root.x + 0.01 * i, root.y - 0.01 * i});
  return p;
}

// Literal step-through of the anticipation pseudocode, kept structurally
// different from the library (per-point loop, explicit trig).
std::vector<geom::Vec2> cloud_oracle(const std::vector<fusion::PersonSnapshot>& persons,
                                     const geom::Pose2& robot,
                                     const nav::AnticipationParams& prm) {
  std::vector<geom::Vec2> pts;
  const double c = std::cos(robot.theta), s = std::sin(robot.theta);
  for (const auto& p : persons) {
    const double vx = c * p.velocity.x + s * p.velocity.y;
    const double vy = -s * p.velocity.x + c * p.velocity.y;
    for (const auto& kp : p.keypoints) {
      const double lx = c * (kp.x - robot.x) + s * (kp.y - robot.y);
      const double ly = -s * (kp.x - robot.x) + c * (kp.y - robot.y);
      pts.push_back({lx, ly});
      for (int i = 0; static_cast<double>(i) * prm.t_step <= prm.t_pred + 1e-9; ++i) {
        const double dt = i * prm.t_step;
        pts.push_back({lx + dt * vx, ly + dt * vy});
      }
    }
  }
  std::sort(pts.begin(), pts.end(),
            [](auto a, auto b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](auto a, auto b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  return pts;
}

}  // namespace

TEST_SUITE("nav") {
  TEST_CASE("outlier filter drops far and skimpy tracks") {
    const geom::Pose2 robot{0, 0, 0};
    nav::AnticipationParams prm;
    std::vector<fusion::PersonSnapshot> persons;
    persons.push_back(snap_at(1, {7.0, 0.0}, {0, 0}, 17));  // too far
    persons.push_back(snap_at(2, {3.0, 0.0}, {0, 0}, 17));  // kept
    persons.push_back(snap_at(3, {1.0, 1.0}, {0, 0}, 4));   // too few keypoints
    persons.push_back(snap_at(4, {0.0, 5.9}, {0, 0}, 5));   // boundary kept
    const auto kept = nav::filter_outlier(persons, robot, prm);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].id == 2);
    CHECK(kept[1].id == 4);
  }

  TEST_CASE("outlier filter equals the brute-force predicate on random tracks") {
    RngStream rng = substream(21, tag64("navfilter"), 0, 0);
    const geom::Pose2 robot{2.0, -1.0, 0.7};
    nav::AnticipationParams prm;
    std::vector<fusion::PersonSnapshot> persons;
    for (int i = 0; i < 20; ++i)
      persons.push_back(snap_at(i, {rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)}, {0, 0},
                                static_cast<int>(rng.uniform(0.0, 18.0))));
    const auto kept = nav::filter_outlier(persons, robot, prm);
    std::vector<int> expect;
    for (const auto& p : persons)
      if ((p.root - geom::Vec2{2.0, -1.0}).norm() <= 6.0 &&
          static_cast<int>(p.keypoints.size()) >= 5)
        expect.push_back(p.id);
    REQUIRE(kept.size() == expect.size());
    for (size_t i = 0; i < kept.size(); ++i) CHECK(kept[i].id == expect[i]);
  }

  TEST_CASE("standing person's cloud collapses to the current projections") {
    fusion::PersonSnapshot p = snap_at(1, {3.0, 1.0}, {0.0, 0.0}, 17);
    const auto cloud = nav::build_virtual_cloud({p}, {0, 0, 0}, {});
    CHECK(cloud.size() == 17);  // every extrapolation replica deduplicated away
  }

  TEST_CASE("walking root is replicated every half second out to two seconds") {
    fusion::PersonSnapshot p;
    p.id = 1;
    p.root = {2.0, 0.0};
    p.velocity = {-1.0, 0.0};
    p.keypoints = {{2.0, 0.0}};  // root only, to read the arithmetic directly
    const auto cloud = nav::build_virtual_cloud({p}, {0, 0, 0}, {});
    std::vector<double> xs;
    for (const auto& c : cloud) {
      CHECK(c.y == 0.0);
      xs.push_back(c.x);
    }
    std::sort(xs.begin(), xs.end());
    REQUIRE(xs.size() == 5);
    CHECK(xs[0] == 0.0);
    CHECK(xs[1] == 0.5);
    CHECK(xs[2] == 1.0);
    CHECK(xs[3] == 1.5);
    CHECK(xs[4] == 2.0);
  }

  TEST_CASE("cloud equals an independent pseudocode evaluation") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
      RngStream rng = substream(seed, tag64("cloud"), 0, 0);
      const geom::Pose2 robot{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                              rng.uniform(-geom::kPi, geom::kPi)};
      std::vector<fusion::PersonSnapshot> persons;
      const int np = 1 + static_cast<int>(rng.uniform(0.0, 2.999));
      for (int i = 0; i < np; ++i) {
        fusion::PersonSnapshot p;
        p.id = i;
        p.root = {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        p.velocity = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        const int nk = 5 + static_cast<int>(rng.uniform(0.0, 12.9));
        for (int k = 0; k < nk; ++k)
          p.keypoints.push_back({p.root.x + rng.gauss(0.2), p.root.y + rng.gauss(0.2)});
        persons.push_back(std::move(p));
      }
      const auto got = nav::build_virtual_cloud(persons, robot, {});
      const auto want = cloud_oracle(persons, robot, {});
      REQUIRE(got.size() == want.size());
      for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].x == doctest::Approx(want[i].x).epsilon(1e-12));
        CHECK(got[i].y == doctest::Approx(want[i].y).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("anticipation parameter validation") {
    nav::AnticipationParams prm;
    CHECK_NOTHROW(nav::validate(prm, world::kRobotFootprintRadius));
    prm.t_step = 0.0;
    CHECK_THROWS_WITH_AS(nav::validate(prm, 0.27), "bad anticipation horizon",
                         std::invalid_argument);
    prm.t_step = 3.0;
    CHECK_THROWS_AS(nav::validate(prm, 0.27), std::invalid_argument);
    prm.t_step = 0.5;
    prm.inflation_radius = 0.2;
    CHECK_THROWS_WITH_AS(nav::validate(prm, 0.27), "inflation below robot radius",
                         std::invalid_argument);
  }

  TEST_CASE("empty scan and cloud leave combined equal to the static layer") {
    geom::Grid2 static_map = geom::make_grid(0.05, {0, 0}, 100, 100);
    geom::fill_rect(static_map, {2.0, 2.0}, {3.0, 2.2}, geom::kCellLethal);
    nav::CostMap cm = nav::make_costmap(static_map, world::kRobotFootprintRadius);
    nav::rebuild_onboard(cm, {}, 0.35);
    nav::rebuild_virtual(cm, {}, 0.35);
    nav::recombine(cm);
    CHECK(cm.combined.cells == cm.static_layer.cells);
    // the static layer grew an inscribed margin around the wall
    const auto at = [&](double x, double y) { return cm.static_layer(cm.static_layer.world_to_cell({x, y}).ix, cm.static_layer.world_to_cell({x, y}).iy); };
    CHECK(at(2.5, 2.1) == geom::kCellLethal);
    CHECK(at(2.5, 2.4) == geom::kCellInscribed);
    CHECK(at(2.5, 3.0) == geom::kCellFree);
  }

  TEST_CASE("a single cloud point stamps exactly its inflation disk") {
    geom::Grid2 static_map = geom::make_grid(0.05, {-2.0, -2.0}, 100, 100);
    nav::CostMap cm = nav::make_costmap(static_map, 0.27);
    nav::rebuild_virtual(cm, {{1.0, 0.0}}, 0.35);
    nav::recombine(cm);
    for (int iy = 0; iy < cm.combined.height; ++iy) {
      for (int ix = 0; ix < cm.combined.width; ++ix) {
        const double d = (cm.combined.cell_center({ix, iy}) - geom::Vec2{1.0, 0.0}).norm();
        if (d <= 0.35) CHECK(cm.combined(ix, iy) == geom::kCellLethal);
        if (d >= 0.45) CHECK(cm.combined(ix, iy) == geom::kCellFree);
      }
    }
  }

  TEST_CASE("combined is the cell-wise max of the layers on random inputs") {
    RngStream rng = substream(4, tag64("layers"), 0, 0);
    geom::Grid2 static_map = geom::make_grid(0.05, {0, 0}, 80, 80);
    for (int i = 0; i < 40; ++i)
      static_map.cells[static_cast<size_t>(rng.uniform(0.0, 6399.0))] =
          static_cast<uint8_t>(rng.uniform(0.0, 255.0));
    nav::CostMap cm = nav::make_costmap(static_map, 0.27);
    std::vector<geom::Vec2> scan_pts, cloud_pts;
    for (int i = 0; i < 15; ++i) {
      scan_pts.push_back({rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)});
      cloud_pts.push_back({rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)});
    }
    nav::rebuild_onboard(cm, scan_pts, 0.35);
    nav::rebuild_virtual(cm, cloud_pts, 0.35);
    nav::recombine(cm);
    for (size_t i = 0; i < cm.combined.cells.size(); ++i) {
      const uint8_t want = std::max({cm.static_layer.cells[i], cm.onboard.cells[i],
                                     cm.virtual_layer.cells[i]});
      REQUIRE(cm.combined.cells[i] == want);
    }
  }

  TEST_CASE("adding a person never shrinks the virtual lethal set") {
    geom::Grid2 static_map = geom::make_grid(0.05, {-5.0, -5.0}, 200, 200);
    nav::CostMap cm = nav::make_costmap(static_map, 0.27);
    std::vector<fusion::PersonSnapshot> persons;
    persons.push_back(snap_at(1, {1.0, 1.0}, {0.5, -0.2}, 17));
    const auto cloud1 = nav::build_virtual_cloud(persons, {0, 0, 0}, {});
    nav::rebuild_virtual(cm, cloud1, 0.35);
    const auto before = cm.virtual_layer.cells;
    persons.push_back(snap_at(2, {-2.0, 2.0}, {0.0, 0.8}, 17));
    const auto cloud2 = nav::build_virtual_cloud(persons, {0, 0, 0}, {});
    nav::rebuild_virtual(cm, cloud2, 0.35);
    for (size_t i = 0; i < before.size(); ++i)
      if (before[i] == geom::kCellLethal) CHECK(cm.virtual_layer.cells[i] == geom::kCellLethal);
  }

  TEST_CASE("lidar in an empty world returns max range everywhere") {
    world::WorldState w;
    w.static_map = geom::make_grid(0.05, {0, 0}, 400, 400);  // 20 x 20 m
    w.robot.pose = {10.0, 10.0, 0.3};
    const nav::LidarScan scan = nav::simulate_lidar(w);
    REQUIRE(scan.returns.size() == 440);
    for (const auto& r : scan.returns) {
      CHECK(r.kind == kern::HitKind::none);
      CHECK(r.range == 5.6);
    }
    CHECK(nav::scan_hit_points(scan).empty());
  }

  TEST_CASE("lidar ranges a wall dead ahead at its distance") {
    world::WorldState w;
    w.static_map = geom::make_grid(0.05, {0, 0}, 200, 200);
    geom::fill_rect(w.static_map, {4.0, 0.0}, {4.3, 10.0}, geom::kCellLethal);
    w.robot.pose = {2.0, 5.0, 0.0};
    const nav::LidarScan scan = nav::simulate_lidar(w);
    const double mid = scan.returns[219].range;  // closest-to-forward ray
    CHECK(mid > 2.0 - 0.08);
    CHECK(mid < 2.0 + 0.08);
  }

  TEST_CASE("lidar only sees the person once they clear the wall") {
    world::WorldState w;
    w.static_map = geom::make_grid(0.05, {0, 0}, 200, 200);
    geom::fill_rect(w.static_map, {4.0, 0.0}, {4.25, 4.0}, geom::kCellLethal);
    w.robot.pose = {2.0, 2.0, 0.0};
    world::HumanAgent h;
    h.id = 9;
    h.root = {6.0, 2.0};  // straight behind the wall
    w.humans.push_back(h);
    CHECK_FALSE(nav::scan_sees_person(nav::simulate_lidar(w), 9));
    w.humans[0].root = {5.0, 5.5};  // past the wall's end, clear line
    CHECK(nav::scan_sees_person(nav::simulate_lidar(w), 9));
    // oracle cross-check: plain grid line of sight from the robot
    CHECK(geom::line_of_sight(w.static_map, {2.0, 2.0}, {5.0, 5.5}));
  }

  TEST_CASE("carried furniture is excluded from the scan") {
    world::WorldState w;
    w.static_map = geom::make_grid(0.05, {0, 0}, 200, 200);
    w.robot.pose = {5.0, 5.0, 0.0};
    world::FurnitureObject t;
    t.id = 3;
    t.cls = world::ObjectClass::table;
    t.pose = {5.9, 5.0, 0.0};
    w.objects.push_back(t);
    nav::LidarScan scan = nav::simulate_lidar(w);
    bool saw_table = false;
    for (const auto& r : scan.returns)
      if (r.kind == kern::HitKind::segment && r.id == 3) saw_table = true;
    CHECK(saw_table);
    w.objects[0].carried_rel = geom::Pose2{0.9, 0.0, 0.0};
    scan = nav::simulate_lidar(w);
    for (const auto& r : scan.returns) CHECK(r.kind == kern::HitKind::none);
  }

  TEST_CASE("straight-line plan across an empty map is near-Euclidean") {
    geom::Grid2 g = geom::make_grid(0.05, {0, 0}, 200, 200);
    const auto plan = nav::plan_path(g, {1.0, 1.0}, {9.0, 9.0});
    REQUIRE(plan.waypoints.size() >= 2);
    const double euclid = (geom::Vec2{9.0, 9.0} - geom::Vec2{1.0, 1.0}).norm();
    CHECK(plan.cost >= euclid - 0.075);
    CHECK(plan.cost <= euclid + 0.075);
    CHECK((plan.waypoints.front() - geom::Vec2{1.0, 1.0}).norm() < 0.05);
    CHECK((plan.waypoints.back() - geom::Vec2{9.0, 9.0}).norm() < 0.05);
  }

  TEST_CASE("path through a gap matches the Dijkstra oracle cost") {
    geom::Grid2 g = geom::make_grid(0.05, {0, 0}, 160, 160);
    geom::fill_rect(g, {4.0, 0.0}, {4.1, 3.5}, geom::kCellLethal);
    geom::fill_rect(g, {4.0, 4.5}, {4.1, 8.0}, geom::kCellLethal);
    const auto plan = nav::plan_path(g, {2.0, 2.0}, {6.0, 6.0});
    const auto oracle = oracles::dijkstra_cost(g, g.world_to_cell({2.0, 2.0}),
                                                   g.world_to_cell({6.0, 6.0}),
                                                   nav::kCellCostWeight);
    REQUIRE(oracle.has_value());
    CHECK(plan.cost == doctest::Approx(*oracle).epsilon(1e-12));
    // and actually goes through the gap
    bool through_gap = false;
    for (const auto& wpt : plan.waypoints)
      if (wpt.x > 3.9 && wpt.x < 4.2 && wpt.y > 3.5 && wpt.y < 4.5) through_gap = true;
    CHECK(through_gap);
  }

  TEST_CASE("A* equals Dijkstra on random costmaps") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
      RngStream rng = substream(seed, tag64("astar"), 0, 0);
      const int w = 30 + static_cast<int>(rng.uniform(0.0, 50.0));
      const int h = 30 + static_cast<int>(rng.uniform(0.0, 50.0));
      geom::Grid2 g = geom::make_grid(0.05, {0, 0}, w, h);
      for (auto& c : g.cells) {
        const double u = rng.uniform(0.0, 1.0);
        if (u < 0.15)
          c = geom::kCellLethal;
        else if (u < 0.35)
          c = static_cast<uint8_t>(rng.uniform(1.0, 252.0));
      }
      const geom::GridIndex s{static_cast<int>(rng.uniform(0.0, w - 1.0)),
                              static_cast<int>(rng.uniform(0.0, h - 1.0))};
      const geom::GridIndex t{static_cast<int>(rng.uniform(0.0, w - 1.0)),
                              static_cast<int>(rng.uniform(0.0, h - 1.0))};
      g.set(s.ix, s.iy, geom::kCellFree);
      g.set(t.ix, t.iy, geom::kCellFree);
      const auto oracle =
          oracles::dijkstra_cost(g, s, t, nav::kCellCostWeight);
      try {
        const auto plan = nav::plan_path(g, g.cell_center(s), g.cell_center(t));
        REQUIRE(oracle.has_value());
        CHECK(plan.cost == doctest::Approx(*oracle).epsilon(1e-9));
      } catch (const std::runtime_error&) {
        CHECK_FALSE(oracle.has_value());
      }
    }
  }

  TEST_CASE("a virtual disk forces a detour with full clearance") {
    geom::Grid2 static_map = geom::make_grid(0.05, {0, 0}, 160, 160);
    nav::CostMap cm = nav::make_costmap(static_map, 0.27);
    nav::rebuild_virtual(cm, {{4.0, 4.0}}, 0.35);
    nav::recombine(cm);
    const auto plan = nav::plan_path(cm.combined, {1.0, 4.0}, {7.0, 4.0});
    for (const auto& wpt : plan.waypoints)
      CHECK((wpt - geom::Vec2{4.0, 4.0}).norm() > 0.35);
  }

  TEST_CASE("lethal goals are substituted within half a meter, else unreachable") {
    geom::Grid2 g = geom::make_grid(0.05, {0, 0}, 160, 160);
    geom::fill_rect(g, {3.0, 3.0}, {4.0, 4.0}, geom::kCellLethal);
    // goal just inside the block: substituted to the rim
    const auto plan = nav::plan_path(g, {1.0, 1.0}, {3.1, 3.5});
    const geom::Vec2 end = plan.waypoints.back();
    CHECK((end - geom::Vec2{3.1, 3.5}).norm() <= 0.5);
    CHECK(g(g.world_to_cell(end).ix, g.world_to_cell(end).iy) < geom::kCellInscribed);
    // goal at the dead center is farther than 0.5 m from any free cell
    CHECK_THROWS_WITH_AS(nav::plan_path(g, {1.0, 1.0}, {3.5, 3.5}), "goal unreachable",
                         std::runtime_error);
    // fully enclosed goal region
    geom::Grid2 g2 = geom::make_grid(0.05, {0, 0}, 100, 100);
    geom::fill_rect(g2, {2.0, 2.0}, {2.2, 3.0}, geom::kCellLethal);
    geom::fill_rect(g2, {2.8, 2.0}, {3.0, 3.0}, geom::kCellLethal);
    geom::fill_rect(g2, {2.0, 2.0}, {3.0, 2.2}, geom::kCellLethal);
    geom::fill_rect(g2, {2.0, 2.8}, {3.0, 3.0}, geom::kCellLethal);
    CHECK_THROWS_WITH_AS(nav::plan_path(g2, {0.5, 0.5}, {2.5, 2.5}), "goal unreachable",
                         std::runtime_error);
  }

  TEST_CASE("safety distance is surface to surface with a floor at zero") {
    CHECK(nav::safety_distance({0, 0}, {2.0, 0}) == doctest::Approx(1.48));
    CHECK(nav::safety_distance({0, 0}, {0.3, 0}) == 0.0);
    CHECK(nav::safety_distance({1, 1}, {1, 1}) == 0.0);
  }
}

#include "scenesim/nav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "scenesim/world/world.hpp"

namespace scenesim::nav {

namespace {

bool passable(const geom::Grid2& g, int ix, int iy) {
  return g.in_bounds(ix, iy) && g(ix, iy) < geom::kCellInscribed;
}

// Nearest passable cell by center distance, ties toward lower y then x.
std::optional<geom::GridIndex> nearest_free(const geom::Grid2& g, geom::Vec2 p, double radius) {
  const geom::GridIndex c = g.world_to_cell(p);
  const int reach = static_cast<int>(std::ceil(radius / g.resolution)) + 1;
  std::optional<geom::GridIndex> best;
  double best_d = radius;
  for (int iy = c.iy - reach; iy <= c.iy + reach; ++iy) {
    for (int ix = c.ix - reach; ix <= c.ix + reach; ++ix) {
      if (!passable(g, ix, iy)) continue;
      const double d = (g.cell_center({ix, iy}) - p).norm();
      if (d < best_d || (d == best_d && !best)) {
        best = geom::GridIndex{ix, iy};
        best_d = d;
      }
    }
  }
  return best;
}

double octile(const geom::Grid2& g, int ax, int ay, int bx, int by) {
  const double dx = std::abs(ax - bx) * g.resolution;
  const double dy = std::abs(ay - by) * g.resolution;
  return std::max(dx, dy) + (std::sqrt(2.0) - 1.0) * std::min(dx, dy);
}

}  // namespace

PlanResult plan_path(const geom::Grid2& combined, geom::Vec2 start, geom::Vec2 goal) {
  const geom::GridIndex s = combined.world_to_cell(start);
  // a start inside an obstacle stamp is allowed: the plan leads out of it
  if (!combined.in_bounds(s)) throw std::runtime_error("goal unreachable");
  std::optional<geom::GridIndex> gidx;
  if (combined.world_in_bounds(goal) &&
      passable(combined, combined.world_to_cell(goal).ix, combined.world_to_cell(goal).iy)) {
    gidx = combined.world_to_cell(goal);
  } else {
    gidx = nearest_free(combined, goal, kGoalSubstituteRadius);
  }
  if (!gidx) throw std::runtime_error("goal unreachable");

  const int w = combined.width, h = combined.height;
  const auto id = [w](int ix, int iy) { return iy * w + ix; };
  std::vector<double> dist(static_cast<size_t>(w) * h, std::numeric_limits<double>::infinity());
  std::vector<int> parent(static_cast<size_t>(w) * h, -1);
  using Item = std::pair<double, int>;  // (f, cell id): id ties keep expansion deterministic
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[id(s.ix, s.iy)] = 0.0;
  pq.push({octile(combined, s.ix, s.iy, gidx->ix, gidx->iy), id(s.ix, s.iy)});
  const int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  const int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  const int goal_id = id(gidx->ix, gidx->iy);
  bool found = false;
  while (!pq.empty()) {
    const auto [f, u] = pq.top();
    pq.pop();
    const int ux = u % w, uy = u / w;
    if (f > dist[u] + octile(combined, ux, uy, gidx->ix, gidx->iy) + 1e-12) continue;
    if (u == goal_id) {
      found = true;
      break;
    }
    for (int k = 0; k < 8; ++k) {
      const int vx = ux + dx[k], vy = uy + dy[k];
      if (!passable(combined, vx, vy)) continue;
      const double step = (k < 4 ? 1.0 : std::sqrt(2.0)) * combined.resolution;
      const double nd = dist[u] + step + kCellCostWeight * combined(vx, vy);
      if (nd < dist[id(vx, vy)]) {
        dist[id(vx, vy)] = nd;
        parent[id(vx, vy)] = u;
        pq.push({nd + octile(combined, vx, vy, gidx->ix, gidx->iy), id(vx, vy)});
      }
    }
  }
  if (!found) throw std::runtime_error("goal unreachable");

  PlanResult res;
  res.cost = dist[goal_id];
  std::vector<geom::Vec2> rev;
  for (int u = goal_id; u != -1; u = parent[u])
    rev.push_back(combined.cell_center({u % w, u / w}));
  res.waypoints.assign(rev.rbegin(), rev.rend());
  return res;
}

double safety_distance(geom::Vec2 robot_center, geom::Vec2 person_center) {
  const double d =
      (robot_center - person_center).norm() - world::kRobotFootprintRadius - world::kHumanRadius;
  return std::max(0.0, d);
}

}  // namespace scenesim::nav

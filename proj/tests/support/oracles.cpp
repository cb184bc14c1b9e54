#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace oracles {

namespace {

// Convex membership: point is on the inner side of every edge.
bool inside_convex(const Polygon2& p, Vec2 q) {
  size_t n = p.v.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = p.v[i], b = p.v[(i + 1) % n];
    double cr = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
    if (cr < 0.0) return false;
  }
  return true;
}

}  // namespace

double iou_sampled_convex(const Polygon2& a, const Polygon2& b, double res) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const Polygon2* p : {&a, &b}) {
    for (Vec2 v : p->v) {
      x0 = std::min(x0, v.x);
      y0 = std::min(y0, v.y);
      x1 = std::max(x1, v.x);
      y1 = std::max(y1, v.y);
    }
  }
  long long inter = 0, uni = 0;
  for (double y = y0 + res / 2; y < y1; y += res) {
    for (double x = x0 + res / 2; x < x1; x += res) {
      bool ia = inside_convex(a, {x, y});
      bool ib = inside_convex(b, {x, y});
      if (ia && ib) ++inter;
      if (ia || ib) ++uni;
    }
  }
  return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

std::optional<scenesim::geom::GridIndex> raycast_dense(const Grid2& g, Vec2 from, Vec2 to,
                                                       uint8_t blocked_min, double step) {
  Vec2 d = to - from;
  double len = d.norm();
  int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    double t = std::min(1.0, static_cast<double>(i) / n);
    Vec2 p = from + d * t;
    auto c = g.world_to_cell(p);
    if (!g.in_bounds(c)) continue;
    if (g(c.ix, c.iy) >= blocked_min) return c;
  }
  return std::nullopt;
}

std::optional<double> dijkstra_cost(const Grid2& g, scenesim::geom::GridIndex start,
                                    scenesim::geom::GridIndex goal, double cost_weight) {
  const int w = g.width, h = g.height;
  auto passable = [&](int ix, int iy) {
    return g.in_bounds(ix, iy) && g(ix, iy) < scenesim::geom::kCellInscribed;
  };
  if (!passable(start.ix, start.iy) || !passable(goal.ix, goal.iy)) return std::nullopt;
  std::vector<double> dist(static_cast<size_t>(w) * h, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto id = [&](int ix, int iy) { return iy * w + ix; };
  dist[id(start.ix, start.iy)] = 0.0;
  pq.push({0.0, id(start.ix, start.iy)});
  const int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  const int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    int ux = u % w, uy = u / w;
    if (ux == goal.ix && uy == goal.iy) return d;
    for (int k = 0; k < 8; ++k) {
      int vx = ux + dx[k], vy = uy + dy[k];
      if (!passable(vx, vy)) continue;
      double step_len = (k < 4 ? 1.0 : std::sqrt(2.0)) * g.resolution;
      double nd = d + step_len + cost_weight * g(vx, vy);
      if (nd < dist[id(vx, vy)]) {
        dist[id(vx, vy)] = nd;
        pq.push({nd, id(vx, vy)});
      }
    }
  }
  return std::nullopt;
}

}  // namespace oracles

#include "scenesim/nav/costmap.hpp"

#include <algorithm>

#include "scenesim/kernels/stamp.hpp"

namespace scenesim::nav {

namespace {

geom::Grid2 blank_like(const geom::Grid2& g) {
  geom::Grid2 out = g;
  std::fill(out.cells.begin(), out.cells.end(), geom::kCellFree);
  return out;
}

void stamp_points(geom::Grid2& layer, const std::vector<geom::Vec2>& points, double inflation,
                  uint8_t value) {
  std::fill(layer.cells.begin(), layer.cells.end(), geom::kCellFree);
  std::vector<kern::DiskStamp> stamps;
  stamps.reserve(points.size());
  for (const auto& p : points) stamps.push_back({p, inflation, value});
  kern::stamp_disks(layer, stamps);
}

}  // namespace

CostMap make_costmap(const geom::Grid2& static_map, double robot_radius) {
  CostMap m;
  m.static_layer = static_map;
  std::vector<kern::DiskStamp> grow;
  for (int y = 0; y < static_map.height; ++y) {
    for (int x = 0; x < static_map.width; ++x) {
      if (static_map(x, y) >= geom::kCellLethal)
        grow.push_back({static_map.cell_center({x, y}), robot_radius, geom::kCellInscribed});
    }
  }
  kern::stamp_disks(m.static_layer, grow);  // max semantics keep 254 where it was
  m.onboard = blank_like(static_map);
  m.virtual_layer = blank_like(static_map);
  m.combined = m.static_layer;
  return m;
}

void rebuild_onboard(CostMap& map, const std::vector<geom::Vec2>& hit_points, double inflation) {
  stamp_points(map.onboard, hit_points, inflation, geom::kCellLethal);
}

void rebuild_virtual(CostMap& map, const std::vector<geom::Vec2>& cloud, double inflation) {
  stamp_points(map.virtual_layer, cloud, inflation, geom::kCellLethal);
}

void recombine(CostMap& map) {
  map.combined = map.static_layer;
  const size_t n = map.combined.cells.size();
  for (size_t i = 0; i < n; ++i)
    map.combined.cells[i] =
        std::max({map.static_layer.cells[i], map.onboard.cells[i], map.virtual_layer.cells[i]});
}

}  // namespace scenesim::nav

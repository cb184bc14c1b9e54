#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenesim/geometry/pose2.hpp"

namespace scenesim::geom {

// Occupancy / cost cell values shared by maps and cost layers.
inline constexpr uint8_t kCellFree = 0;
inline constexpr uint8_t kCellInscribed = 253;  // 1..252 are soft costs
inline constexpr uint8_t kCellLethal = 254;
inline constexpr uint8_t kCellUnknown = 255;

struct GridIndex {
  int ix = 0;
  int iy = 0;
  bool operator==(const GridIndex&) const = default;
};

// Row-major byte grid anchored at an axis-aligned world origin (cell (0,0)
// covers [origin, origin + res) on both axes).
struct Grid2 {
  double resolution = 0.05;
  Vec2 origin;
  int width = 0;
  int height = 0;
  std::vector<uint8_t> cells;

  bool in_bounds(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < width && iy < height; }
  bool in_bounds(GridIndex i) const { return in_bounds(i.ix, i.iy); }

  uint8_t at(int ix, int iy) const;        // bounds-checked, throws std::out_of_range
  void set(int ix, int iy, uint8_t v);     // bounds-checked

  uint8_t operator()(int ix, int iy) const { return cells[static_cast<size_t>(iy) * width + ix]; }
  uint8_t& operator()(int ix, int iy) { return cells[static_cast<size_t>(iy) * width + ix]; }

  GridIndex world_to_cell(Vec2 p) const;
  Vec2 cell_center(GridIndex i) const;
  bool world_in_bounds(Vec2 p) const { return in_bounds(world_to_cell(p)); }
};

Grid2 make_grid(double resolution, Vec2 origin, int width, int height, uint8_t fill = kCellFree);

// Portable grid file: text header followed by the raw row-major payload.
std::string grid_to_bytes(const Grid2& g);
Grid2 grid_from_bytes(const std::string& bytes);
void save_grid(const Grid2& g, const std::string& path);
Grid2 load_grid(const std::string& path);

// Paint an axis-aligned world rectangle (used by map construction).
void fill_rect(Grid2& g, Vec2 lo, Vec2 hi, uint8_t value);

}  // namespace scenesim::geom

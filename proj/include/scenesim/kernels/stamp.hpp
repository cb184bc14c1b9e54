#pragma once

#include <vector>

#include "scenesim/geometry/grid2.hpp"

namespace scenesim::kern {

struct DiskStamp {
  geom::Vec2 center;
  double radius = 0.0;
  uint8_t value = geom::kCellLethal;
};

// cell = max(cell, value) for every cell whose center lies within radius.
// The parallel variant partitions by grid row, so each cell has exactly one
// writer and the result is identical to the serial one.
void stamp_disks_serial(geom::Grid2& g, const std::vector<DiskStamp>& stamps);
void stamp_disks_parallel(geom::Grid2& g, const std::vector<DiskStamp>& stamps);
void stamp_disks(geom::Grid2& g, const std::vector<DiskStamp>& stamps);

}  // namespace scenesim::kern

#include "scenesim/kernels/stamp.hpp"

#include <algorithm>
#include <cmath>

namespace scenesim::kern {

using geom::Grid2;
using geom::Vec2;

namespace {

struct RowSpan {
  int y0, y1;  // inclusive cell rows touched by the disk
};

RowSpan disk_rows(const Grid2& g, const DiskStamp& d) {
  int y0 = static_cast<int>(std::floor((d.center.y - d.radius - g.origin.y) / g.resolution));
  int y1 = static_cast<int>(std::floor((d.center.y + d.radius - g.origin.y) / g.resolution));
  return {std::max(0, y0), std::min(g.height - 1, y1)};
}

inline void stamp_row(Grid2& g, const DiskStamp& d, int iy) {
  double cy = g.origin.y + (iy + 0.5) * g.resolution;
  double dy = cy - d.center.y;
  double rem = d.radius * d.radius - dy * dy;
  if (rem < 0.0) return;
  double half = std::sqrt(rem);
  int x0 = static_cast<int>(std::ceil((d.center.x - half - g.origin.x) / g.resolution - 0.5));
  int x1 = static_cast<int>(std::floor((d.center.x + half - g.origin.x) / g.resolution - 0.5));
  x0 = std::max(0, x0);
  x1 = std::min(g.width - 1, x1);
  for (int ix = x0; ix <= x1; ++ix) {
    uint8_t& c = g(ix, iy);
    if (d.value > c) c = d.value;
  }
}

}  // namespace

void stamp_disks_serial(Grid2& g, const std::vector<DiskStamp>& stamps) {
  for (const DiskStamp& d : stamps) {
    RowSpan rows = disk_rows(g, d);
    for (int iy = rows.y0; iy <= rows.y1; ++iy) stamp_row(g, d, iy);
  }
}

void stamp_disks_parallel(Grid2& g, const std::vector<DiskStamp>& stamps) {
  if (stamps.empty()) return;
  int y_min = g.height, y_max = -1;
  std::vector<RowSpan> spans(stamps.size());
  for (size_t i = 0; i < stamps.size(); ++i) {
    spans[i] = disk_rows(g, stamps[i]);
    y_min = std::min(y_min, spans[i].y0);
    y_max = std::max(y_max, spans[i].y1);
  }
#pragma omp parallel for schedule(static)
  for (int iy = y_min; iy <= y_max; ++iy) {
    for (size_t i = 0; i < stamps.size(); ++i) {
      if (iy >= spans[i].y0 && iy <= spans[i].y1) stamp_row(g, stamps[i], iy);
    }
  }
}

void stamp_disks(Grid2& g, const std::vector<DiskStamp>& stamps) {
#ifdef _OPENMP
  stamp_disks_parallel(g, stamps);
#else
  stamp_disks_serial(g, stamps);
#endif
}

}  // namespace scenesim::kern

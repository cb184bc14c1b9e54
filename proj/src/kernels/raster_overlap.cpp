#include "scenesim/kernels/raster_overlap.hpp"

#include <algorithm>
#include <cmath>

namespace scenesim::kern {

using geom::Polygon2;
using geom::Vec2;

namespace {

struct Box {
  double x0, y0, x1, y1;
};

Box bounding_box(const Polygon2& a, const Polygon2& b) {
  Box box{1e300, 1e300, -1e300, -1e300};
  for (const Polygon2* p : {&a, &b}) {
    for (Vec2 v : p->v) {
      box.x0 = std::min(box.x0, v.x);
      box.y0 = std::min(box.y0, v.y);
      box.x1 = std::max(box.x1, v.x);
      box.y1 = std::max(box.y1, v.y);
    }
  }
  return box;
}

inline void count_row(const Polygon2& a, const Polygon2& b, const Box& box, double res, int nx,
                      int iy, long long& oa, long long& ob, long long& bo) {
  double y = box.y0 + (iy + 0.5) * res;
  for (int ix = 0; ix < nx; ++ix) {
    Vec2 p{box.x0 + (ix + 0.5) * res, y};
    bool in_a = geom::contains(a, p);
    bool in_b = geom::contains(b, p);
    if (in_a && in_b) {
      ++bo;
    } else if (in_a) {
      ++oa;
    } else if (in_b) {
      ++ob;
    }
  }
}

}  // namespace

OverlapCounts overlap_counts_serial(const Polygon2& a, const Polygon2& b, double res) {
  Box box = bounding_box(a, b);
  int nx = static_cast<int>(std::ceil((box.x1 - box.x0) / res));
  int ny = static_cast<int>(std::ceil((box.y1 - box.y0) / res));
  OverlapCounts c;
  for (int iy = 0; iy < ny; ++iy) count_row(a, b, box, res, nx, iy, c.only_a, c.only_b, c.both);
  return c;
}

OverlapCounts overlap_counts_parallel(const Polygon2& a, const Polygon2& b, double res) {
  Box box = bounding_box(a, b);
  int nx = static_cast<int>(std::ceil((box.x1 - box.x0) / res));
  int ny = static_cast<int>(std::ceil((box.y1 - box.y0) / res));
  long long oa = 0, ob = 0, bo = 0;
#pragma omp parallel for reduction(+ : oa, ob, bo) schedule(static)
  for (int iy = 0; iy < ny; ++iy) count_row(a, b, box, res, nx, iy, oa, ob, bo);
  return {oa, ob, bo};
}

OverlapCounts overlap_counts(const Polygon2& a, const Polygon2& b, double res) {
#ifdef _OPENMP
  return overlap_counts_parallel(a, b, res);
#else
  return overlap_counts_serial(a, b, res);
#endif
}

}  // namespace scenesim::kern

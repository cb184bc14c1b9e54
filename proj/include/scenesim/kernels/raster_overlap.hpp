#pragma once

#include "scenesim/geometry/polygon2.hpp"

namespace scenesim::kern {

// Cell-center rasterization of a polygon pair over their joint bounding box.
// Counts are integers, so the parallel reduction is order-independent and the
// two variants agree exactly.
struct OverlapCounts {
  long long only_a = 0;
  long long only_b = 0;
  long long both = 0;
};

OverlapCounts overlap_counts_serial(const geom::Polygon2& a, const geom::Polygon2& b, double res);
OverlapCounts overlap_counts_parallel(const geom::Polygon2& a, const geom::Polygon2& b, double res);
OverlapCounts overlap_counts(const geom::Polygon2& a, const geom::Polygon2& b, double res);

}  // namespace scenesim::kern

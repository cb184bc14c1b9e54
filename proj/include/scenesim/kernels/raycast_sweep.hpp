#pragma once

#include <cstdint>
#include <vector>

#include "scenesim/geometry/raycast.hpp"

namespace scenesim::kern {

// Analytic obstacle primitives checked per ray in addition to the grid.
struct CirclePrim {
  geom::Vec2 center;
  double radius = 0.0;
  int id = -1;
};

struct SegmentPrim {
  geom::Vec2 a, b;
  int id = -1;
};

enum class HitKind : uint8_t { none, grid, circle, segment };

struct RayResult {
  double range = 0.0;  // max_range when nothing was hit
  HitKind kind = HitKind::none;
  int id = -1;  // primitive id for circle/segment hits
};

// One result slot per ray; rays are independent, so the parallel variant is
// bit-identical to the serial one.
void sweep_serial(const geom::Grid2& grid, geom::Vec2 from, const std::vector<double>& angles,
                  double max_range, uint8_t blocked_min, const std::vector<CirclePrim>& circles,
                  const std::vector<SegmentPrim>& segments, std::vector<RayResult>& out);
void sweep_parallel(const geom::Grid2& grid, geom::Vec2 from, const std::vector<double>& angles,
                    double max_range, uint8_t blocked_min, const std::vector<CirclePrim>& circles,
                    const std::vector<SegmentPrim>& segments, std::vector<RayResult>& out);
void sweep(const geom::Grid2& grid, geom::Vec2 from, const std::vector<double>& angles,
           double max_range, uint8_t blocked_min, const std::vector<CirclePrim>& circles,
           const std::vector<SegmentPrim>& segments, std::vector<RayResult>& out);

}  // namespace scenesim::kern

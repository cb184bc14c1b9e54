#pragma once

#include <vector>

#include "scenesim/geometry/polygon2.hpp"
#include "scenesim/world/world.hpp"

namespace scenesim::task {

// Convex region furniture is collected from; center is the polygon centroid.
struct PickupArea {
  int id = 0;
  geom::Polygon2 polygon;
  geom::Vec2 center;
  world::ObjectClass class_filter = world::ObjectClass::table;
};

inline PickupArea make_pickup_area(int id, geom::Polygon2 polygon,
                                   world::ObjectClass cls = world::ObjectClass::table) {
  PickupArea a;
  a.id = id;
  a.center = geom::centroid(polygon);
  a.polygon = std::move(polygon);
  a.class_filter = cls;
  return a;
}

// One slot of the target arrangement. Occupied slots are never re-selected.
struct LayoutEntry {
  world::ObjectClass cls = world::ObjectClass::table;
  geom::Pose2 target;
  bool occupied = false;
};

struct Layout {
  std::vector<LayoutEntry> entries;
};

}  // namespace scenesim::task

#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "scenesim/geometry/grid2.hpp"

using namespace scenesim;

namespace {

// All canonical maps use 10 cm cells and a one-cell lethal border.
geom::Grid2 room(double width, double height) {
  const double res = 0.1;
  auto g = geom::make_grid(res, {0.0, 0.0}, static_cast<int>(width / res + 0.5),
                           static_cast<int>(height / res + 0.5), geom::kCellFree);
  geom::fill_rect(g, {0.0, 0.0}, {width, res}, geom::kCellLethal);
  geom::fill_rect(g, {0.0, height - res}, {width, height}, geom::kCellLethal);
  geom::fill_rect(g, {0.0, 0.0}, {res, height}, geom::kCellLethal);
  geom::fill_rect(g, {width - res, 0.0}, {width, height}, geom::kCellLethal);
  return g;
}

void wall(geom::Grid2& g, double x0, double y0, double x1, double y1) {
  geom::fill_rect(g, {x0, y0}, {x1, y1}, geom::kCellLethal);
}

// East-west corridor with a walled hallway descending into it from the
// north. A walker comes down the hallway, turns east along the corridor and
// leaves through a doorway further east. The hallway walls hide them from a
// robot driving the corridor until they step out of the mouth, and the
// hallway is too narrow for the robot, so there is no route around the
// crossing point.
geom::Grid2 occlusion_crossing() {
  auto g = room(13.0, 8.0);
  wall(g, 0.1, 0.1, 12.9, 1.3);    // thick south wall
  wall(g, 0.1, 2.7, 6.9, 3.0);     // dividing wall, west of the hallway mouth
  wall(g, 7.5, 2.7, 10.2, 3.0);    // dividing wall, mouth to the east doorway
  wall(g, 10.8, 2.7, 12.9, 3.0);   // dividing wall, east of the east doorway
  wall(g, 6.6, 3.0, 6.9, 7.9);     // hallway, west side
  wall(g, 7.5, 3.0, 7.8, 7.9);     // hallway, east side
  return g;
}

// Open room shared by the pickup area (west) and the layout slots (east).
geom::Grid2 carry_layout() { return room(12.0, 9.0); }

// Larger room with a partial divider south of center; carries route north
// of it, chair deliveries have to go around.
geom::Grid2 full_demo() {
  auto g = room(14.0, 10.0);
  wall(g, 6.8, 0.1, 7.1, 3.0);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the canonical scenario maps"};
  std::string out_dir = "scenarios/maps";
  app.add_option("--out", out_dir, "output directory for .grid files");
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(out_dir);
  const struct {
    const char* name;
    geom::Grid2 grid;
  } maps[] = {
      {"occlusion_crossing", occlusion_crossing()},
      {"carry_layout", carry_layout()},
      {"full_demo", full_demo()},
  };
  for (const auto& m : maps) {
    const std::string path = out_dir + "/" + m.name + ".grid";
    geom::save_grid(m.grid, path);
    std::printf("%s: %dx%d cells at %.2f m\n", path.c_str(), m.grid.width, m.grid.height,
                m.grid.resolution);
  }
  return 0;
}

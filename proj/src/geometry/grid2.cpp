#include "scenesim/geometry/grid2.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "scenesim/common/strfmt.hpp"

namespace scenesim::geom {

uint8_t Grid2::at(int ix, int iy) const {
  if (!in_bounds(ix, iy)) throw std::out_of_range("grid index out of bounds");
  return (*this)(ix, iy);
}

void Grid2::set(int ix, int iy, uint8_t v) {
  if (!in_bounds(ix, iy)) throw std::out_of_range("grid index out of bounds");
  (*this)(ix, iy) = v;
}

GridIndex Grid2::world_to_cell(Vec2 p) const {
  return {static_cast<int>(std::floor((p.x - origin.x) / resolution)),
          static_cast<int>(std::floor((p.y - origin.y) / resolution))};
}

Vec2 Grid2::cell_center(GridIndex i) const {
  return {origin.x + (i.ix + 0.5) * resolution, origin.y + (i.iy + 0.5) * resolution};
}

Grid2 make_grid(double resolution, Vec2 origin, int width, int height, uint8_t fill) {
  if (resolution <= 0.0 || width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  Grid2 g;
  g.resolution = resolution;
  g.origin = origin;
  g.width = width;
  g.height = height;
  g.cells.assign(static_cast<size_t>(width) * height, fill);
  return g;
}

std::string grid_to_bytes(const Grid2& g) {
  std::ostringstream os;
  os << "scenesim-grid 1\n";
  os << "resolution " << fmt_g17(g.resolution) << "\n";
  os << "origin " << fmt_g17(g.origin.x) << " " << fmt_g17(g.origin.y) << "\n";
  os << "size " << g.width << " " << g.height << "\n";
  os << "data\n";
  os.write(reinterpret_cast<const char*>(g.cells.data()), static_cast<std::streamsize>(g.cells.size()));
  return os.str();
}

Grid2 grid_from_bytes(const std::string& bytes) {
  std::istringstream is(bytes);
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "scenesim-grid" || version != 1) throw std::runtime_error("not a grid file");
  std::string key;
  Grid2 g;
  is >> key >> g.resolution;
  if (key != "resolution") throw std::runtime_error("grid header: expected resolution");
  is >> key >> g.origin.x >> g.origin.y;
  if (key != "origin") throw std::runtime_error("grid header: expected origin");
  is >> key >> g.width >> g.height;
  if (key != "size") throw std::runtime_error("grid header: expected size");
  is >> key;
  if (key != "data") throw std::runtime_error("grid header: expected data");
  is.get();  // newline after "data"
  size_t n = static_cast<size_t>(g.width) * g.height;
  g.cells.resize(n);
  is.read(reinterpret_cast<char*>(g.cells.data()), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(is.gcount()) != n) throw std::runtime_error("grid payload truncated");
  return g;
}

void save_grid(const Grid2& g, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open grid file for writing: " + path);
  std::string b = grid_to_bytes(g);
  f.write(b.data(), static_cast<std::streamsize>(b.size()));
}

Grid2 load_grid(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open grid file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return grid_from_bytes(os.str());
}

void fill_rect(Grid2& g, Vec2 lo, Vec2 hi, uint8_t value) {
  GridIndex a = g.world_to_cell(lo);
  GridIndex b = g.world_to_cell({hi.x - 1e-9, hi.y - 1e-9});
  for (int iy = std::max(0, a.iy); iy <= std::min(g.height - 1, b.iy); ++iy) {
    for (int ix = std::max(0, a.ix); ix <= std::min(g.width - 1, b.ix); ++ix) {
      g(ix, iy) = value;
    }
  }
}

}  // namespace scenesim::geom

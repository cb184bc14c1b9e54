#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"

#include "scenesim/common/rng.hpp"
#include "scenesim/kernels/raster_overlap.hpp"
#include "scenesim/kernels/raycast_sweep.hpp"
#include "scenesim/kernels/stamp.hpp"

using namespace scenesim;

namespace {

double ms_per_iter(int iters, const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < iters; ++i) body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / iters;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  if (!identical) throw std::runtime_error(std::string(name) + ": variants disagree");
  std::printf("%-16s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel timings (results must match exactly)"};
  int iters = 20;
  uint64_t seed = 42;
  app.add_option("--iters", iters, "iterations per measurement")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "input generation seed");
  CLI11_PARSE(app, argc, argv);

  RngStream rng = substream(seed, tag64("bench"));

  // Ray sweep over a cluttered grid plus analytic primitives.
  auto grid = geom::make_grid(0.05, {0.0, 0.0}, 400, 400, geom::kCellFree);
  for (int i = 0; i < 300; ++i) {
    const geom::Vec2 lo{rng.uniform(0.0, 19.0), rng.uniform(0.0, 19.0)};
    geom::fill_rect(grid, lo, lo + geom::Vec2{rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0)},
                    geom::kCellLethal);
  }
  std::vector<kern::CirclePrim> circles;
  std::vector<kern::SegmentPrim> segments;
  for (int i = 0; i < 50; ++i) {
    circles.push_back({{rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0)}, rng.uniform(0.1, 0.5),
                       i});
    const geom::Vec2 a{rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0)};
    segments.push_back({a, a + geom::Vec2{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, i});
  }
  std::vector<double> angles(2000);
  for (size_t i = 0; i < angles.size(); ++i)
    angles[i] = -geom::kPi + 2.0 * geom::kPi * static_cast<double>(i) / angles.size();
  const geom::Vec2 from{10.0, 10.0};

  std::vector<kern::RayResult> out_s, out_p;
  const double ray_s = ms_per_iter(iters, [&] {
    kern::sweep_serial(grid, from, angles, 9.0, geom::kCellLethal, circles, segments, out_s);
  });
  const double ray_p = ms_per_iter(iters, [&] {
    kern::sweep_parallel(grid, from, angles, 9.0, geom::kCellLethal, circles, segments, out_p);
  });
  bool ray_same = out_s.size() == out_p.size();
  for (size_t i = 0; ray_same && i < out_s.size(); ++i)
    ray_same = out_s[i].range == out_p[i].range && out_s[i].kind == out_p[i].kind &&
               out_s[i].id == out_p[i].id;
  report("raycast_sweep", ray_s, ray_p, ray_same);

  // Disk stamping into a fresh cost layer each iteration.
  std::vector<kern::DiskStamp> stamps;
  for (int i = 0; i < 4000; ++i)
    stamps.push_back({{rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0)}, rng.uniform(0.1, 0.4),
                      static_cast<uint8_t>(1 + (i % 254))});
  const auto blank = geom::make_grid(0.05, {0.0, 0.0}, 400, 400, geom::kCellFree);
  geom::Grid2 layer_s, layer_p;
  const double stamp_s = ms_per_iter(iters, [&] {
    layer_s = blank;
    kern::stamp_disks_serial(layer_s, stamps);
  });
  const double stamp_p = ms_per_iter(iters, [&] {
    layer_p = blank;
    kern::stamp_disks_parallel(layer_p, stamps);
  });
  report("stamp_disks", stamp_s, stamp_p, layer_s.cells == layer_p.cells);

  // Fine-resolution polygon overlap rasterization.
  geom::Polygon2 a, b;
  for (int i = 0; i < 16; ++i) {
    const double ang = 2.0 * geom::kPi * i / 16;
    const double ra = rng.uniform(1.5, 3.0), rb = rng.uniform(1.5, 3.0);
    a.v.push_back({ra * std::cos(ang), ra * std::sin(ang)});
    b.v.push_back({0.8 + rb * std::cos(ang), 0.3 + rb * std::sin(ang)});
  }
  kern::OverlapCounts c_s, c_p;
  const double ov_s =
      ms_per_iter(iters, [&] { c_s = kern::overlap_counts_serial(a, b, 0.005); });
  const double ov_p =
      ms_per_iter(iters, [&] { c_p = kern::overlap_counts_parallel(a, b, 0.005); });
  report("overlap_counts", ov_s, ov_p,
         c_s.only_a == c_p.only_a && c_s.only_b == c_p.only_b && c_s.both == c_p.both);
  return 0;
}

#include "scenesim/perception/planar_pose.hpp"

#include <cmath>
#include <limits>

namespace scenesim::percept {

using geom::Vec2;

double fold_halfturn_angle(double theta) {
  double t = std::fmod(theta, geom::kPi);
  if (t < 0.0) t += geom::kPi;
  if (t >= geom::kPi) t -= geom::kPi;  // fmod can land exactly on pi
  return t;
}

PlanarFit estimate_planar_pose(const std::array<Vec2, 4>& model, const std::array<Vec2, 4>& quad,
                               bool fold_halfturn) {
  Vec2 mc{0, 0};
  for (Vec2 p : model) mc = mc + p;
  mc = mc * 0.25;

  PlanarFit best;
  best.rms = std::numeric_limits<double>::infinity();

  for (int reversed = 0; reversed < 2; ++reversed) {
    for (int rot = 0; rot < 4; ++rot) {
      std::array<Vec2, 4> obs;
      for (int i = 0; i < 4; ++i) {
        int j = reversed ? (rot - i + 8) % 4 : (rot + i) % 4;
        obs[i] = quad[j];
      }
      Vec2 oc{0, 0};
      for (Vec2 p : obs) oc = oc + p;
      oc = oc * 0.25;

      double sc = 0.0, ss = 0.0;
      for (int i = 0; i < 4; ++i) {
        Vec2 m = model[i] - mc, o = obs[i] - oc;
        sc += geom::dot(m, o);
        ss += geom::cross(m, o);
      }
      double theta = std::atan2(ss, sc);
      double c = std::cos(theta), s = std::sin(theta);
      Vec2 t{oc.x - (c * mc.x - s * mc.y), oc.y - (s * mc.x + c * mc.y)};

      double sq = 0.0;
      for (int i = 0; i < 4; ++i) {
        Vec2 mapped{t.x + c * model[i].x - s * model[i].y,
                    t.y + s * model[i].x + c * model[i].y};
        sq += (obs[i] - mapped).squared_norm();
      }
      double rms = std::sqrt(sq / 4.0);
      if (rms < best.rms) {
        best.rms = rms;
        best.pose = {t.x, t.y, geom::wrap_angle(theta)};
      }
    }
  }

  if (fold_halfturn) best.pose.theta = fold_halfturn_angle(best.pose.theta);
  return best;
}

}  // namespace scenesim::percept

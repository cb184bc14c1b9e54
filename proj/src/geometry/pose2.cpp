#include "scenesim/geometry/pose2.hpp"

namespace scenesim::geom {

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;  // remainder() can return exactly -pi
  return w;
}

double angle_diff(double a, double b) { return wrap_angle(a - b); }

Pose2 compose(const Pose2& a, const Pose2& b) {
  double c = std::cos(a.theta), s = std::sin(a.theta);
  return {a.x + c * b.x - s * b.y, a.y + s * b.x + c * b.y, wrap_angle(a.theta + b.theta)};
}

Pose2 inverse(const Pose2& p) {
  double c = std::cos(p.theta), s = std::sin(p.theta);
  return {-(c * p.x + s * p.y), -(-s * p.x + c * p.y), wrap_angle(-p.theta)};
}

Vec2 transform_to_frame(const Pose2& frame, Vec2 p) {
  double c = std::cos(frame.theta), s = std::sin(frame.theta);
  double dx = p.x - frame.x, dy = p.y - frame.y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

Vec2 transform_from_frame(const Pose2& frame, Vec2 p) {
  double c = std::cos(frame.theta), s = std::sin(frame.theta);
  return {frame.x + c * p.x - s * p.y, frame.y + s * p.x + c * p.y};
}

Pose2 pose_to_frame(const Pose2& frame, const Pose2& p) {
  Vec2 t = transform_to_frame(frame, {p.x, p.y});
  return {t.x, t.y, angle_diff(p.theta, frame.theta)};
}

Pose2 integrate_twist(const Pose2& p, const Velocity2& v, double dt) {
  double dtheta = v.omega * dt;
  double dx = v.vx * dt, dy = v.vy * dt;
  Vec2 local;
  if (std::abs(dtheta) < 1e-12) {
    local = {dx, dy};
  } else {
    // V(dtheta) maps the straight body displacement onto the arc.
    double sn = std::sin(dtheta), cs = 1.0 - std::cos(dtheta);
    local = {(sn * dx - cs * dy) / dtheta, (cs * dx + sn * dy) / dtheta};
  }
  Vec2 w = transform_from_frame(p, local);
  return {w.x, w.y, wrap_angle(p.theta + dtheta)};
}

}  // namespace scenesim::geom

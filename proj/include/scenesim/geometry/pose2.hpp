#pragma once

#include <cmath>

namespace scenesim::geom {

inline constexpr double kPi = 3.14159265358979323846;

// Wrap into (-pi, pi]; the branch cut itself maps to +pi.
double wrap_angle(double a);

// wrap_angle(a - b). Always in (-pi, pi].
double angle_diff(double a, double b);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline Vec2 rotate(Vec2 v, double ang) {
  double c = std::cos(ang), s = std::sin(ang);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}
inline Vec2 heading_vec(double theta) { return {std::cos(theta), std::sin(theta)}; }

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // kept wrapped in (-pi, pi] by all producing operations

  Vec2 position() const { return {x, y}; }
};

// Body-frame twist (vx forward, vy left, omega ccw).
struct Velocity2 {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;

  double linear_norm() const { return std::hypot(vx, vy); }
};

// a then b, b expressed in a's frame.
Pose2 compose(const Pose2& a, const Pose2& b);
Pose2 inverse(const Pose2& p);

// World point -> frame-local coordinates: R(-theta) * (p - t).
Vec2 transform_to_frame(const Pose2& frame, Vec2 p);
// Frame-local point -> world: t + R(theta) * p.
Vec2 transform_from_frame(const Pose2& frame, Vec2 p);
// Pose expressed in another frame: inverse(frame) o p.
Pose2 pose_to_frame(const Pose2& frame, const Pose2& p);

// Pose after holding a constant body-frame twist for dt. Uses the closed-form
// arc (SE(2) exponential), so repeated fixed-step application of a constant
// command matches the continuous trajectory to machine precision.
Pose2 integrate_twist(const Pose2& p, const Velocity2& v, double dt);

}  // namespace scenesim::geom

#include "scenesim/fusion/kalman.hpp"

#include <cmath>

#include "scenesim/perception/planar_pose.hpp"

namespace scenesim::fusion {

namespace {

template <typename Mat>
void symmetrize(Mat& m) {
  m = ((m + m.transpose()) * 0.5).eval();
}

template <typename Mat>
bool is_spd(const Mat& m) {
  return Eigen::LLT<Mat>(m).info() == Eigen::Success;
}

}  // namespace

void person_predict(PersonTrack& t, double dt, double q) {
  if (dt <= 0.0) return;
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  // q is an acceleration noise density; the white-noise PSD is its square.
  const double psd = q * q;
  const double d3 = dt * dt * dt / 3.0;
  const double d2 = dt * dt / 2.0;
  Eigen::Matrix4d qm = Eigen::Matrix4d::Zero();
  qm(0, 0) = qm(1, 1) = psd * d3;
  qm(2, 2) = qm(3, 3) = psd * dt;
  qm(0, 2) = qm(2, 0) = qm(1, 3) = qm(3, 1) = psd * d2;
  t.state = f * t.state;
  t.cov = f * t.cov * f.transpose() + qm;
  symmetrize(t.cov);
}

void object_predict(ObjectTrack& t, double dt, double q) {
  if (dt <= 0.0) return;
  const double step = q * dt;
  t.cov += step * step * Eigen::Matrix3d::Identity();
}

bool person_update(PersonTrack& t, geom::Vec2 z, double sigma) {
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 0) = h(1, 1) = 1.0;
  const Eigen::Matrix2d r = sigma * sigma * Eigen::Matrix2d::Identity();
  const Eigen::Vector2d innov(z.x - t.state(0), z.y - t.state(1));
  const Eigen::Matrix2d s = h * t.cov * h.transpose() + r;
  const Eigen::Matrix<double, 4, 2> k = t.cov * h.transpose() * s.inverse();
  t.state += k * innov;
  const Eigen::Matrix4d ikh = Eigen::Matrix4d::Identity() - k * h;
  t.cov = ikh * t.cov * ikh.transpose() + k * r * k.transpose();
  symmetrize(t.cov);
  if (is_spd(t.cov)) return true;
  t.state << z.x, z.y, 0.0, 0.0;
  t.cov = Eigen::Vector4d(sigma * sigma, sigma * sigma, 1.0, 1.0).asDiagonal();
  return false;
}

bool object_update(ObjectTrack& t, geom::Pose2 z, double sigma_pos, double sigma_theta) {
  double dth;
  if (t.cls == world::ObjectClass::table) {
    dth = std::remainder(z.theta - t.state(2), geom::kPi);
    if (dth <= -geom::kPi / 2.0) dth += geom::kPi;
  } else {
    dth = geom::angle_diff(z.theta, t.state(2));
  }
  const Eigen::Vector3d innov(z.x - t.state(0), z.y - t.state(1), dth);
  const Eigen::Matrix3d r =
      Eigen::Vector3d(sigma_pos * sigma_pos, sigma_pos * sigma_pos, sigma_theta * sigma_theta)
          .asDiagonal();
  const Eigen::Matrix3d s = t.cov + r;  // observation is the full state
  const Eigen::Matrix3d k = t.cov * s.inverse();
  t.state += k * innov;
  const Eigen::Matrix3d ikh = Eigen::Matrix3d::Identity() - k;
  t.cov = ikh * t.cov * ikh.transpose() + k * r * k.transpose();
  symmetrize(t.cov);
  const bool ok = is_spd(t.cov);
  if (!ok) {
    t.state << z.x, z.y, z.theta;
    t.cov = r;
  }
  t.state(2) = t.cls == world::ObjectClass::table ? percept::fold_halfturn_angle(t.state(2))
                                                  : geom::wrap_angle(t.state(2));
  return ok;
}

}  // namespace scenesim::fusion

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "scenesim/perception/contour.hpp"
#include "scenesim/perception/grasp.hpp"
#include "scenesim/perception/planar_pose.hpp"
#include "scenesim/perception/quad.hpp"

using namespace scenesim;
using namespace scenesim::geom;
using namespace scenesim::percept;

namespace {

// Rectangle contour with two exactly-collinear points per edge.
std::vector<Vec2> rect_contour(Pose2 pose, double hx, double hy) {
  std::vector<Vec2> local{{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}};
  std::vector<Vec2> out;
  for (int e = 0; e < 4; ++e) {
    Vec2 a = local[e], b = local[(e + 1) % 4];
    out.push_back(transform_from_frame(pose, a));
    out.push_back(transform_from_frame(pose, a + (b - a) * (1.0 / 3.0)));
    out.push_back(transform_from_frame(pose, a + (b - a) * (2.0 / 3.0)));
  }
  return out;
}

double nearest_corner_error(const std::array<Vec2, 4>& got, const std::array<Vec2, 4>& truth) {
  double sum = 0.0;
  for (Vec2 g : got) {
    double best = 1e300;
    for (Vec2 t : truth) best = std::min(best, (g - t).norm());
    sum += best;
  }
  return sum / 4.0;
}

}  // namespace

TEST_SUITE_BEGIN("perception");

TEST_CASE("douglas_peucker: straight run collapses to endpoints") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({0.1 * i, 0.05 * i});
  auto out = douglas_peucker(pts, 0.01);
  REQUIRE(out.size() == 2);
  CHECK(out.front().x == pts.front().x);
  CHECK(out.back().x == pts.back().x);
}

TEST_CASE("douglas_peucker keeps every input within eps of the output") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 64; ++i) pts.push_back({0.05 * i + u(rng) * 0.2, u(rng)});
    double eps = 0.05;
    auto out = douglas_peucker(pts, eps);
    for (Vec2 p : pts) {
      double best = 1e300;
      for (size_t k = 0; k + 1 < out.size(); ++k) {
        best = std::min(best, point_segment_distance(p, out[k], out[k + 1]));
      }
      CHECK(best <= eps + 1e-12);
    }
  }
}

TEST_CASE("closed-contour simplification strips collinear mid-edge points") {
  auto contour = rect_contour({0.4, -0.2, 0.3}, 0.6, 0.4);
  auto out = simplify_closed_contour(contour, 0.01);
  REQUIRE(out.size() == 4);
  // The four survivors are the true corners (in some cyclic order).
  std::vector<Vec2> corners{transform_from_frame({0.4, -0.2, 0.3}, {-0.6, -0.4}),
                            transform_from_frame({0.4, -0.2, 0.3}, {0.6, -0.4}),
                            transform_from_frame({0.4, -0.2, 0.3}, {0.6, 0.4}),
                            transform_from_frame({0.4, -0.2, 0.3}, {-0.6, 0.4})};
  for (Vec2 c : corners) {
    double best = 1e300;
    for (Vec2 o : out) best = std::min(best, (o - c).norm());
    CHECK(best < 1e-12);
  }
}

TEST_CASE("select_four_corners: square is a fixed point, bulge is rejected") {
  std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto sel = select_four_corners(sq);
  CHECK(sel.iou == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sel.indices == std::array<int, 4>{0, 1, 2, 3});

  std::vector<Vec2> bulged{{0, 0}, {1, 0}, {1.08, 0.5}, {1, 1}, {0, 1}};
  auto sel2 = select_four_corners(bulged);
  CHECK(sel2.indices == std::array<int, 4>{0, 1, 3, 4});
}

TEST_CASE("select_four_corners input size limits") {
  std::vector<Vec2> three{{0, 0}, {1, 0}, {1, 1}};
  CHECK_THROWS_AS(select_four_corners(three), std::invalid_argument);
  std::vector<Vec2> many;
  for (int i = 0; i < 13; ++i) many.push_back(heading_vec(2 * kPi * i / 13.0));
  CHECK_THROWS_AS(select_four_corners(many), std::invalid_argument);
}

TEST_CASE("select_four_corners handles a dented rectangle") {
  // One mid-edge point pushed inward: the contour polygon is non-convex.
  std::vector<Vec2> dented{{0, 0}, {0.6, 0.15}, {1.2, 0}, {1.2, 0.8}, {0, 0.8}};
  auto sel = select_four_corners(dented);
  CHECK(sel.iou > 0.7);
  CHECK(sel.indices == std::array<int, 4>{0, 2, 3, 4});
}

TEST_CASE("refine_quad_edges: exact rectangle is a fixed point") {
  auto contour = rect_contour({0, 0, 0}, 0.6, 0.4);
  auto sel = select_four_corners(contour);
  bool changed = true;
  auto refined = refine_quad_edges(sel.corners, contour, &changed);
  for (int i = 0; i < 4; ++i) CHECK((refined[i] - sel.corners[i]).norm() < 1e-9);
}

TEST_CASE("refine_quad_edges improves noisy rectangles on average and never hurts IoU") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> n(0.0, 0.01);
  double err_before = 0.0, err_after = 0.0;
  std::array<Vec2, 4> truth{{{-0.6, -0.4}, {0.6, -0.4}, {0.6, 0.4}, {-0.6, 0.4}}};
  for (int trial = 0; trial < 100; ++trial) {
    auto contour = rect_contour({0, 0, 0}, 0.6, 0.4);
    for (auto& p : contour) {
      p.x += n(rng);
      p.y += n(rng);
    }
    auto sel = select_four_corners(contour);
    auto refined = refine_quad_edges(sel.corners, contour);

    Polygon2 poly{contour};
    double iou_before = polygon_iou(Polygon2{{sel.corners[0], sel.corners[1], sel.corners[2], sel.corners[3]}}, poly);
    double iou_after = polygon_iou(Polygon2{{refined[0], refined[1], refined[2], refined[3]}}, poly);
    CHECK(iou_after >= iou_before - 1e-9);

    err_before += nearest_corner_error(sel.corners, truth);
    err_after += nearest_corner_error(refined, truth);
  }
  CHECK(err_after <= err_before);
}

TEST_CASE("refine_quad_edges parallel guard keeps corners finite") {
  // A sliver quad whose opposite edges are nearly parallel.
  std::array<Vec2, 4> quad{{{0, 0}, {2, 0.001}, {2, 0.0015}, {0, 0.0005}}};
  std::vector<Vec2> contour(quad.begin(), quad.end());
  auto refined = refine_quad_edges(quad, contour);
  for (int i = 0; i < 4; ++i) CHECK((refined[i] - quad[i]).norm() <= 10.0 + 1e-9);
}

TEST_CASE("estimate_planar_pose recovers an exact pose from a rolled quad") {
  std::array<Vec2, 4> model{{{-0.6, -0.4}, {0.6, -0.4}, {0.6, 0.4}, {-0.6, 0.4}}};
  Pose2 truth{1.3, -0.7, 0.3};
  std::array<Vec2, 4> quad;
  for (int i = 0; i < 4; ++i) quad[i] = transform_from_frame(truth, model[(i + 2) % 4]);
  auto fit = estimate_planar_pose(model, quad, true);
  CHECK(fit.rms < 1e-9);
  CHECK(std::abs(fit.pose.x - truth.x) < 1e-9);
  CHECK(std::abs(fit.pose.y - truth.y) < 1e-9);
  CHECK(std::abs(fit.pose.theta - truth.theta) < 1e-9);
  CHECK_FALSE(pose_outlier(fit));
}

TEST_CASE("table yaw folds into the half turn") {
  std::array<Vec2, 4> model{{{-0.6, -0.4}, {0.6, -0.4}, {0.6, 0.4}, {-0.6, 0.4}}};
  double theta_true = 190.0 * kPi / 180.0;
  Pose2 truth{0.5, 2.0, theta_true};
  std::array<Vec2, 4> quad;
  for (int i = 0; i < 4; ++i) quad[i] = transform_from_frame(truth, model[i]);
  auto fit = estimate_planar_pose(model, quad, true);
  CHECK(fit.pose.theta == doctest::Approx(10.0 * kPi / 180.0).epsilon(1e-9));
  CHECK(fit.pose.theta >= 0.0);
  CHECK(fit.pose.theta < kPi);
  CHECK(std::abs(fit.pose.x - truth.x) < 1e-9);
  CHECK(fit.rms < 1e-9);
}

TEST_CASE("estimate_planar_pose is left-invariant") {
  std::array<Vec2, 4> model{{{-0.6, -0.4}, {0.6, -0.4}, {0.6, 0.4}, {-0.6, 0.4}}};
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n(0.0, 0.01);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<Vec2, 4> quad;
    Pose2 base{u(rng), u(rng), u(rng)};
    for (int i = 0; i < 4; ++i) {
      Vec2 w = transform_from_frame(base, model[i]);
      quad[i] = {w.x + n(rng), w.y + n(rng)};
    }
    Pose2 T{u(rng), u(rng), u(rng)};
    std::array<Vec2, 4> moved;
    for (int i = 0; i < 4; ++i) moved[i] = transform_from_frame(T, quad[i]);

    auto f1 = estimate_planar_pose(model, quad, false);
    auto f2 = estimate_planar_pose(model, moved, false);
    Pose2 composed = compose(T, f1.pose);
    CHECK(std::abs(f2.pose.x - composed.x) < 1e-6);
    CHECK(std::abs(f2.pose.y - composed.y) < 1e-6);
    // Rectangle symmetry can flip the branch by half a turn.
    double d = std::abs(angle_diff(f2.pose.theta, composed.theta));
    CHECK(std::min(d, std::abs(d - kPi)) < 1e-6);
  }
}

TEST_CASE("garbage quads are flagged as pose outliers") {
  std::array<Vec2, 4> model{{{-0.6, -0.4}, {0.6, -0.4}, {0.6, 0.4}, {-0.6, 0.4}}};
  std::array<Vec2, 4> junk{{{0, 0}, {3, 0.2}, {1.2, 2.9}, {0.1, 0.4}}};
  auto fit = estimate_planar_pose(model, junk, true);
  CHECK(pose_outlier(fit));
}

TEST_CASE("table grasp pair: canonical and rotated") {
  auto g = table_grasp_pair({0, 0, 0}, -1, 0.9);
  CHECK(g.left.x == doctest::Approx(-0.6));
  CHECK(g.left.y == doctest::Approx(0.2));
  CHECK(g.right.y == doctest::Approx(-0.2));
  CHECK(g.approach_dir.x == doctest::Approx(1.0));
  CHECK(g.dock.x == doctest::Approx(-0.9));
  CHECK(g.dock.theta == doctest::Approx(0.0));
  CHECK((g.left - g.right).norm() == doctest::Approx(0.4));

  // Rotation equivariance.
  Pose2 T{2.0, 1.0, 0.8};
  auto gr = table_grasp_pair(T, -1, 0.9);
  Vec2 want = transform_from_frame(T, {-0.6, 0.2});
  CHECK((gr.left - want).norm() < 1e-9);
  Vec2 dock_want = transform_from_frame(T, {-0.9, 0.0});
  CHECK((gr.dock.position() - dock_want).norm() < 1e-9);
  CHECK(std::abs(angle_diff(gr.dock.theta, 0.8)) < 1e-9);
}

TEST_CASE("chair grasp pair: backrest line fit") {
  Polygon2 fp = make_rect({0, 0}, 0.225, 0.225);
  auto g = chair_grasp_pair({0, 0, 0}, fp, 0.9);
  CHECK(g.left.x == doctest::Approx(-0.225).epsilon(1e-12));
  CHECK(g.left.y == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(g.right.y == doctest::Approx(-0.15).epsilon(1e-12));
  CHECK((g.left - g.right).norm() == doctest::Approx(0.3));
  CHECK(g.dock.x == doctest::Approx(-0.9));
  CHECK(g.dock.theta == doctest::Approx(0.0));

  Polygon2 tri{{{0, 0}, {1, 0}, {0, 1}}};
  CHECK_THROWS_WITH_AS(chair_grasp_pair({0, 0, 0}, tri, 0.9), "bad footprint",
                       std::invalid_argument);
}

TEST_CASE("chair grasp midpoint is robust to vertex noise") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> n(0.0, 0.01);
  int good = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Polygon2 fp = make_rect({0, 0}, 0.225, 0.225);
    for (auto& p : fp.v) {
      p.x += n(rng);
      p.y += n(rng);
    }
    auto g = chair_grasp_pair({0, 0, 0}, fp, 0.9);
    Vec2 mid = (g.left + g.right) * 0.5;
    if ((mid - Vec2{-0.225, 0.0}).norm() <= 0.02) ++good;
  }
  CHECK(good >= 190);  // 95%
}

TEST_SUITE_END();

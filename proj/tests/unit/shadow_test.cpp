#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "santalo/shadow.hpp"
#include "support/generators.hpp"
#include "support/rational_oracle.hpp"
#include "support/systems.hpp"

namespace {

using namespace santalo;

double product(const Polytope& k) { return volume_product(k); }

TEST(BodyAt, ZeroSpeedsAndTimeZeroGiveTheBase) {
  std::mt19937_64 rng(301);
  const PointList pts = testgen::ball_points(rng, 3, 9);
  const Polytope base = Polytope::hull(pts);
  const ShadowSystem still(pts, std::vector<double>(9, 0.0), make_vector({0, 0, 1}), {-1, 1});
  EXPECT_LT(vertex_set_distance(still.body_at(0.7), base), 1e-15);
  const ShadowSystem moving = testgen::random_system(rng, 3, 9);
  EXPECT_LT(vertex_set_distance(moving.body_at(0.0), Polytope::hull(moving.base_points())), 1e-15);
}

TEST(BodyAt, SingleMovingVertexMatchesShoelace) {
  const PointList tri = {make_vector({0, 0}), make_vector({1, 0}), make_vector({0.3, 1})};
  const ShadowSystem up(tri, {0, 0, 1}, make_vector({0, 1}), {0, 2});
  const ShadowSystem side(tri, {0, 0, 1}, make_vector({1, 0}), {0, 2});
  for (double t : {0.0, 0.5, 1.0, 1.7, 2.0}) {
    std::vector<oracle::QPoint> q;
    for (const Vector& v : up.points_at(t)) q.push_back(oracle::exact(v));
    const double exact = oracle::to_double(oracle::area(oracle::hull(q)));
    EXPECT_NEAR(volume(up.body_at(t)), exact, 1e-14);
    EXPECT_NEAR(exact, 0.5 * (1.0 + t), 1e-14);
    EXPECT_NEAR(volume(side.body_at(t)), 0.5, 1e-14);
  }
}

TEST(BodyAt, Errors) {
  const PointList tri = {make_vector({0, 0}), make_vector({1, 0}), make_vector({0.5, 1})};
  const ShadowSystem sys(tri, {0, 0, -4}, make_vector({0, 1}), {0, 1});
  try {
    sys.body_at(0.25);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateAt);
  }
  EXPECT_THROW(sys.body_at(1.5), GeometryError);
  EXPECT_THROW(ShadowSystem(tri, {0, 0, 2}, make_vector({0, 1}), {-1, 0}), GeometryError);
  EXPECT_THROW(ShadowSystem(tri, {0, 0}, make_vector({0, 1}), {0, 1}), GeometryError);
  EXPECT_THROW(ShadowSystem(tri, {0, 0, 1}, make_vector({0, 0}), {0, 1}), GeometryError);
}

TEST(ShadowSystem, TranslationEquivariance) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 10; ++trial) {
    const ShadowSystem sys = testgen::random_system(rng, 3, 8);
    const Vector w = testgen::gaussian(rng, 3);
    const ShadowSystem moved = sys.translated(w);
    for (double t : {-1.0, -0.3, 0.4, 1.0}) {
      EXPECT_LT(vertex_set_distance(moved.body_at(t), translate(sys.body_at(t), w)), 1e-12);
    }
  }
}

TEST(ShadowSystem, ReparametrizationGivesTheSameBodies) {
  std::mt19937_64 rng(305);
  const ShadowSystem sys = testgen::random_system(rng, 2, 7);
  const ShadowSystem fast = sys.reparametrized(2.5);
  for (double t : {-1.0, 0.2, 1.0}) {
    EXPECT_LT(vertex_set_distance(fast.body_at(t / 2.5), sys.body_at(t)), 1e-9);
  }
}

TEST(ShadowSystem, CanonicalFrameRotatesDirectionToLastAxis) {
  std::mt19937_64 rng(307);
  const ShadowSystem sys = testgen::random_system(rng, 3, 8);
  const Matrix r = sys.to_canonical();
  EXPECT_LT((r * sys.direction() - unit_axis(3, 2)).norm(), 1e-14);
  const ShadowSystem c = sys.canonical();
  EXPECT_NEAR(volume(c.body_at(0.3)), volume(sys.body_at(0.3)), 1e-12);
}

TEST(Sweep, FailuresAreRecordedPerRow) {
  const PointList tri = {make_vector({0, 0}), make_vector({1, 0}), make_vector({0.5, 1})};
  const ShadowSystem sys(tri, {0, 0, -4}, make_vector({0, 1}), {0, 1});
  const auto rows = sweep(sys, uniform_grid(sys.interval(), 5));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_FALSE(rows[1].converged);
  for (size_t i : {0u, 2u, 3u, 4u}) {
    EXPECT_TRUE(rows[i].converged) << i;
    EXPECT_TRUE(rows[i].error.empty());
  }
}

TEST(Sweep, WarmStartDoesNotChangeResults) {
  std::mt19937_64 rng(309);
  const ShadowSystem sys = testgen::random_system(rng, 3, 8);
  const auto grid = uniform_grid(sys.interval(), 9);
  const auto warm = sweep(sys, grid);
  SweepOptions cold;
  cold.warm_start = false;
  const auto plain = sweep(sys, grid, cold);
  for (size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(warm[i].polar_volume, plain[i].polar_volume, 1e-12 * plain[i].polar_volume);
    EXPECT_LT((warm[i].santalo - plain[i].santalo).norm(), 1e-6);
  }
}

TEST(Convexity, ConstantSystemHasNoViolation) {
  const Polytope k = testgen::cube(2);
  const ShadowSystem sys(k.vertices(), std::vector<double>(4, 0.0), make_vector({0, 1}), {-1, 1});
  const auto rows = sweep(sys, uniform_grid(sys.interval(), 9));
  const ConvexityVerdict v = check_volume_convexity(rows);
  EXPECT_TRUE(v.is_midpoint_convex);
  EXPECT_NEAR(v.worst_violation, 0.0, 1e-15);
  EXPECT_TRUE(check_polar_convexity(rows).is_midpoint_convex);
}

TEST(Convexity, NeedsThreeEvenlySpacedRows) {
  const Polytope k = testgen::cube(2);
  const ShadowSystem sys(k.vertices(), std::vector<double>(4, 0.0), make_vector({0, 1}), {-1, 1});
  for (const std::vector<double>& grid : {std::vector<double>{-1.0, 1.0}, std::vector<double>{-1.0, 0.0, 0.5, 1.0}}) {
    try {
      check_volume_convexity(sweep(sys, grid));
      FAIL();
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInsufficientGrid);
    }
  }
}

TEST(Convexity, WorstViolationIsReportedWhenConvex) {
  std::vector<SweepRecord> rows;
  for (int i = 0; i < 5; ++i) {
    SweepRecord r;
    r.t = i;
    r.volume = (i - 2.0) * (i - 2.0) + 1.0;
    r.polar_volume = 1.0 / r.volume;
    r.converged = true;
    rows.push_back(r);
  }
  ConvexityVerdict v = check_volume_convexity(rows);
  EXPECT_TRUE(v.is_midpoint_convex);
  EXPECT_NEAR(v.worst_violation, -1.0, 1e-15);
  rows[2].volume = 10.0;
  v = check_volume_convexity(rows);
  EXPECT_FALSE(v.is_midpoint_convex);
  ASSERT_TRUE(v.witness_triple.has_value());
  EXPECT_EQ((*v.witness_triple)[1], 2.0);
}

TEST(Convexity, RandomSystemsAreConvexOnCoarseAndFineGrids) {
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 6; ++trial) {
    const ShadowSystem sys = testgen::random_system(rng, 2 + trial % 2, 7);
    const auto coarse = sweep(sys, uniform_grid(sys.interval(), 33));
    const auto fine = sweep(sys, uniform_grid(sys.interval(), 129));
    EXPECT_EQ(check_volume_convexity(coarse).is_midpoint_convex,
              check_volume_convexity(fine).is_midpoint_convex);
    EXPECT_TRUE(check_volume_convexity(coarse, 1e-9).is_midpoint_convex);
    EXPECT_TRUE(check_polar_convexity(coarse).is_midpoint_convex);
    EXPECT_TRUE(check_polar_convexity(fine).is_midpoint_convex);
  }
}

TEST(AffineFamily, VolumesFollowTheDeterminant) {
  std::mt19937_64 rng(313);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 2 + trial % 2;
    const Polytope k = testgen::random_polytope(rng, d, 8);
    const Vector big_v = testgen::gaussian(rng, d - 1);
    const double v = 0.6, u = -0.3;
    const ShadowSystem sys = affine_family(k, v, big_v, u, {-1, 1});
    const double pk = santalo_point(k).polar_volume;
    const auto rows = sweep(sys, uniform_grid(sys.interval(), 9));
    for (const SweepRecord& r : rows) {
      EXPECT_NEAR(r.volume, volume(k) * (1 + v * r.t), 1e-12);
      EXPECT_NEAR(r.polar_volume, pk / (1 + v * r.t), 1e-9 * pk / (1 + v * r.t));
      EXPECT_NEAR(r.volume * r.polar_volume, volume(k) * pk, 1e-9 * volume(k) * pk);
    }
    const AffineFit fit = affine_converse_check(sys, rows);
    EXPECT_EQ(fit.status, AffineFit::Status::kAffineFamily);
    EXPECT_NEAR(fit.v, v, 1e-9);
    EXPECT_NEAR(fit.u, u, 1e-9);
  }
}

TEST(AffineFamily, PureTranslationKeepsTheProduct) {
  const Polytope k = testgen::standard_simplex(3);
  const ShadowSystem sys = affine_family(k, 0.0, Vector::Zero(2), 1.5, {0, 2});
  for (const SweepRecord& r : sweep(sys, uniform_grid(sys.interval(), 5))) {
    EXPECT_NEAR(r.volume * r.polar_volume, 64.0 / 9.0, 1e-9);
  }
}

TEST(AffineFamily, OrientationReversalIsRejected) {
  try {
    affine_family(testgen::cube(2), 2.0, Vector::Zero(1), 0.0, {-1, 1});
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateMap);
  }
}

TEST(AffineConverse, RandomSystemsAreNotAffine) {
  std::mt19937_64 rng(315);
  const ShadowSystem sys = testgen::random_system(rng, 2, 7);
  const AffineFit fit = affine_converse_check(sys, sweep(sys, uniform_grid(sys.interval(), 9)));
  EXPECT_EQ(fit.status, AffineFit::Status::kNotAffine);
}

TEST(Steiner, SymmetricBodyDoesNotMove) {
  const Polytope k = testgen::cube(3);
  const ShadowSystem sys = steiner_system(k, Hyperplane(make_vector({0, 0, 1}), 0.0));
  for (double s : sys.speeds()) EXPECT_NEAR(s, 0.0, 1e-15);
  EXPECT_LT(vertex_set_distance(sys.body_at(0.3), k), 1e-14);
}

TEST(Steiner, EndpointsAreTheBodyAndItsMirror) {
  std::mt19937_64 rng(317);
  for (int d = 2; d <= 3; ++d) {
    const Polytope k = testgen::random_polytope(rng, d, 9);
    const Hyperplane h(testgen::gaussian(rng, d), 0.2);
    const ShadowSystem sys = steiner_system(k, h);
    EXPECT_LT(vertex_set_distance(sys.body_at(-1.0), k), 1e-12);
    PointList mirrored;
    for (const Vector& v : k.vertices()) mirrored.push_back(h.reflect(v));
    EXPECT_LT(vertex_set_distance(sys.body_at(1.0), Polytope::hull(mirrored)), 1e-12);
    const Polytope sym = sys.body_at(0.0);
    for (const Vector& v : sym.vertices()) EXPECT_TRUE(sym.contains(h.reflect(v), 1e-9));
  }
}

TEST(Steiner, VolumeConstantAndProductGrows) {
  std::mt19937_64 rng(319);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 2;
    const Polytope k = testgen::random_polytope(rng, d, 8);
    const Hyperplane h(testgen::gaussian(rng, d), 0.0);
    const ShadowSystem sys = steiner_system(k, h);
    const auto rows = sweep(sys, uniform_grid(sys.interval(), 9));
    for (const SweepRecord& r : rows) EXPECT_NEAR(r.volume, volume(k), 1e-9 * volume(k));
    const ConvexityVerdict vc = check_volume_convexity(rows);
    EXPECT_TRUE(vc.is_midpoint_convex);
    EXPECT_LE(std::abs(vc.worst_violation), vc.tolerance);
    const ConvexityVerdict pc = check_polar_convexity(rows);
    EXPECT_TRUE(pc.is_midpoint_convex);
    // The reflection symmetry puts the largest polar volume at t = 0.
    for (const SweepRecord& r : rows) EXPECT_LE(r.polar_volume, rows[4].polar_volume * (1 + 1e-9));
    EXPECT_GE(product(steiner_symmetral(k, h)), product(k) - 1e-7);
  }
}

TEST(Steiner, OtherDimensionsAreUnsupported) {
  try {
    steiner_system(testgen::cube(4), Hyperplane(unit_axis(4, 0), 0.0));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDimension);
  }
}

TEST(Brunn, EllipsePolygonPassesAtItsApproximationLevel) {
  PointList pts;
  for (int i = 0; i < 64; ++i) {
    const double a = 2 * M_PI * i / 64;
    pts.push_back(make_vector({2.0 * std::cos(a), 0.7 * std::sin(a)}));
  }
  const Polytope e = Polytope::hull(pts);
  const BrunnReport rep = brunn_midpoint_check(e, 16, 7, 1e-2);
  EXPECT_TRUE(rep.midpoints_coplanar);
  EXPECT_LT(rep.worst_residual, 1e-2);
  std::printf("64-gon midpoint residual %.3g\n", rep.worst_residual);
  // The same polygon is not an ellipse at the default 1e-6 level.
  EXPECT_FALSE(brunn_midpoint_check(e, 16, 7).midpoints_coplanar);
}

TEST(Brunn, TriangleFails) {
  const Polytope t = Polytope::hull({make_vector({0, 0}), make_vector({1, 0}), make_vector({0.2, 1})});
  const BrunnReport rep = brunn_midpoint_check(t, 16, 7, 1e-2);
  EXPECT_FALSE(rep.midpoints_coplanar);
  EXPECT_GT(rep.worst_residual, 1e-2);
}

TEST(Brunn, ParallelogramOnlyAlongItsSides) {
  const Polytope p = Polytope::hull({make_vector({0, 0}), make_vector({2, 0}), make_vector({2.5, 1}),
                                     make_vector({0.5, 1})});
  // Chords parallel to either pair of sides.
  EXPECT_LT(chord_midpoint_residual(p, make_vector({1, 0})), 1e-12);
  EXPECT_LT(chord_midpoint_residual(p, make_vector({0.5, 1})), 1e-12);
  EXPECT_GT(chord_midpoint_residual(p, make_vector({1, 0.3})), 1e-3);
  EXPECT_FALSE(brunn_midpoint_check(p).midpoints_coplanar);
}

}  // namespace

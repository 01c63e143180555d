#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "santalo/polytope.hpp"
#include "support/generators.hpp"
#include "support/rational_oracle.hpp"

namespace {

using namespace santalo;

// Facet count by brute force: a d-subset spans a facet iff all points lie
// weakly on one side of its hyperplane. Coplanar duplicates are collapsed.
int brute_force_facets_3d(const PointList& pts) {
  std::vector<std::pair<Vector, double>> found;
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        Eigen::Vector3d a = pts[i], b = pts[j], c = pts[k];
        Eigen::Vector3d nrm = (b - a).cross(c - a);
        if (nrm.norm() < 1e-12) continue;
        nrm.normalize();
        int pos = 0, neg = 0;
        for (size_t m = 0; m < n; ++m) {
          const double s = nrm.dot(Eigen::Vector3d(pts[m]) - a);
          pos += s > 1e-12;
          neg += s < -1e-12;
        }
        if (pos && neg) continue;
        if (pos) nrm = -nrm;
        const double off = nrm.dot(a);
        bool dup = false;
        for (const auto& [fn, fo] : found) dup |= (fn - Vector(nrm)).norm() < 1e-9 && std::abs(fo - off) < 1e-9;
        if (!dup) found.emplace_back(nrm, off);
      }
  return static_cast<int>(found.size());
}

TEST(ConvexHull, SquareFromFourCorners) {
  const PointList pts = {make_vector({1, 1}), make_vector({-1, 1}), make_vector({-1, -1}),
                         make_vector({1, -1})};
  const auto [verts, h] = convex_hull(pts);
  EXPECT_EQ(verts.size(), 4u);
  EXPECT_EQ(h.halfspaces.size(), 4u);
}

TEST(ConvexHull, InteriorPointIsPruned) {
  const PointList pts = {make_vector({1, 1}), make_vector({-1, 1}), make_vector({0, 0}),
                         make_vector({-1, -1}), make_vector({1, -1})};
  const Polytope p = Polytope::hull(pts);
  EXPECT_EQ(p.vertex_count(), 4u);
  EXPECT_EQ(p.halfspaces().size(), 4u);
  for (const Vector& v : p.vertices()) EXPECT_GT(v.norm(), 1.0);
}

TEST(ConvexHull, EdgeMidpointsAndFaceCentersArePruned) {
  PointList pts;
  // Face centers and edge midpoints of the cube first, so that they enter the
  // incremental hull before the corners do.
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {-1.0, 1.0}) pts.push_back(s * unit_axis(3, axis));
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (double s : {-1.0, 1.0})
        for (double t : {-1.0, 1.0}) pts.push_back(s * unit_axis(3, a) + t * unit_axis(3, b));
  const Polytope cube = testgen::cube(3);
  for (const Vector& v : cube.vertices()) pts.push_back(v);
  const Polytope p = Polytope::hull(pts);
  EXPECT_EQ(p.vertex_count(), 8u);
  EXPECT_EQ(p.halfspaces().size(), 6u);
  EXPECT_NEAR(volume(p), 8.0, 1e-12);
}

TEST(ConvexHull, RandomTetrahedronWithInteriorPointMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    PointList pts = testgen::ball_points(rng, 3, 4);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Vector w(4);
    for (int i = 0; i < 4; ++i) w[i] = u(rng);
    w /= w.sum();
    Vector inside = Vector::Zero(3);
    for (int i = 0; i < 4; ++i) inside += w[i] * pts[static_cast<size_t>(i)];
    pts.insert(pts.begin() + trial % 5, inside);
    const Polytope p = Polytope::hull(pts);
    EXPECT_EQ(p.vertex_count(), 4u);
    EXPECT_EQ(static_cast<int>(p.halfspaces().size()), brute_force_facets_3d(pts));
    for (const Vector& x : pts) EXPECT_TRUE(p.contains(x));
  }
}

TEST(ConvexHull, RandomCloudsAgreeWithBruteForceFacetCount) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const PointList pts = testgen::ball_points(rng, 3, 12);
    const Polytope p = Polytope::hull(pts);
    EXPECT_EQ(static_cast<int>(p.halfspaces().size()), brute_force_facets_3d(pts));
    for (const Vector& x : pts) {
      for (const Halfspace& h : p.halfspaces()) EXPECT_GE(h.slack(x), -1e-9);
    }
  }
}

TEST(ConvexHull, FlatInputIsRejected) {
  const PointList pts = {make_vector({0, 0, 0}), make_vector({1, 0, 0}), make_vector({0, 1, 0}),
                         make_vector({1, 1, 0})};
  try {
    Polytope::hull(pts);
    FAIL() << "expected DegenerateInput";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
  }
}

TEST(ConvexHull, HalfspaceRoundTrip) {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      const Polytope p = testgen::random_polytope(rng, d, d + 6);
      const Polytope q = Polytope::from_halfspaces(p.h_form());
      ASSERT_EQ(p.halfspaces().size(), q.halfspaces().size());
      for (const Halfspace& h : p.halfspaces()) {
        double best = 1e300;
        for (const Halfspace& g : q.halfspaces()) {
          best = std::min(best, (h.normal - g.normal).norm() + std::abs(h.offset - g.offset));
        }
        EXPECT_LT(best, 1e-9);
      }
      EXPECT_LT(vertex_set_distance(p, q), 1e-9);
    }
  }
}

TEST(ConvexHull, RedundantHalfspacesAreDropped) {
  HPolytope h{2, {}};
  h.halfspaces.push_back({make_vector({1, 0}), 1});
  h.halfspaces.push_back({make_vector({-1, 0}), 1});
  h.halfspaces.push_back({make_vector({0, 1}), 1});
  h.halfspaces.push_back({make_vector({0, -1}), 1});
  h.halfspaces.push_back({make_vector({1, 1}), 5});
  const Polytope p = Polytope::from_halfspaces(h);
  EXPECT_EQ(p.halfspaces().size(), 4u);
  EXPECT_NEAR(volume(p), 4.0, 1e-12);
}

TEST(Volume, UnitCubeAndStandardSimplex) {
  EXPECT_NEAR(volume(testgen::cube(3, 0.0, 1.0)), 1.0, 1e-14);
  for (int d = 1; d <= 6; ++d) {
    EXPECT_NEAR(volume(testgen::standard_simplex(d)), 1.0 / factorial(d), 1e-14) << d;
  }
}

TEST(Volume, RandomPolygonsMatchRationalShoelace) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const PointList pts = testgen::ball_points(rng, 2, 9);
    std::vector<oracle::QPoint> q;
    for (const Vector& v : pts) q.push_back(oracle::exact(v));
    const auto hull = oracle::hull(q);
    const Polytope p = Polytope::hull(pts);
    const double exact_area = oracle::to_double(oracle::area(hull));
    EXPECT_NEAR(volume(p), exact_area, 1e-12 * exact_area);
    EXPECT_EQ(p.vertex_count(), hull.size());
    const oracle::QPoint c = oracle::centroid(hull);
    const Vector g = centroid(p);
    EXPECT_NEAR(g[0], oracle::to_double(c.x), 1e-12);
    EXPECT_NEAR(g[1], oracle::to_double(c.y), 1e-12);
  }
}

TEST(Volume, VertexOrderDoesNotMatter) {
  std::mt19937_64 rng(23);
  PointList pts = testgen::ball_points(rng, 3, 15);
  const double v0 = volume(Polytope::hull(pts));
  for (int k = 0; k < 5; ++k) {
    std::shuffle(pts.begin(), pts.end(), rng);
    EXPECT_NEAR(volume(Polytope::hull(pts)), v0, 1e-13 * v0);
  }
}

TEST(Volume, TranslationAndLinearMaps) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3;
    const Polytope p = testgen::random_polytope(rng, d, d + 5);
    const Matrix a = testgen::random_matrix(rng, d);
    const Vector b = testgen::gaussian(rng, d);
    const double v = volume(p);
    EXPECT_NEAR(volume(translate(p, b)), v, 1e-9 * v);
    EXPECT_NEAR(volume(apply_affine(p, a, b)), std::abs(a.determinant()) * v, 1e-9 * v);
  }
}

TEST(Centroid, SimplexAndSquare) {
  std::mt19937_64 rng(31);
  for (int d = 2; d <= 5; ++d) {
    const PointList pts = testgen::ball_points(rng, d, d + 1);
    Vector mean = Vector::Zero(d);
    for (const Vector& v : pts) mean += v;
    mean /= d + 1;
    EXPECT_LT((centroid(Polytope::hull(pts)) - mean).norm(), 1e-12);
  }
  const Vector c = centroid(testgen::cube(2, 0.0, 2.0));
  EXPECT_NEAR(c[0], 1.0, 1e-14);
  EXPECT_NEAR(c[1], 1.0, 1e-14);
}

TEST(Centroid, AffineEquivariance) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope p = testgen::random_polytope(rng, 3, 10);
    const Matrix a = testgen::random_matrix(rng, 3);
    const Vector b = testgen::gaussian(rng, 3);
    EXPECT_LT((centroid(apply_affine(p, a, b)) - (a * centroid(p) + b)).norm(), 1e-11);
  }
}

TEST(Covariance, UnitCube) {
  const Matrix c = covariance(testgen::cube(3, 0.0, 1.0));
  EXPECT_LT((c - Matrix::Identity(3, 3) / 12.0).norm(), 1e-14);
}

TEST(InteriorPoint, SquareIsCentered) {
  const Vector c = interior_point(testgen::cube(2));
  EXPECT_LT(c.norm(), 1e-12);
  EXPECT_NEAR(inradius(testgen::cube(2)), 1.0, 1e-12);
}

TEST(InteriorPoint, RightTriangleIncenter) {
  const Polytope t = Polytope::hull({make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})});
  const Vector c = interior_point(t);
  const double r = 1.0 - std::sqrt(2.0) / 2.0;
  EXPECT_NEAR(c[0], r, 1e-12);
  EXPECT_NEAR(c[1], r, 1e-12);
  for (const Halfspace& h : t.halfspaces()) EXPECT_NEAR(h.slack(c), r, 1e-12);
}

TEST(InteriorPoint, TranslationEquivariant) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope p = testgen::random_polytope(rng, 3, 9);
    const Vector v = testgen::gaussian(rng, 3);
    const Vector c = interior_point(p);
    EXPECT_GT(p.min_slack(c), 0.0);
    // The Chebyshev center can be non-unique; compare radii and membership.
    const Polytope q = translate(p, v);
    const Vector cq = interior_point(q);
    EXPECT_NEAR(q.min_slack(cq), p.min_slack(c), 1e-9);
    EXPECT_NEAR(inradius(q), inradius(p), 1e-9);
  }
}

TEST(Section, CubeMidSlice) {
  const Polytope s = section(testgen::cube(3), 2, 0.0);
  EXPECT_EQ(s.dim(), 2);
  EXPECT_EQ(s.vertex_count(), 4u);
  EXPECT_NEAR(volume(s), 4.0, 1e-13);
}

TEST(Section, SimplexConeScaling) {
  const Polytope s = section(testgen::standard_simplex(3), 2, 0.5);
  EXPECT_NEAR(volume(s), 0.125, 1e-14);
  for (double y : {0.1, 0.3, 0.7, 0.9}) {
    EXPECT_NEAR(section_volume(testgen::standard_simplex(3), 2, y), 0.5 * (1 - y) * (1 - y), 1e-14);
  }
}

TEST(Section, OutsideRangeIsAnError) {
  const Polytope c = testgen::cube(3);
  for (double level : {1.0, -1.0, 2.0}) {
    try {
      section(c, 2, level);
      FAIL();
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kEmptySection);
    }
  }
  EXPECT_EQ(section_volume(c, 2, 1.5), 0.0);
}

TEST(Section, BrunnMinkowskiConcavityOfProfiles) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const Polytope p = testgen::random_polytope(rng, d, d + 6);
    const int axis = trial % d;
    double lo = 1e300, hi = -1e300;
    for (const Vector& v : p.vertices()) {
      lo = std::min(lo, v[axis]);
      hi = std::max(hi, v[axis]);
    }
    std::vector<double> s;
    const int steps = 100;
    for (int i = 1; i < steps; ++i) {
      const double y = lo + (hi - lo) * i / steps;
      s.push_back(std::pow(section_volume(p, axis, y), 1.0 / (d - 1)));
    }
    const double smax = *std::max_element(s.begin(), s.end());
    for (size_t i = 1; i + 1 < s.size(); ++i) {
      EXPECT_GE(s[i] - 0.5 * (s[i - 1] + s[i + 1]), -1e-7 * smax);
    }
  }
}

TEST(Chord, CubeAndSimplex) {
  const Interval c = chord(testgen::cube(3), make_vector({0, 0}));
  EXPECT_NEAR(c.lo, -1.0, 1e-14);
  EXPECT_NEAR(c.hi, 1.0, 1e-14);
  const Interval s = chord(testgen::standard_simplex(3), make_vector({0.25, 0.25}));
  EXPECT_NEAR(s.lo, 0.0, 1e-14);
  EXPECT_NEAR(s.hi, 0.5, 1e-14);
}

TEST(Chord, BoundaryOfProjectionIsRejected) {
  for (const Vector& x : {make_vector({1.0, 0.0}), make_vector({1.5, 0.0})}) {
    try {
      chord(testgen::cube(3), x);
      FAIL();
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kOutsideProjection);
    }
  }
  try {
    chord(testgen::standard_simplex(3), make_vector({0.5, 0.5}));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutsideProjection);
  }
}

TEST(Chord, LowerEndConvexUpperEndConcave) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 2;
    const Polytope p = testgen::random_polytope(rng, d, 10);
    const Vector c = interior_point(p);
    const double r = inradius(p);
    for (int k = 0; k < 20; ++k) {
      const Vector x1 = c.head(d - 1) + 0.9 * r * testgen::in_ball(rng, d - 1);
      const Vector x2 = c.head(d - 1) + 0.9 * r * testgen::in_ball(rng, d - 1);
      const Interval a = chord(p, x1), b = chord(p, x2), m = chord(p, 0.5 * (x1 + x2));
      EXPECT_LE(m.lo, 0.5 * (a.lo + b.lo) + 1e-9);
      EXPECT_GE(m.hi, 0.5 * (a.hi + b.hi) - 1e-9);
    }
  }
}

TEST(ApplyAffine, IdentityScalingAndSingular) {
  const Polytope sq = testgen::cube(2);
  EXPECT_LT(vertex_set_distance(apply_affine(sq, Matrix::Identity(2, 2), Vector::Zero(2)), sq), 1e-15);
  EXPECT_NEAR(volume(apply_affine(sq, 2.0 * Matrix::Identity(2, 2), Vector::Zero(2))), 16.0, 1e-12);
  Matrix sing(2, 2);
  sing << 1, 2, 2, 4;
  try {
    apply_affine(sq, sing, Vector::Zero(2));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularMap);
  }
}

TEST(ApplyAffine, VerticalShearScalesVolumeByDiagonal) {
  // (X, x) -> (X, x + s (v x + <V, X> + u)) has determinant v s + 1.
  const double s = 0.4, v = 0.7;
  const Vector V = make_vector({0.3, -1.2});
  Matrix a = Matrix::Identity(3, 3);
  a(2, 0) = s * V[0];
  a(2, 1) = s * V[1];
  a(2, 2) = v * s + 1.0;
  const Polytope simplex = testgen::standard_simplex(3);
  const Polytope image = apply_affine(simplex, a, make_vector({0, 0, s * 0.5}));
  EXPECT_NEAR(volume(image), volume(simplex) * (v * s + 1.0), 1e-14);
}

TEST(Clip, HalfCube) {
  const Polytope c = clip(testgen::cube(3), make_vector({0, 0, 1}), 0.0);
  EXPECT_NEAR(volume(c), 4.0, 1e-13);
  EXPECT_EQ(c.vertex_count(), 8u);
}

TEST(HyperplaneFrame, RoundTrip) {
  const Hyperplane h(make_vector({1, 2, 2}), 3.0);
  const HyperplaneFrame f(h);
  const Vector x = make_vector({0.3, -0.7, 2.5});
  EXPECT_LT((f.to_global(f.to_local(x), f.height(x)) - x).norm(), 1e-14);
  EXPECT_NEAR(f.height(x), h.signed_distance(x), 1e-14);
  const Matrix r = f.rotation();
  EXPECT_LT((r * r.transpose() - Matrix::Identity(3, 3)).norm(), 1e-14);
}

}  // namespace

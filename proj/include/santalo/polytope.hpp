#pragma once

#include <array>
#include <optional>
#include <utility>

#include "santalo/types.hpp"

namespace santalo {

/// The halfspace <normal, x> <= offset. Normals are stored with unit length.
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  double slack(const Vector& x) const { return offset - normal.dot(x); }
};

struct HPolytope {
  int dim = 0;
  std::vector<Halfspace> halfspaces;
};

/// {x : <normal, x> = offset} with a unit normal.
struct Hyperplane {
  Vector normal;
  double offset = 0.0;

  Hyperplane() = default;
  Hyperplane(Vector n, double b);

  double signed_distance(const Vector& x) const { return normal.dot(x) - offset; }
  Vector reflect(const Vector& x) const;
};

/// One simplex of the boundary triangulation: `vertex` indexes into
/// Polytope::vertices(), `facet` into Polytope::halfspaces().
struct BoundarySimplex {
  std::array<int, kMaxDimension> vertex{};
  int facet = -1;
};

/// A full-dimensional convex polytope carried in both representations.
///
/// Construction always goes through the hull, so every value of this type
/// holds a minimal vertex list, an irredundant facet list with unit outward
/// normals, and a triangulation of the boundary that is consistent with
/// both. A Polytope is immutable once built.
class Polytope {
 public:
  /// conv(points). Throws kDegenerateInput if the points lie in a
  /// lower-dimensional flat and kUnsupportedDimension beyond d = 6.
  static Polytope hull(const PointList& points, double tol = kGeomTol);
  /// Vertex enumeration of a bounded H-polytope.
  static Polytope from_halfspaces(const HPolytope& h, double tol = kGeomTol);

  int dim() const { return dim_; }
  const PointList& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<BoundarySimplex>& boundary() const { return boundary_; }
  /// Index of each vertex in the point list handed to hull().
  const std::vector<int>& source_indices() const { return source_; }
  HPolytope h_form() const { return HPolytope{dim_, halfspaces_}; }

  size_t vertex_count() const { return vertices_.size(); }
  /// The mean of the vertices; interior, cheap, and deterministic.
  Vector vertex_mean() const;
  /// Largest absolute coordinate extent, the length scale for tolerances.
  double scale() const { return scale_; }
  double diameter() const;
  /// Minimum facet slack of x. Positive iff x is interior.
  double min_slack(const Vector& x) const;
  bool contains(const Vector& x, double tol = kGeomTol) const;
  /// Distinct edges of the boundary triangulation (includes facet diagonals).
  std::vector<std::pair<int, int>> triangulation_edges() const;

 private:
  Polytope() = default;
  friend Polytope make_polytope_from_hull_result(int, PointList, std::vector<int>,
                                                 std::vector<Halfspace>,
                                                 std::vector<BoundarySimplex>);

  int dim_ = 0;
  double scale_ = 1.0;
  PointList vertices_;
  std::vector<int> source_;
  std::vector<Halfspace> halfspaces_;
  std::vector<BoundarySimplex> boundary_;
};

/// Returns the pruned vertex set and irredundant facet list of conv(points).
std::pair<PointList, HPolytope> convex_hull(const PointList& points,
                                            double tol = kGeomTol);

double volume(const Polytope& p);
Vector centroid(const Polytope& p);
/// Second moment about the centroid, normalized by volume (the covariance of
/// the uniform distribution on p).
Matrix covariance(const Polytope& p);

/// Chebyshev center (center of the largest inscribed ball).
Vector interior_point(const Polytope& p);
double inradius(const Polytope& p);

/// K(., level): the (d-1)-polytope {Y : (Y, level) in K} with coordinate
/// `axis` removed. Throws kEmptySection unless level is strictly inside the
/// axis range of p.
Polytope section(const Polytope& p, int axis, double level,
                 double tol = kGeomTol);
/// (d-1)-volume of the section, 0 outside the open range or when the
/// section is lower dimensional. Never throws on range problems.
double section_volume(const Polytope& p, int axis, double level,
                      double tol = kGeomTol);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// K(X, .) along the last coordinate: the interval of x with (X, x) in K.
/// Throws kOutsideProjection unless X is interior to the projection.
Interval chord(const Polytope& p, const Vector& reduced);
/// Same as chord() but along an arbitrary coordinate axis and accepting the
/// closed projection; returns nullopt only when the line misses p.
std::optional<Interval> chord_closed(const Polytope& p, const Vector& reduced,
                                     int axis, double tol = kGeomTol);

/// x -> linear * x + shift, vertex-wise. Throws kSingularMap.
Polytope apply_affine(const Polytope& p, const Matrix& linear,
                      const Vector& shift);
Polytope translate(const Polytope& p, const Vector& shift);

/// p intersected with {<normal, x> <= offset}. Throws kDegenerateInput when
/// the result is not full-dimensional.
Polytope clip(const Polytope& p, const Vector& normal, double offset,
              double tol = kGeomTol);

/// Orthonormal coordinates on a hyperplane: x = origin + basis * X + w * normal.
class HyperplaneFrame {
 public:
  explicit HyperplaneFrame(const Hyperplane& h);

  int dim() const { return static_cast<int>(normal_.size()); }
  const Matrix& basis() const { return basis_; }
  const Vector& normal() const { return normal_; }
  Vector to_local(const Vector& x) const;
  double height(const Vector& x) const;
  Vector to_global(const Vector& local, double height = 0.0) const;
  /// Rotation R with R x = (local(x), height(x)) up to the origin shift.
  Matrix rotation() const;

 private:
  Vector normal_;
  Vector origin_;
  Matrix basis_;
};

/// Orthonormal completion: columns span the complement of `v` (unit).
Matrix orthogonal_complement(const Vector& v);

/// Max over both vertex sets of the distance to the nearest vertex of the
/// other set. Equals the Hausdorff distance when the vertex sets match up.
double vertex_set_distance(const Polytope& a, const Polytope& b);

/// Cofactor expansion up to 3x3, LU beyond.
double small_determinant(const Matrix& m);

/// Volume of conv(points) of a point cloud of dimension k, with k = 0
/// treated as counting measure 1.
double hull_volume(const PointList& points, double tol = kGeomTol);

}  // namespace santalo

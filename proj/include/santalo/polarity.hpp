#pragma once

#include "santalo/polytope.hpp"

namespace santalo {

/// K^{*z} = {y : <y, x - z> <= 1 for x in K}, stored about its own origin.
struct PolarBody {
  Polytope base;
  Vector center;
  Polytope polar;
  double polar_volume = 0.0;
};

/// Throws kCenterNotInterior unless every facet slack of z exceeds tol * scale.
PolarBody polar(const Polytope& k, const Vector& z, double tol = kGeomTol);

/// A half-volume ratio that may have run off to 0 or infinity.
struct Ratio {
  enum class Kind { kFinite, kZero, kInfinite };
  Kind kind = Kind::kFinite;
  double value = 0.0;

  bool finite() const { return kind == Kind::kFinite; }
};

struct HalfVolumes {
  double b_plus = 0.0;
  double b_minus = 0.0;
  Ratio ratio;
};

Ratio make_ratio(double b_plus, double b_minus, double vol_tol = kVolumeTol);

/// Polar volume on each side of {y_axis = 0}, by exact clipping of K^{*z}.
HalfVolumes half_volumes(const Polytope& k, const Vector& z, int axis,
                         double tol = kGeomTol);

/// v -> B_+/B_- of K about (C, v), C being the coordinates other than `axis`.
class RatioCurve {
 public:
  RatioCurve(Polytope k, Vector reduced, int axis, double tol = kGeomTol);

  const Interval& chord() const { return chord_; }
  Vector center_at(double v) const;
  /// kZero at or below the chord, kInfinite at or above it.
  Ratio operator()(double v) const;
  HalfVolumes half_volumes_at(double v) const;

 private:
  Polytope k_;
  Vector reduced_;
  int axis_;
  double tol_;
  Interval chord_;
};

RatioCurve half_volume_ratio_curve(const Polytope& k, const Vector& reduced,
                                   int axis, double tol = kGeomTol);

/// Re-evaluates |K^{*z}| and its centroid for many z without re-running the
/// hull. z -> K^{*z} is a projective change of coordinates, so one boundary
/// triangulation of the polar serves every interior z.
class PolarEvaluator {
 public:
  explicit PolarEvaluator(const Polytope& k);

  struct Value {
    double volume = 0.0;
    Vector centroid;  // in polar coordinates (origin = z)
  };

  int dim() const { return static_cast<int>(normals_.cols()); }
  const Polytope& body() const { return k_; }
  /// Smallest facet slack of z; the evaluator needs it positive.
  double min_slack(const Vector& z) const;
  Value operator()(const Vector& z) const;
  PointList polar_vertices(const Vector& z) const;
  double polar_diameter(const Vector& z) const;

 private:
  Polytope k_;
  Matrix normals_;   // one row per facet of K
  Vector offsets_;
  std::vector<std::array<int, kMaxDimension>> simplices_;  // facet indices of K
};

}  // namespace santalo

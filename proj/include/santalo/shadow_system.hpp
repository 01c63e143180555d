#pragma once

#include "santalo/polytope.hpp"

namespace santalo {

/// K_t = conv{x_i + speed_i * t * direction}, t in [lo, hi].
class ShadowSystem {
 public:
  /// Requires one speed per point, a unit direction and lo < hi. The body
  /// must be full-dimensional at lo, hi and the midpoint.
  ShadowSystem(PointList base_points, std::vector<double> speeds, Vector direction,
               Interval interval, double tol = kGeomTol);

  int dim() const { return static_cast<int>(direction_.size()); }
  const PointList& base_points() const { return base_; }
  const std::vector<double>& speeds() const { return speeds_; }
  const Vector& direction() const { return direction_; }
  const Interval& interval() const { return interval_; }
  double tolerance() const { return tol_; }

  PointList points_at(double t) const;
  /// Throws kDegenerateAt if K_t is lower-dimensional, kInvalidArgument outside the interval.
  Polytope body_at(double t) const;

  /// Householder reflection R with R * direction = e_d (identity if already so).
  Matrix to_canonical() const;
  /// The same system in coordinates where the direction is the last axis.
  ShadowSystem canonical() const;
  ShadowSystem translated(const Vector& w) const;
  /// Speeds times c over the interval divided by c (c > 0): the same bodies.
  ShadowSystem reparametrized(double c) const;

 private:
  PointList base_;
  std::vector<double> speeds_;
  Vector direction_;
  Interval interval_;
  double tol_;
};

std::vector<double> uniform_grid(const Interval& interval, int points);

}  // namespace santalo

#include "santalo/shadow_system.hpp"

#include <cmath>
#include <string>

namespace santalo {

ShadowSystem::ShadowSystem(PointList base_points, std::vector<double> speeds, Vector direction,
                           Interval interval, double tol)
    : base_(std::move(base_points)),
      speeds_(std::move(speeds)),
      direction_(std::move(direction)),
      interval_(interval),
      tol_(tol) {
  if (base_.empty() || base_.size() != speeds_.size()) {
    fail(ErrorCode::kInvalidArgument, "shadow system: need one speed per base point");
  }
  const double len = direction_.norm();
  if (!(len > 0.0)) fail(ErrorCode::kDegenerateInput, "shadow system: zero direction");
  if (std::abs(len - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidArgument, "shadow system: direction must be a unit vector");
  }
  for (const Vector& p : base_) {
    if (p.size() != direction_.size() || !p.allFinite()) {
      fail(ErrorCode::kInvalidArgument, "shadow system: bad base point");
    }
  }
  for (double s : speeds_) {
    if (!std::isfinite(s)) fail(ErrorCode::kInvalidArgument, "shadow system: non-finite speed");
  }
  if (!(interval_.lo < interval_.hi) || !std::isfinite(interval_.lo) ||
      !std::isfinite(interval_.hi)) {
    fail(ErrorCode::kInvalidArgument, "shadow system: empty interval");
  }
  for (double t : {interval_.lo, interval_.mid(), interval_.hi}) body_at(t);
}

PointList ShadowSystem::points_at(double t) const {
  PointList out(base_.size());
  for (size_t i = 0; i < base_.size(); ++i) out[i] = base_[i] + speeds_[i] * t * direction_;
  return out;
}

Polytope ShadowSystem::body_at(double t) const {
  const double slop = 1e-12 * std::max(1.0, interval_.hi - interval_.lo);
  if (!(t >= interval_.lo - slop && t <= interval_.hi + slop)) {
    fail(ErrorCode::kInvalidArgument, "shadow system: t outside the interval");
  }
  try {
    return Polytope::hull(points_at(t), tol_);
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::kDegenerateInput) throw;
    fail(ErrorCode::kDegenerateAt, "shadow system: body degenerates at t = " + std::to_string(t));
  }
}

Matrix ShadowSystem::to_canonical() const {
  const int d = dim();
  Vector w = direction_ - unit_axis(d, d - 1);
  const double n2 = w.squaredNorm();
  if (n2 < 1e-30) return Matrix::Identity(d, d);
  return Matrix::Identity(d, d) - 2.0 / n2 * w * w.transpose();
}

ShadowSystem ShadowSystem::canonical() const {
  const Matrix r = to_canonical();
  PointList pts;
  pts.reserve(base_.size());
  for (const Vector& p : base_) pts.push_back(r * p);
  return ShadowSystem(std::move(pts), speeds_, unit_axis(dim(), dim() - 1), interval_, tol_);
}

ShadowSystem ShadowSystem::translated(const Vector& w) const {
  PointList pts = base_;
  for (Vector& p : pts) p += w;
  return ShadowSystem(std::move(pts), speeds_, direction_, interval_, tol_);
}

ShadowSystem ShadowSystem::reparametrized(double c) const {
  if (!(c > 0.0)) fail(ErrorCode::kInvalidArgument, "reparametrize: factor must be positive");
  std::vector<double> s = speeds_;
  for (double& v : s) v *= c;
  return ShadowSystem(base_, std::move(s), direction_,
                      Interval{interval_.lo / c, interval_.hi / c}, tol_);
}

std::vector<double> uniform_grid(const Interval& interval, int points) {
  if (points < 2) fail(ErrorCode::kInsufficientGrid, "grid: need at least two points");
  std::vector<double> g(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    g[static_cast<size_t>(i)] = interval.lo + (interval.hi - interval.lo) * i / (points - 1);
  }
  g.back() = interval.hi;
  return g;
}

}  // namespace santalo

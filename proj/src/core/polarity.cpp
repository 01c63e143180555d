#include "santalo/polarity.hpp"

#include <cmath>

namespace santalo {

namespace {

void require_interior(const Polytope& k, const Vector& z, double tol) {
  if (z.size() != k.dim()) fail(ErrorCode::kInvalidArgument, "polar: center has wrong dimension");
  if (!(k.min_slack(z) > tol * k.scale())) {
    fail(ErrorCode::kCenterNotInterior, "polar: center is not interior to the body");
  }
}

}  // namespace

PolarBody polar(const Polytope& k, const Vector& z, double tol) {
  require_interior(k, z, tol);
  PointList pts;
  pts.reserve(k.halfspaces().size());
  for (const Halfspace& h : k.halfspaces()) pts.push_back(h.normal / h.slack(z));
  PolarBody out{k, z, Polytope::hull(pts, tol), 0.0};
  out.polar_volume = volume(out.polar);
  return out;
}

Ratio make_ratio(double b_plus, double b_minus, double vol_tol) {
  const double total = b_plus + b_minus;
  if (b_minus < vol_tol * total) return {Ratio::Kind::kInfinite, 0.0};
  if (b_plus < vol_tol * total) return {Ratio::Kind::kZero, 0.0};
  return {Ratio::Kind::kFinite, b_plus / b_minus};
}

HalfVolumes half_volumes(const Polytope& k, const Vector& z, int axis, double tol) {
  if (axis < 0 || axis >= k.dim()) fail(ErrorCode::kInvalidArgument, "half_volumes: bad axis");
  const PolarBody pb = polar(k, z, tol);
  const Vector e = unit_axis(k.dim(), axis);
  HalfVolumes hv;
  hv.b_plus = volume(clip(pb.polar, -e, 0.0, tol));
  hv.b_minus = volume(clip(pb.polar, e, 0.0, tol));
  hv.ratio = make_ratio(hv.b_plus, hv.b_minus);
  return hv;
}

RatioCurve::RatioCurve(Polytope k, Vector reduced, int axis, double tol)
    : k_(std::move(k)), reduced_(std::move(reduced)), axis_(axis), tol_(tol) {
  if (axis_ < 0 || axis_ >= k_.dim() || reduced_.size() != k_.dim() - 1) {
    fail(ErrorCode::kInvalidArgument, "ratio curve: bad axis or line coordinates");
  }
  const auto c = chord_closed(k_, reduced_, axis_, tol_);
  if (!c || !(c->length() > tol_ * k_.scale()) ||
      !(k_.min_slack(center_at(c->mid())) > tol_ * k_.scale())) {
    fail(ErrorCode::kLineMissesBody, "ratio curve: line does not meet the interior");
  }
  chord_ = *c;
}

Vector RatioCurve::center_at(double v) const { return insert_coordinate(reduced_, axis_, v); }

HalfVolumes RatioCurve::half_volumes_at(double v) const {
  return half_volumes(k_, center_at(v), axis_, tol_);
}

Ratio RatioCurve::operator()(double v) const {
  const double eps = tol_ * k_.scale();
  if (v <= chord_.lo + eps) return {Ratio::Kind::kZero, 0.0};
  if (v >= chord_.hi - eps) return {Ratio::Kind::kInfinite, 0.0};
  try {
    return half_volumes_at(v).ratio;
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::kCenterNotInterior) throw;
    // The line runs through the interior, so the failing center hugs an end.
    return v < chord_.mid() ? Ratio{Ratio::Kind::kZero, 0.0} : Ratio{Ratio::Kind::kInfinite, 0.0};
  }
}

RatioCurve half_volume_ratio_curve(const Polytope& k, const Vector& reduced, int axis,
                                   double tol) {
  return RatioCurve(k, reduced, axis, tol);
}

PolarEvaluator::PolarEvaluator(const Polytope& k) : k_(k) {
  const int d = k.dim();
  const auto& hs = k.halfspaces();
  normals_.resize(static_cast<Eigen::Index>(hs.size()), d);
  offsets_.resize(static_cast<Eigen::Index>(hs.size()));
  for (size_t i = 0; i < hs.size(); ++i) {
    normals_.row(static_cast<Eigen::Index>(i)) = hs[i].normal.transpose();
    offsets_[static_cast<Eigen::Index>(i)] = hs[i].offset;
  }
  const Polytope ref = polar(k, interior_point(k)).polar;
  const std::vector<int>& facet_of = ref.source_indices();
  simplices_.reserve(ref.boundary().size());
  for (const BoundarySimplex& s : ref.boundary()) {
    std::array<int, kMaxDimension> f{};
    for (int i = 0; i < d; ++i) {
      f[static_cast<size_t>(i)] = facet_of[static_cast<size_t>(s.vertex[static_cast<size_t>(i)])];
    }
    simplices_.push_back(f);
  }
}

double PolarEvaluator::min_slack(const Vector& z) const {
  return (offsets_ - normals_ * z).minCoeff();
}

PointList PolarEvaluator::polar_vertices(const Vector& z) const {
  const Vector s = offsets_ - normals_ * z;
  if (!(s.minCoeff() > 0.0)) {
    fail(ErrorCode::kCenterNotInterior, "polar: center is not interior to the body");
  }
  PointList out(static_cast<size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    out[static_cast<size_t>(i)] = normals_.row(i).transpose() / s[i];
  }
  return out;
}

PolarEvaluator::Value PolarEvaluator::operator()(const Vector& z) const {
  const int d = dim();
  const PointList p = polar_vertices(z);
  const double inv_fact = 1.0 / factorial(d);
  Value out{0.0, Vector::Zero(d)};
  Matrix m(d, d);
  for (const auto& f : simplices_) {
    for (int i = 0; i < d; ++i) m.col(i) = p[static_cast<size_t>(f[static_cast<size_t>(i)])];
    const double v = std::abs(small_determinant(m)) * inv_fact;
    out.volume += v;
    out.centroid += v / (d + 1) * m.rowwise().sum();
  }
  out.centroid /= out.volume;
  return out;
}

double PolarEvaluator::polar_diameter(const Vector& z) const {
  const PointList p = polar_vertices(z);
  double best = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = i + 1; j < p.size(); ++j) best = std::max(best, (p[i] - p[j]).squaredNorm());
  }
  return std::sqrt(best);
}

}  // namespace santalo

#include "santalo/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "santalo/lp.hpp"

namespace santalo {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kEmptySection: return "EmptySection";
    case ErrorCode::kOutsideProjection: return "OutsideProjection";
    case ErrorCode::kSingularMap: return "SingularMap";
    case ErrorCode::kCenterNotInterior: return "CenterNotInterior";
    case ErrorCode::kLineMissesBody: return "LineMissesBody";
    case ErrorCode::kBracketFailure: return "BracketFailure";
    case ErrorCode::kMaxIterations: return "MaxIterations";
    case ErrorCode::kDegenerateAt: return "DegenerateAt";
    case ErrorCode::kDegenerateMap: return "DegenerateMap";
    case ErrorCode::kInsufficientGrid: return "InsufficientGrid";
    case ErrorCode::kTooManyVertices: return "TooManyVertices";
    case ErrorCode::kGeometryInconsistent: return "GeometryInconsistent";
    case ErrorCode::kNotInCone: return "NotInCone";
    case ErrorCode::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::kLpUnbounded: return "LpUnbounded";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw GeometryError(code, what);
}

Vector insert_coordinate(const Vector& reduced, int axis, double value) {
  const Eigen::Index d = reduced.size() + 1;
  Vector out(d);
  for (Eigen::Index i = 0, j = 0; i < d; ++i) {
    out[i] = (i == axis) ? value : reduced[j++];
  }
  return out;
}

Vector drop_coordinate(const Vector& full, int axis) {
  Vector out(full.size() - 1);
  for (Eigen::Index i = 0, j = 0; i < full.size(); ++i) {
    if (i != axis) out[j++] = full[i];
  }
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Hyperplane::Hyperplane(Vector n, double b) : normal(std::move(n)), offset(b) {
  const double len = normal.norm();
  if (!(len > 0.0) || !std::isfinite(len)) {
    fail(ErrorCode::kDegenerateInput, "hyperplane: zero normal");
  }
  normal /= len;
  offset /= len;
}

Vector Hyperplane::reflect(const Vector& x) const {
  return x - 2.0 * signed_distance(x) * normal;
}

Vector Polytope::vertex_mean() const {
  Vector m = Vector::Zero(dim_);
  for (const Vector& v : vertices_) m += v;
  return m / static_cast<double>(vertices_.size());
}

double Polytope::diameter() const {
  double best = 0.0;
  for (size_t i = 0; i < vertices_.size(); ++i) {
    for (size_t j = i + 1; j < vertices_.size(); ++j) {
      best = std::max(best, (vertices_[i] - vertices_[j]).squaredNorm());
    }
  }
  return std::sqrt(best);
}

double Polytope::min_slack(const Vector& x) const {
  double s = std::numeric_limits<double>::infinity();
  for (const Halfspace& h : halfspaces_) s = std::min(s, h.slack(x));
  return s;
}

bool Polytope::contains(const Vector& x, double tol) const {
  return min_slack(x) >= -tol * scale_;
}

std::vector<std::pair<int, int>> Polytope::triangulation_edges() const {
  std::set<std::pair<int, int>> edges;
  for (const BoundarySimplex& s : boundary_) {
    for (int i = 0; i < dim_; ++i) {
      for (int j = i + 1; j < dim_; ++j) {
        int a = s.vertex[static_cast<size_t>(i)];
        int b = s.vertex[static_cast<size_t>(j)];
        if (a > b) std::swap(a, b);
        edges.emplace(a, b);
      }
    }
  }
  if (dim_ == 1) edges.emplace(0, 1);
  return {edges.begin(), edges.end()};
}

std::pair<PointList, HPolytope> convex_hull(const PointList& points, double tol) {
  Polytope p = Polytope::hull(points, tol);
  return {p.vertices(), p.h_form()};
}

Polytope Polytope::from_halfspaces(const HPolytope& h, double tol) {
  const int d = h.dim;
  if (d < 1 || d > kMaxDimension) {
    fail(ErrorCode::kUnsupportedDimension, "from_halfspaces: bad dimension");
  }
  if (h.halfspaces.size() < static_cast<size_t>(d + 1)) {
    fail(ErrorCode::kDegenerateInput, "from_halfspaces: too few halfspaces");
  }
  Matrix normals(static_cast<Eigen::Index>(h.halfspaces.size()), d);
  Vector offsets(static_cast<Eigen::Index>(h.halfspaces.size()));
  for (size_t i = 0; i < h.halfspaces.size(); ++i) {
    const Halfspace& hs = h.halfspaces[i];
    if (hs.normal.size() != d) fail(ErrorCode::kInvalidArgument, "from_halfspaces: normal dimension");
    const double len = hs.normal.norm();
    if (!(len > 0.0)) fail(ErrorCode::kDegenerateInput, "from_halfspaces: zero normal");
    normals.row(static_cast<Eigen::Index>(i)) = hs.normal.transpose() / len;
    offsets[static_cast<Eigen::Index>(i)] = hs.offset / len;
  }
  const auto [center, radius] = lp::chebyshev_center(normals, offsets);
  (void)radius;

  // Vertex enumeration through the dual: the polar about `center` has one
  // vertex per halfspace, and each of its facets is a primal vertex.
  PointList dual;
  dual.reserve(static_cast<size_t>(normals.rows()));
  for (Eigen::Index i = 0; i < normals.rows(); ++i) {
    const double slack = offsets[i] - normals.row(i).dot(center);
    dual.push_back(normals.row(i).transpose() / slack);
  }
  Polytope q = Polytope::hull(dual, tol);
  PointList primal;
  for (const Halfspace& f : q.halfspaces()) {
    primal.push_back(center + f.normal / f.offset);
  }
  return Polytope::hull(primal, tol);
}

double small_determinant(const Matrix& m) {
  switch (m.rows()) {
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: return m.partialPivLu().determinant();
  }
}

namespace {

struct Moments {
  double vol = 0.0;
  Vector first;   // integral of (x - apex)
  Matrix second;  // integral of (x - apex)(x - apex)^T
};

Moments moments(const Polytope& p, bool want_second) {
  const int d = p.dim();
  const Vector apex = p.vertex_mean();
  Moments out;
  out.first = Vector::Zero(d);
  if (want_second) out.second = Matrix::Zero(d, d);
  const double inv_fact = 1.0 / factorial(d);
  Matrix m(d, d);
  Vector sum(d);
  for (const BoundarySimplex& s : p.boundary()) {
    for (int i = 0; i < d; ++i) {
      m.col(i) = p.vertices()[static_cast<size_t>(s.vertex[static_cast<size_t>(i)])] - apex;
    }
    const double v = std::abs(small_determinant(m)) * inv_fact;
    sum = m.rowwise().sum();
    out.vol += v;
    out.first += v / (d + 1) * sum;
    if (want_second) {
      out.second += v / ((d + 1.0) * (d + 2.0)) * (m * m.transpose() + sum * sum.transpose());
    }
  }
  return out;
}

}  // namespace

double volume(const Polytope& p) { return moments(p, false).vol; }

Vector centroid(const Polytope& p) {
  const Moments mo = moments(p, false);
  return p.vertex_mean() + mo.first / mo.vol;
}

Matrix covariance(const Polytope& p) {
  const Moments mo = moments(p, true);
  const Vector g = mo.first / mo.vol;
  return mo.second / mo.vol - g * g.transpose();
}

namespace {

std::pair<Vector, double> chebyshev(const Polytope& p) {
  const int d = p.dim();
  const Vector shift = p.vertex_mean();
  Matrix normals(static_cast<Eigen::Index>(p.halfspaces().size()), d);
  Vector offsets(normals.rows());
  for (size_t i = 0; i < p.halfspaces().size(); ++i) {
    normals.row(static_cast<Eigen::Index>(i)) = p.halfspaces()[i].normal.transpose();
    offsets[static_cast<Eigen::Index>(i)] = p.halfspaces()[i].slack(shift);
  }
  auto [c, r] = lp::chebyshev_center(normals, offsets);
  return {c + shift, r};
}

}  // namespace

Vector interior_point(const Polytope& p) { return chebyshev(p).first; }
double inradius(const Polytope& p) { return chebyshev(p).second; }

namespace {

PointList section_points(const Polytope& p, int axis, double level, double eps) {
  PointList pts;
  const PointList& v = p.vertices();
  for (const Vector& x : v) {
    if (std::abs(x[axis] - level) <= eps) pts.push_back(drop_coordinate(x, axis));
  }
  for (const auto& [a, b] : p.triangulation_edges()) {
    const Vector& xa = v[static_cast<size_t>(a)];
    const Vector& xb = v[static_cast<size_t>(b)];
    const double da = xa[axis] - level;
    const double db = xb[axis] - level;
    if ((da < -eps && db > eps) || (da > eps && db < -eps)) {
      const double lam = da / (da - db);
      Vector x = xa + lam * (xb - xa);
      pts.push_back(drop_coordinate(x, axis));
    }
  }
  return pts;
}

}  // namespace

Polytope section(const Polytope& p, int axis, double level, double tol) {
  if (p.dim() < 2) fail(ErrorCode::kInvalidArgument, "section: dimension must be >= 2");
  if (axis < 0 || axis >= p.dim()) fail(ErrorCode::kInvalidArgument, "section: bad axis");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Vector& x : p.vertices()) {
    lo = std::min(lo, x[axis]);
    hi = std::max(hi, x[axis]);
  }
  const double eps = tol * p.scale();
  if (!(level > lo + eps && level < hi - eps)) {
    fail(ErrorCode::kEmptySection, "section: level outside the open axis range");
  }
  return Polytope::hull(section_points(p, axis, level, eps), tol);
}

double section_volume(const Polytope& p, int axis, double level, double tol) {
  try {
    return volume(section(p, axis, level, tol));
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::kEmptySection || e.code() == ErrorCode::kDegenerateInput) {
      return 0.0;
    }
    throw;
  }
}

std::optional<Interval> chord_closed(const Polytope& p, const Vector& reduced,
                                     int axis, double tol) {
  const double eps = tol * p.scale();
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const Halfspace& h : p.halfspaces()) {
    const double nx = h.normal[axis];
    const double rest = h.normal.dot(insert_coordinate(reduced, axis, 0.0));
    const double rhs = h.offset - rest;
    if (std::abs(nx) <= 1e-12) {
      if (rhs < -eps) return std::nullopt;
      continue;
    }
    if (nx > 0.0) {
      hi = std::min(hi, rhs / nx);
    } else {
      lo = std::max(lo, rhs / nx);
    }
  }
  if (lo > hi + eps) return std::nullopt;
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  return Interval{lo, hi};
}

Interval chord(const Polytope& p, const Vector& reduced) {
  const int axis = p.dim() - 1;
  if (reduced.size() != p.dim() - 1) fail(ErrorCode::kInvalidArgument, "chord: dimension");
  const double eps = p.scale() * kGeomTol;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const Halfspace& h : p.halfspaces()) {
    const double nx = h.normal[axis];
    const double rhs = h.offset - h.normal.head(axis).dot(reduced);
    if (std::abs(nx) <= 1e-12) {
      if (rhs <= eps) fail(ErrorCode::kOutsideProjection, "chord: X outside the open projection");
      continue;
    }
    if (nx > 0.0) {
      hi = std::min(hi, rhs / nx);
    } else {
      lo = std::max(lo, rhs / nx);
    }
  }
  if (!(hi - lo > eps)) {
    fail(ErrorCode::kOutsideProjection, "chord: X outside the open projection");
  }
  return Interval{lo, hi};
}

Polytope apply_affine(const Polytope& p, const Matrix& linear, const Vector& shift) {
  const int d = p.dim();
  if (linear.rows() != d || linear.cols() != d || shift.size() != d) {
    fail(ErrorCode::kInvalidArgument, "apply_affine: dimension mismatch");
  }
  const double det = linear.partialPivLu().determinant();
  const double norm = linear.norm();
  if (!(std::abs(det) > 1e-14 * std::pow(norm, d))) {
    fail(ErrorCode::kSingularMap, "apply_affine: linear part is singular");
  }
  PointList pts;
  pts.reserve(p.vertex_count());
  for (const Vector& v : p.vertices()) pts.push_back(linear * v + shift);
  return Polytope::hull(pts);
}

Polytope translate(const Polytope& p, const Vector& shift) {
  return apply_affine(p, Matrix::Identity(p.dim(), p.dim()), shift);
}

Polytope clip(const Polytope& p, const Vector& normal, double offset, double tol) {
  const double eps = tol * p.scale();
  PointList pts;
  const PointList& v = p.vertices();
  for (const Vector& x : v) {
    if (normal.dot(x) - offset <= eps) pts.push_back(x);
  }
  for (const auto& [a, b] : p.triangulation_edges()) {
    const double da = normal.dot(v[static_cast<size_t>(a)]) - offset;
    const double db = normal.dot(v[static_cast<size_t>(b)]) - offset;
    if ((da < -eps && db > eps) || (da > eps && db < -eps)) {
      const double lam = da / (da - db);
      pts.push_back(v[static_cast<size_t>(a)] + lam * (v[static_cast<size_t>(b)] - v[static_cast<size_t>(a)]));
    }
  }
  if (pts.size() < static_cast<size_t>(p.dim() + 1)) {
    fail(ErrorCode::kDegenerateInput, "clip: result is not full-dimensional");
  }
  return Polytope::hull(pts, tol);
}

Matrix orthogonal_complement(const Vector& v) {
  const Eigen::Index d = v.size();
  Eigen::HouseholderQR<Matrix> qr{Matrix(v)};
  Matrix q = qr.householderQ();
  return q.rightCols(d - 1);
}

HyperplaneFrame::HyperplaneFrame(const Hyperplane& h)
    : normal_(h.normal), origin_(h.offset * h.normal), basis_(orthogonal_complement(h.normal)) {}

Vector HyperplaneFrame::to_local(const Vector& x) const {
  return basis_.transpose() * (x - origin_);
}

double HyperplaneFrame::height(const Vector& x) const {
  return normal_.dot(x - origin_);
}

Vector HyperplaneFrame::to_global(const Vector& local, double height) const {
  return origin_ + basis_ * local + height * normal_;
}

Matrix HyperplaneFrame::rotation() const {
  Matrix r(dim(), dim());
  r.topRows(dim() - 1) = basis_.transpose();
  r.row(dim() - 1) = normal_.transpose();
  return r;
}

double vertex_set_distance(const Polytope& a, const Polytope& b) {
  auto one_way = [](const Polytope& x, const Polytope& y) {
    double worst = 0.0;
    for (const Vector& p : x.vertices()) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vector& q : y.vertices()) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

double hull_volume(const PointList& points, double tol) {
  if (points.empty()) return 0.0;
  if (points.front().size() == 0) return 1.0;
  return volume(Polytope::hull(points, tol));
}

}  // namespace santalo

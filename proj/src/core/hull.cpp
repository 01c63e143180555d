// Incremental (beneath-beyond) convex hull for dimensions 1..6.
//
// Facets are kept simplicial during construction; a point is added when it
// lies strictly beyond at least one facet, and the visible region is replaced
// by the cone from the point over its horizon ridges. Coplanar facets are
// merged afterwards into the irredundant halfspace list, and vertices whose
// incident facet normals do not span the space are pruned before a final
// re-run.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "santalo/polytope.hpp"

namespace santalo {

namespace {

struct SimplexFacet {
  std::array<int, kMaxDimension> v{};
  Vector normal;
  double offset = 0.0;
  bool alive = true;
};

using Ridge = std::array<int, kMaxDimension - 1>;

struct RawHull {
  std::vector<int> used;  // indices into the input points, facet vertices
  std::vector<SimplexFacet> facets;
};

double coordinate_extent(const PointList& points) {
  Vector lo = points.front();
  Vector hi = points.front();
  for (const Vector& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).maxCoeff();
}

void set_plane(SimplexFacet& f, const PointList& pts, int d, const Vector& inner) {
  const Vector& q0 = pts[static_cast<size_t>(f.v[0])];
  Matrix m(d, d - 1);
  for (int i = 1; i < d; ++i) {
    m.col(i - 1) = pts[static_cast<size_t>(f.v[static_cast<size_t>(i)])] - q0;
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  f.normal = q.col(d - 1);
  f.offset = f.normal.dot(q0);
  if (f.normal.dot(inner) > f.offset) {
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
}

RawHull incremental_hull(const PointList& pts, const std::vector<int>& order,
                         int d, double eps) {
  // Initial simplex: greedy farthest points from the growing affine span.
  std::vector<int> simplex;
  simplex.push_back(order.front());
  for (int idx : order) {
    const Vector& p = pts[static_cast<size_t>(idx)];
    const Vector& s = pts[static_cast<size_t>(simplex.front())];
    if (p[0] < s[0] || (p[0] == s[0] && idx < simplex.front())) {
      simplex.front() = idx;
    }
  }
  Matrix span(d, 0);
  const Vector origin = pts[static_cast<size_t>(simplex.front())];
  for (int k = 1; k <= d; ++k) {
    double best = -1.0;
    int best_idx = -1;
    Vector best_res;
    for (int idx : order) {
      Vector r = pts[static_cast<size_t>(idx)] - origin;
      if (span.cols() > 0) r -= span * (span.transpose() * r);
      const double len = r.norm();
      if (len > best) {
        best = len;
        best_idx = idx;
        best_res = r;
      }
    }
    if (best <= eps) {
      fail(ErrorCode::kDegenerateInput,
           "convex_hull: points lie in a lower-dimensional flat");
    }
    simplex.push_back(best_idx);
    span.conservativeResize(Eigen::NoChange, span.cols() + 1);
    span.col(span.cols() - 1) = best_res / best;
  }

  Vector inner = Vector::Zero(d);
  for (int idx : simplex) inner += pts[static_cast<size_t>(idx)];
  inner /= static_cast<double>(d + 1);

  RawHull h;
  for (int omit = 0; omit <= d; ++omit) {
    SimplexFacet f;
    int k = 0;
    for (int i = 0; i <= d; ++i) {
      if (i != omit) f.v[static_cast<size_t>(k++)] = simplex[static_cast<size_t>(i)];
    }
    set_plane(f, pts, d, inner);
    h.facets.push_back(std::move(f));
  }

  std::vector<char> in_simplex(pts.size(), 0);
  for (int idx : simplex) in_simplex[static_cast<size_t>(idx)] = 1;

  std::vector<size_t> visible;
  std::vector<std::pair<Ridge, size_t>> ridges;
  for (int idx : order) {
    if (in_simplex[static_cast<size_t>(idx)]) continue;
    const Vector& p = pts[static_cast<size_t>(idx)];
    visible.clear();
    for (size_t fi = 0; fi < h.facets.size(); ++fi) {
      const SimplexFacet& f = h.facets[fi];
      if (f.alive && f.normal.dot(p) - f.offset > eps) visible.push_back(fi);
    }
    if (visible.empty()) continue;

    ridges.clear();
    for (size_t fi : visible) {
      const SimplexFacet& f = h.facets[fi];
      for (int omit = 0; omit < d; ++omit) {
        Ridge r{};
        int k = 0;
        for (int i = 0; i < d; ++i) {
          if (i != omit) r[static_cast<size_t>(k++)] = f.v[static_cast<size_t>(i)];
        }
        std::sort(r.begin(), r.begin() + (d - 1));
        ridges.emplace_back(r, fi);
      }
    }
    std::sort(ridges.begin(), ridges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t fi : visible) h.facets[fi].alive = false;
    for (size_t i = 0; i < ridges.size();) {
      size_t j = i + 1;
      while (j < ridges.size() && ridges[j].first == ridges[i].first) ++j;
      if (j - i == 1) {
        SimplexFacet f;
        for (int k = 0; k < d - 1; ++k) {
          f.v[static_cast<size_t>(k)] = ridges[i].first[static_cast<size_t>(k)];
        }
        f.v[static_cast<size_t>(d - 1)] = idx;
        set_plane(f, pts, d, inner);
        h.facets.push_back(std::move(f));
      }
      i = j;
    }
    if (h.facets.size() > 256) {
      std::erase_if(h.facets, [](const SimplexFacet& f) { return !f.alive; });
    }
  }
  std::erase_if(h.facets, [](const SimplexFacet& f) { return !f.alive; });

  std::vector<char> used(pts.size(), 0);
  for (const SimplexFacet& f : h.facets) {
    for (int i = 0; i < d; ++i) used[static_cast<size_t>(f.v[static_cast<size_t>(i)])] = 1;
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) h.used.push_back(static_cast<int>(i));
  }
  return h;
}

struct MergedFacets {
  std::vector<Halfspace> planes;
  std::vector<int> group_of;  // per simplicial facet
};

MergedFacets merge_coplanar(const RawHull& h, const PointList& pts, int d,
                            double eps) {
  MergedFacets out;
  std::vector<std::vector<int>> members;
  out.group_of.assign(h.facets.size(), -1);
  for (size_t fi = 0; fi < h.facets.size(); ++fi) {
    const SimplexFacet& f = h.facets[fi];
    int found = -1;
    for (size_t g = 0; g < out.planes.size(); ++g) {
      const Halfspace& hs = out.planes[g];
      if (hs.normal.dot(f.normal) <= 0.0) continue;
      bool coplanar = true;
      for (int i = 0; i < d && coplanar; ++i) {
        const Vector& q = pts[static_cast<size_t>(f.v[static_cast<size_t>(i)])];
        coplanar = std::abs(hs.normal.dot(q) - hs.offset) <= eps;
      }
      if (coplanar) {
        found = static_cast<int>(g);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(out.planes.size());
      out.planes.push_back(Halfspace{f.normal, f.offset});
      members.emplace_back();
    }
    out.group_of[fi] = found;
    members[static_cast<size_t>(found)].push_back(static_cast<int>(fi));
  }

  // Refit merged planes through all of their vertices.
  for (size_t g = 0; g < out.planes.size(); ++g) {
    if (members[g].size() < 2) continue;
    std::vector<int> verts;
    for (int fi : members[g]) {
      const SimplexFacet& f = h.facets[static_cast<size_t>(fi)];
      verts.insert(verts.end(), f.v.begin(), f.v.begin() + d);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    Vector mean = Vector::Zero(d);
    for (int v : verts) mean += pts[static_cast<size_t>(v)];
    mean /= static_cast<double>(verts.size());
    Matrix m(d, static_cast<Eigen::Index>(verts.size()));
    for (size_t i = 0; i < verts.size(); ++i) {
      m.col(static_cast<Eigen::Index>(i)) = pts[static_cast<size_t>(verts[i])] - mean;
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
    Vector n = svd.matrixU().col(d - 1);
    if (n.dot(out.planes[g].normal) < 0.0) n = -n;
    out.planes[g].normal = n;
    out.planes[g].offset = n.dot(mean);
  }
  return out;
}

}  // namespace

Polytope make_polytope_from_hull_result(int dim, PointList vertices,
                                        std::vector<int> source,
                                        std::vector<Halfspace> halfspaces,
                                        std::vector<BoundarySimplex> boundary) {
  Polytope p;
  p.dim_ = dim;
  p.vertices_ = std::move(vertices);
  p.source_ = std::move(source);
  p.halfspaces_ = std::move(halfspaces);
  p.boundary_ = std::move(boundary);
  p.scale_ = coordinate_extent(p.vertices_);
  return p;
}

namespace {

Polytope hull_1d(const PointList& points, double tol) {
  int lo = 0;
  int hi = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i][0] < points[static_cast<size_t>(lo)][0]) lo = static_cast<int>(i);
    if (points[i][0] > points[static_cast<size_t>(hi)][0]) hi = static_cast<int>(i);
  }
  const double a = points[static_cast<size_t>(lo)][0];
  const double b = points[static_cast<size_t>(hi)][0];
  (void)tol;
  if (!(b > a)) {
    fail(ErrorCode::kDegenerateInput, "convex_hull: 1-d points coincide");
  }
  std::vector<int> src = {std::min(lo, hi), std::max(lo, hi)};
  PointList verts = {points[static_cast<size_t>(src[0])],
                     points[static_cast<size_t>(src[1])]};
  std::vector<Halfspace> hs = {Halfspace{make_vector({1.0}), b},
                               Halfspace{make_vector({-1.0}), -a}};
  const int top = (src[0] == hi) ? 0 : 1;
  std::vector<BoundarySimplex> boundary(2);
  boundary[0].vertex[0] = top;
  boundary[0].facet = 0;
  boundary[1].vertex[0] = 1 - top;
  boundary[1].facet = 1;
  return make_polytope_from_hull_result(1, std::move(verts), std::move(src),
                                        std::move(hs), std::move(boundary));
}

}  // namespace

Polytope Polytope::hull(const PointList& points, double tol) {
  if (points.empty()) {
    fail(ErrorCode::kDegenerateInput, "convex_hull: no points");
  }
  const int d = static_cast<int>(points.front().size());
  if (d < 1) fail(ErrorCode::kInvalidArgument, "convex_hull: dimension must be >= 1");
  if (d > kMaxDimension) {
    fail(ErrorCode::kUnsupportedDimension, "convex_hull: dimension above 6");
  }
  for (const Vector& p : points) {
    if (p.size() != d) fail(ErrorCode::kInvalidArgument, "convex_hull: mixed dimensions");
    if (!p.allFinite()) fail(ErrorCode::kInvalidArgument, "convex_hull: non-finite coordinate");
  }
  if (d == 1) return hull_1d(points, tol);
  if (points.size() < static_cast<size_t>(d + 1)) {
    fail(ErrorCode::kDegenerateInput, "convex_hull: fewer than d+1 points");
  }

  const double eps = tol * coordinate_extent(points);
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);

  for (int round = 0;; ++round) {
    RawHull raw = incremental_hull(points, order, d, eps);
    MergedFacets merged = merge_coplanar(raw, points, d, eps);

    // A hull point is a vertex iff the normals of the facets through it span R^d.
    std::vector<int> keep;
    for (int idx : raw.used) {
      const Vector& q = points[static_cast<size_t>(idx)];
      Matrix normals(0, d);
      for (const Halfspace& hs : merged.planes) {
        if (std::abs(hs.normal.dot(q) - hs.offset) <= eps) {
          normals.conservativeResize(normals.rows() + 1, Eigen::NoChange);
          normals.row(normals.rows() - 1) = hs.normal.transpose();
        }
      }
      if (normals.rows() < d) continue;
      Eigen::JacobiSVD<Matrix> svd(normals);
      const auto& sv = svd.singularValues();
      if (sv[d - 1] > 1e-8 * sv[0]) keep.push_back(idx);
    }

    if (keep.size() == raw.used.size() || round >= 3) {
      std::vector<int> remap(points.size(), -1);
      PointList verts;
      for (size_t i = 0; i < raw.used.size(); ++i) {
        remap[static_cast<size_t>(raw.used[i])] = static_cast<int>(i);
        verts.push_back(points[static_cast<size_t>(raw.used[i])]);
      }
      std::vector<BoundarySimplex> boundary;
      boundary.reserve(raw.facets.size());
      for (size_t fi = 0; fi < raw.facets.size(); ++fi) {
        BoundarySimplex s;
        for (int i = 0; i < d; ++i) {
          s.vertex[static_cast<size_t>(i)] =
              remap[static_cast<size_t>(raw.facets[fi].v[static_cast<size_t>(i)])];
        }
        s.facet = merged.group_of[fi];
        boundary.push_back(s);
      }
      return make_polytope_from_hull_result(d, std::move(verts), raw.used,
                                            std::move(merged.planes),
                                            std::move(boundary));
    }
    order = std::move(keep);
  }
}

}  // namespace santalo

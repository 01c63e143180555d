#include "santalo/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace santalo {

std::vector<SweepRecord> sweep(const ShadowSystem& system, const std::vector<double>& grid,
                               const SweepOptions& options) {
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) fail(ErrorCode::kInvalidArgument, "sweep: grid must be increasing");
  }
  std::vector<SweepRecord> out;
  out.reserve(grid.size());
  std::optional<Vector> previous;
  for (double t : grid) {
    SweepRecord rec;
    rec.t = t;
    try {
      const Polytope k = system.body_at(t);
      rec.volume = volume(k);
      SantaloOptions opt;
      opt.tol = options.tol_sant;
      if (options.warm_start && previous && k.min_slack(*previous) > 1e-3 * inradius(k)) {
        opt.start = previous;
      }
      const SantaloResult r = santalo_point(k, opt);
      rec.polar_volume = r.polar_volume;
      rec.santalo = r.point;
      rec.converged = r.converged;
      rec.iterations = r.iterations;
      rec.residual = r.centroid_residual;
      if (r.converged) previous = r.point;
    } catch (const GeometryError& e) {
      rec.converged = false;
      rec.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

ConvexityVerdict midpoint_test(const std::vector<SweepRecord>& records,
                               const std::vector<std::optional<double>>& f, double rel_tol) {
  if (records.size() < 3) fail(ErrorCode::kInsufficientGrid, "convexity: need at least 3 rows");
  const size_t n = records.size();
  const double span = records.back().t - records.front().t;
  const double step = span / static_cast<double>(n - 1);
  for (size_t i = 1; i < n; ++i) {
    if (std::abs(records[i].t - records[i - 1].t - step) > 1e-9 * std::abs(span)) {
      fail(ErrorCode::kInsufficientGrid, "convexity: grid is not equally spaced");
    }
  }
  ConvexityVerdict v;
  double fmax = 0.0;
  for (const auto& x : f) {
    if (x) fmax = std::max(fmax, std::abs(*x));
    else ++v.excluded_rows;
  }
  v.tolerance = rel_tol * fmax;
  v.worst_violation = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; j += 2) {
      const size_t k = (i + j) / 2;
      if (!f[i] || !f[j] || !f[k]) continue;
      ++v.triples;
      const double gap = *f[k] - 0.5 * (*f[i] + *f[j]);
      if (gap > v.worst_violation) {
        v.worst_violation = gap;
        v.witness_triple = std::array<double, 3>{records[i].t, records[k].t, records[j].t};
      }
    }
  }
  if (v.triples == 0) fail(ErrorCode::kInsufficientGrid, "convexity: no usable triples");
  v.is_midpoint_convex = v.worst_violation <= v.tolerance;
  if (v.is_midpoint_convex) v.witness_triple.reset();
  return v;
}

}  // namespace

ConvexityVerdict check_volume_convexity(const std::vector<SweepRecord>& records, double rel_tol) {
  std::vector<std::optional<double>> f;
  for (const SweepRecord& r : records) {
    if (r.error.empty() || r.volume > 0.0) f.emplace_back(r.volume);
    else f.emplace_back();
  }
  return midpoint_test(records, f, rel_tol);
}

ConvexityVerdict check_polar_convexity(const std::vector<SweepRecord>& records, double rel_tol) {
  std::vector<std::optional<double>> f;
  for (const SweepRecord& r : records) {
    if (r.converged && r.polar_volume > 0.0) f.emplace_back(1.0 / r.polar_volume);
    else f.emplace_back();
  }
  return midpoint_test(records, f, rel_tol);
}

ShadowSystem affine_family(const Polytope& k_mid, double v, const Vector& big_v, double u,
                           Interval interval, double tol) {
  const int d = k_mid.dim();
  if (d < 2 || big_v.size() != d - 1) {
    fail(ErrorCode::kInvalidArgument, "affine_family: V must have dimension d - 1");
  }
  const double mid = interval.mid();
  for (double t : {interval.lo, interval.hi}) {
    if (!(1.0 + v * (t - mid) > tol)) {
      fail(ErrorCode::kDegenerateMap, "affine_family: 1 + v s must stay positive");
    }
  }
  PointList base;
  std::vector<double> speeds;
  for (const Vector& p : k_mid.vertices()) {
    const double sigma = v * p[d - 1] + big_v.dot(p.head(d - 1)) + u;
    Vector q = p;
    q[d - 1] -= mid * sigma;
    base.push_back(std::move(q));
    speeds.push_back(sigma);
  }
  return ShadowSystem(std::move(base), std::move(speeds), unit_axis(d, d - 1), interval, tol);
}

namespace {

struct LocalBody {
  HyperplaneFrame frame;
  Polytope body;  // coordinates (to_local, height)
};

LocalBody in_frame(const Polytope& k, const Hyperplane& h) {
  HyperplaneFrame f(h);
  PointList pts;
  for (const Vector& v : k.vertices()) {
    Vector q(k.dim());
    q << f.to_local(v), f.height(v);
    pts.push_back(std::move(q));
  }
  Polytope body = Polytope::hull(pts);
  return LocalBody{std::move(f), std::move(body)};
}

// Projections where the chord length or midpoint can break: vertex shadows and,
// in 3D, crossings of the shadows of boundary edges.
PointList chord_breakpoints(const Polytope& local) {
  const int d = local.dim();
  PointList xs;
  for (const Vector& v : local.vertices()) xs.push_back(v.head(d - 1));
  if (d == 3) {
    const auto edges = local.triangulation_edges();
    const auto& vs = local.vertices();
    for (size_t i = 0; i < edges.size(); ++i) {
      const Eigen::Vector2d a = vs[static_cast<size_t>(edges[i].first)].head(2);
      const Eigen::Vector2d b = vs[static_cast<size_t>(edges[i].second)].head(2);
      for (size_t j = i + 1; j < edges.size(); ++j) {
        const Eigen::Vector2d c = vs[static_cast<size_t>(edges[j].first)].head(2);
        const Eigen::Vector2d e = vs[static_cast<size_t>(edges[j].second)].head(2);
        const Eigen::Vector2d r = b - a, s = e - c;
        const double den = r.x() * s.y() - r.y() * s.x();
        if (std::abs(den) < 1e-14 * r.norm() * s.norm()) continue;
        const Eigen::Vector2d w = c - a;
        const double lam = (w.x() * s.y() - w.y() * s.x()) / den;
        const double mu = (w.x() * r.y() - w.y() * r.x()) / den;
        if (lam > 1e-12 && lam < 1 - 1e-12 && mu > 1e-12 && mu < 1 - 1e-12) {
          xs.push_back(Vector(a + lam * r));
        }
      }
    }
  }
  return xs;
}

}  // namespace

ShadowSystem steiner_system(const Polytope& k, const Hyperplane& h, double tol) {
  const int d = k.dim();
  if (d != 2 && d != 3) fail(ErrorCode::kUnsupportedDimension, "steiner_system: d must be 2 or 3");
  if (h.normal.size() != d) fail(ErrorCode::kInvalidArgument, "steiner_system: hyperplane dimension");
  const LocalBody lb = in_frame(k, h);
  PointList base;
  std::vector<double> speeds;
  for (const Vector& x : chord_breakpoints(lb.body)) {
    const auto c = chord_closed(lb.body, x, d - 1, tol);
    if (!c) continue;
    const double half = 0.5 * c->length();
    for (double sgn : {-1.0, 1.0}) {
      base.push_back(lb.frame.to_global(x, sgn * half));
      speeds.push_back(-c->mid());
    }
  }
  return ShadowSystem(std::move(base), std::move(speeds), h.normal, Interval{-1.0, 1.0}, tol);
}

Polytope steiner_symmetral(const Polytope& k, const Hyperplane& h, double tol) {
  return steiner_system(k, h, tol).body_at(0.0);
}

double chord_midpoint_residual(const Polytope& k, const Vector& normal) {
  const int d = k.dim();
  if (d != 2 && d != 3) fail(ErrorCode::kUnsupportedDimension, "brunn check: d must be 2 or 3");
  const LocalBody lb = in_frame(k, Hyperplane(normal, 0.0));
  PointList samples = chord_breakpoints(lb.body);
  Vector lo = samples.front(), hi = samples.front();
  for (const Vector& x : samples) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  const int n = d == 2 ? 64 : 16;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= (d == 2 ? 0 : n); ++j) {
      Vector x = lo;
      x[0] += (hi[0] - lo[0]) * i / n;
      if (d == 3) x[1] += (hi[1] - lo[1]) * j / n;
      samples.push_back(std::move(x));
    }
  }
  PointList xs;
  std::vector<double> mids, lens;
  for (const Vector& x : samples) {
    const auto c = chord_closed(lb.body, x, d - 1);
    if (!c) continue;
    xs.push_back(x);
    mids.push_back(c->mid());
    lens.push_back(c->length());
  }
  // Short chords near the shadow boundary are dominated by the polygonal
  // approximation of a smooth body; only chords of at least a tenth of the
  // longest one enter the fit.
  const double longest = *std::max_element(lens.begin(), lens.end());
  size_t kept = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (lens[i] < 0.1 * longest) continue;
    xs[kept] = xs[i];
    mids[kept] = mids[i];
    ++kept;
  }
  xs.resize(kept);
  mids.resize(kept);
  Matrix a(static_cast<Eigen::Index>(xs.size()), d);
  Vector b(static_cast<Eigen::Index>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) << xs[i].transpose(), 1.0;
    b[static_cast<Eigen::Index>(i)] = mids[i];
  }
  const Vector coef = a.colPivHouseholderQr().solve(b);
  return (a * coef - b).cwiseAbs().maxCoeff() / k.diameter();
}

BrunnReport brunn_midpoint_check(const Polytope& k, int directions, uint64_t seed, double rel_tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  BrunnReport rep;
  for (int i = 0; i < directions; ++i) {
    Vector n(k.dim());
    for (Eigen::Index j = 0; j < n.size(); ++j) n[j] = g(rng);
    rep.worst_residual = std::max(rep.worst_residual, chord_midpoint_residual(k, n.normalized()));
    ++rep.directions;
  }
  rep.midpoints_coplanar = rep.worst_residual <= rel_tol;
  return rep;
}

double secant_deviation(const std::vector<double>& t, const std::vector<double>& f) {
  if (t.size() != f.size() || t.size() < 2) fail(ErrorCode::kInsufficientGrid, "secant: need two rows");
  const double t0 = t.front(), t1 = t.back(), f0 = f.front(), f1 = f.back();
  double worst = 0.0, scale = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    const double line = f0 + (f1 - f0) * (t[i] - t0) / (t1 - t0);
    worst = std::max(worst, std::abs(f[i] - line));
    scale = std::max(scale, std::abs(f[i]));
  }
  return worst / scale;
}

AffineFit affine_converse_check(const ShadowSystem& system, const std::vector<SweepRecord>& records,
                                double rel_tol) {
  std::vector<double> ts, vols, tp, inv;
  for (const SweepRecord& r : records) {
    if (!r.error.empty()) continue;
    ts.push_back(r.t);
    vols.push_back(r.volume);
    if (r.converged) {
      tp.push_back(r.t);
      inv.push_back(1.0 / r.polar_volume);
    }
  }
  AffineFit fit;
  fit.volume_deviation = secant_deviation(ts, vols);
  fit.inverse_polar_deviation = secant_deviation(tp, inv);
  if (fit.volume_deviation > rel_tol || fit.inverse_polar_deviation > rel_tol) return fit;

  const ShadowSystem cs = system.canonical();
  const int d = cs.dim();
  const double mid = cs.interval().mid();
  const Polytope k_mid = cs.body_at(mid);
  const auto& src = k_mid.source_indices();
  Matrix a(static_cast<Eigen::Index>(src.size()), d + 1);
  Vector b(static_cast<Eigen::Index>(src.size()));
  for (size_t i = 0; i < src.size(); ++i) {
    const Vector& p = k_mid.vertices()[i];
    a.row(static_cast<Eigen::Index>(i)) << p[d - 1], p.head(d - 1).transpose(), 1.0;
    b[static_cast<Eigen::Index>(i)] = cs.speeds()[static_cast<size_t>(src[i])];
  }
  const Vector coef = a.colPivHouseholderQr().solve(b);
  fit.v = coef[0];
  fit.big_v = coef.segment(1, d - 1);
  fit.u = coef[d];
  const double diam = k_mid.diameter();
  for (double t : ts) {
    const double s = t - mid;
    Matrix lin = Matrix::Identity(d, d);
    lin.block(d - 1, 0, 1, d - 1) = s * fit.big_v.transpose();
    lin(d - 1, d - 1) = 1.0 + s * fit.v;
    const Vector shift = s * fit.u * unit_axis(d, d - 1);
    try {
      const double err = vertex_set_distance(apply_affine(k_mid, lin, shift), cs.body_at(t)) / diam;
      fit.reproduction_error = std::max(fit.reproduction_error, err);
    } catch (const GeometryError&) {
      fit.reproduction_error = std::numeric_limits<double>::infinity();
    }
  }
  fit.status = fit.reproduction_error <= 1e-7 ? AffineFit::Status::kAffineFamily
                                             : AffineFit::Status::kConverseWitnessCandidate;
  return fit;
}

const char* affine_fit_status_name(AffineFit::Status s) {
  switch (s) {
    case AffineFit::Status::kNotAffine: return "not affine";
    case AffineFit::Status::kAffineFamily: return "affine family";
    case AffineFit::Status::kConverseWitnessCandidate: return "converse witness candidate";
  }
  return "unknown";
}

}  // namespace santalo

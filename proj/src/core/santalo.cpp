#include "santalo/santalo.hpp"

#include <cmath>
#include <limits>

namespace santalo {

namespace {

struct Probe {
  Vector z;
  double volume = 0.0;
  Vector gradient;  // centroid of the polar, or its finite-difference stand-in
  double residual = 0.0;
};

}  // namespace

SantaloResult santalo_point(const Polytope& k, const SantaloOptions& opt) {
  const int d = k.dim();
  const PolarEvaluator eval(k);
  // (d + 2) Cov(K) turns the centroid into a Newton step for ellipsoids.
  const Matrix metric = (d + 2.0) * covariance(k);
  Vector z = opt.start ? *opt.start : interior_point(k);
  if (z.size() != d) fail(ErrorCode::kInvalidArgument, "santalo: start has wrong dimension");
  if (!(k.min_slack(z) > kGeomTol * k.scale())) {
    fail(ErrorCode::kCenterNotInterior, "santalo: start is not interior");
  }
  const double h = opt.finite_difference ? 1e-6 * inradius(k) : 0.0;

  auto probe = [&](const Vector& x) {
    Probe p;
    p.z = x;
    const PolarEvaluator::Value v = eval(x);
    p.volume = v.volume;
    if (opt.finite_difference) {
      p.gradient.resize(d);
      for (int i = 0; i < d; ++i) {
        const Vector e = h * unit_axis(d, i);
        p.gradient[i] = (eval(x + e).volume - eval(x - e).volume) / (2.0 * h);
      }
      p.gradient /= (d + 1) * v.volume;
    } else {
      p.gradient = v.centroid;
    }
    p.residual = p.gradient.norm() / eval.polar_diameter(x);
    if (opt.on_probe) opt.on_probe(x, v.volume);
    return p;
  };

  const auto& hs = k.halfspaces();
  Probe cur = probe(z);
  double eta = 1.0;
  SantaloResult out;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (cur.residual <= opt.tol) break;
    const Vector dir = -metric * cur.gradient;
    double smin = std::numeric_limits<double>::infinity();
    for (const Halfspace& f : hs) smin = std::min(smin, f.slack(cur.z));
    double cap = std::numeric_limits<double>::infinity();
    for (const Halfspace& f : hs) {
      const double rate = f.normal.dot(dir);
      if (rate > 0.0) cap = std::min(cap, (f.slack(cur.z) - 0.1 * smin) / rate);
    }
    double alpha = std::min(eta, cap);
    bool accepted = false;
    for (int bt = 0; bt < 60 && !accepted; ++bt, alpha *= 0.5) {
      Probe trial = probe(cur.z + alpha * dir);
      const bool in_noise = std::abs(trial.volume - cur.volume) <= 1e-13 * cur.volume;
      if (in_noise ? trial.residual < cur.residual : trial.volume < cur.volume) {
        cur = std::move(trial);
        eta = 1.5 * alpha;
        accepted = true;
      }
    }
    if (!accepted) break;
  }
  out.point = cur.z;
  out.polar_volume = cur.volume;
  out.centroid_residual = cur.residual;
  out.iterations = it;
  out.converged = cur.residual <= opt.tol;
  return out;
}

double volume_product(const Polytope& k, double tol_sant) {
  SantaloOptions opt;
  opt.tol = tol_sant;
  const SantaloResult r = santalo_point(k, opt);
  if (!r.converged) {
    fail(ErrorCode::kMaxIterations, "volume_product: Santalo solver did not converge");
  }
  return volume(k) * r.polar_volume;
}

namespace {

double log_ratio(const Ratio& r) {
  switch (r.kind) {
    case Ratio::Kind::kZero: return -std::numeric_limits<double>::infinity();
    case Ratio::Kind::kInfinite: return std::numeric_limits<double>::infinity();
    case Ratio::Kind::kFinite: break;
  }
  return std::log(r.value);
}

}  // namespace

BalancedPoints balanced_points(const ShadowSystem& system, double s, double t, double a,
                               const Vector& c, double tol_ratio) {
  if (!(s < t)) fail(ErrorCode::kInvalidArgument, "balanced_points: need s < t");
  const ShadowSystem cs = system.canonical();
  const int d = cs.dim();
  const int axis = d - 1;
  if (c.size() != d - 1) fail(ErrorCode::kInvalidArgument, "balanced_points: C has wrong dimension");
  const double tol = cs.tolerance();

  const Polytope km = cs.body_at(0.5 * (s + t));
  const auto mid_chord = chord_closed(km, c, axis, tol);
  const double eps = tol * km.scale();
  if (!mid_chord || !(a > mid_chord->lo + eps && a < mid_chord->hi - eps)) {
    fail(ErrorCode::kCenterNotInterior, "balanced_points: (C, a) is not interior to the middle body");
  }
  const RatioCurve rs(cs.body_at(s), c, axis, tol);
  const RatioCurve rt(cs.body_at(t), c, axis, tol);
  const double lo = std::max(rs.chord().lo, 2.0 * a - rt.chord().hi);
  const double hi = std::min(rs.chord().hi, 2.0 * a - rt.chord().lo);
  if (!(hi > lo)) fail(ErrorCode::kGeometryInconsistent, "balanced_points: empty search interval");

  auto rho = [&](double v) { return log_ratio(rs(v)) - log_ratio(rt(2.0 * a - v)); };

  double left = std::numeric_limits<double>::quiet_NaN();
  double right = left;
  for (double delta = 1e-3; delta >= 1e-12 && std::isnan(left); delta /= 100.0) {
    const double v = lo + delta * (hi - lo);
    if (rho(v) < 0.0) left = v;
  }
  for (double delta = 1e-3; delta >= 1e-12 && std::isnan(right); delta /= 100.0) {
    const double v = hi - delta * (hi - lo);
    if (rho(v) > 0.0) right = v;
  }
  if (std::isnan(left) || std::isnan(right) || !(left < right)) {
    fail(ErrorCode::kBracketFailure, "balanced_points: no sign change of the ratio difference");
  }
  double f_left = rho(left);
  double f_right = rho(right);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (left + right);
    if (!(mid > left && mid < right)) break;
    const double f = rho(mid);
    if (std::isnan(f)) fail(ErrorCode::kBracketFailure, "balanced_points: ratio undefined inside");
    if (f == 0.0) {
      left = right = mid;
      f_left = f_right = 0.0;
      break;
    }
    if (f < 0.0) {
      left = mid;
      f_left = f;
    } else {
      right = mid;
      f_right = f;
    }
  }
  BalancedPoints out;
  out.a_s = std::abs(f_left) <= std::abs(f_right) ? left : right;
  out.a_t = 2.0 * a - out.a_s;
  const Ratio r1 = rs(out.a_s);
  const Ratio r2 = rt(out.a_t);
  if (!r1.finite() || !r2.finite()) {
    fail(ErrorCode::kBracketFailure, "balanced_points: root sits at a divergent end");
  }
  out.ratio_s = r1.value;
  out.ratio_t = r2.value;
  out.ratio_mismatch = std::abs(r1.value / r2.value - 1.0);
  if (out.ratio_mismatch > tol_ratio) {
    fail(ErrorCode::kBracketFailure, "balanced_points: bisection did not balance the ratios");
  }
  return out;
}

}  // namespace santalo

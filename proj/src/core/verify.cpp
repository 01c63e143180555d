#include "santalo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace santalo {

double SliceProfile::operator()(double y) const {
  if (y < support.lo || y > support.hi) return 0.0;
  if (exact) return exact(y);
  if (x.empty()) return 0.0;
  const size_t i = std::upper_bound(x.begin(), x.end(), y) - x.begin();
  if (i == 0) return value.front();
  if (i == x.size()) return value.back();
  const double w = (y - x[i - 1]) / (x[i] - x[i - 1]);
  return (1 - w) * value[i - 1] + w * value[i];
}

SliceProfile make_profile(std::function<double(double)> fn, double support_end, int samples,
                          std::vector<double> breakpoints) {
  if (samples < 2) fail(ErrorCode::kInsufficientGrid, "profile: need at least 2 samples");
  if (!(support_end > 0)) fail(ErrorCode::kInvalidArgument, "profile: empty support");
  SliceProfile p;
  p.support = Interval{0.0, support_end};
  p.exact = std::move(fn);
  p.x = uniform_grid(p.support, samples);
  for (double y : p.x) p.value.push_back(p.exact(y));
  std::sort(breakpoints.begin(), breakpoints.end());
  p.breakpoints = std::move(breakpoints);
  return p;
}

SliceProfile polar_slice_profile(const Polytope& k, const Vector& center, int axis, int side,
                                 int samples, double tol) {
  if (k.dim() < 2) fail(ErrorCode::kUnsupportedDimension, "profile: need d >= 2");
  if (side != 1 && side != -1) fail(ErrorCode::kInvalidArgument, "profile: side must be +1 or -1");
  auto body = std::make_shared<Polytope>(polar(k, center, tol).polar);
  double top = 0.0;
  for (const Vector& v : body->vertices()) top = std::max(top, side * v[axis]);
  std::vector<double> kinks;
  for (const Vector& v : body->vertices()) {
    const double y = side * v[axis];
    if (y > 0 && y < top) kinks.push_back(y);
  }
  auto fn = [body, axis, side, tol](double y) {
    return section_volume(*body, axis, side * y, tol);
  };
  return make_profile(fn, top, samples, std::move(kinks));
}

double integrate(const SliceProfile& p, int samples) {
  std::vector<double> cuts = uniform_grid(p.support, samples);
  for (double b : p.breakpoints) {
    if (b > p.support.lo && b < p.support.hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  static const double node = std::sqrt(0.6);
  auto eval = [&](double y) { return p.exact ? p.exact(y) : p(y); };
  double total = 0.0;
  for (size_t i = 1; i < cuts.size(); ++i) {
    const double c = 0.5 * (cuts[i] + cuts[i - 1]);
    const double r = 0.5 * (cuts[i] - cuts[i - 1]);
    total += r * (5.0 * eval(c - node * r) + 8.0 * eval(c) + 5.0 * eval(c + node * r)) / 9.0;
  }
  return total;
}

namespace {

double max_value(const SliceProfile& p) {
  double m = 0.0;
  for (double v : p.value) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

HypothesisReport harmonic_hypothesis_check(const SliceProfile& f, const SliceProfile& g,
                                           const SliceProfile& h, int grid, double slack_tol) {
  if (grid < 1) fail(ErrorCode::kInsufficientGrid, "hypothesis: grid must be positive");
  HypothesisReport r;
  r.worst_slack = std::numeric_limits<double>::infinity();
  const double top = std::max({max_value(f), max_value(g), max_value(h),
                               std::numeric_limits<double>::min()});
  for (int i = 1; i <= grid; ++i) {
    const double y = g.support.hi * i / grid;
    const double gy = g(y);
    for (int j = 1; j <= grid; ++j) {
      const double z = h.support.hi * j / grid;
      const double hz = h(z);
      const double rhs =
          gy > 0 && hz > 0 ? std::pow(gy, z / (z + y)) * std::pow(hz, y / (z + y)) : 0.0;
      const double slack = (f(2 * z * y / (z + y)) - rhs) / top;
      ++r.pairs;
      if (slack < r.worst_slack) {
        r.worst_slack = slack;
        r.witness_y = y;
        r.witness_z = z;
      }
    }
  }
  r.holds = r.worst_slack >= -slack_tol;
  return r;
}

ConclusionReport harmonic_conclusion_check(const SliceProfile& f, const SliceProfile& g,
                                           const SliceProfile& h, double rel_tol) {
  ConclusionReport r;
  const int fine = kProfileSamples;
  const int coarse = (kProfileSamples + 1) / 2;
  auto with_error = [&](const SliceProfile& p, double& value) {
    value = integrate(p, fine);
    return std::abs(value - integrate(p, coarse));
  };
  const double ef = with_error(f, r.integral_f);
  const double eg = with_error(g, r.integral_g);
  const double eh = with_error(h, r.integral_h);
  if (!(r.integral_f > 0 && r.integral_g > 0 && r.integral_h > 0)) {
    fail(ErrorCode::kInvalidArgument, "conclusion: profiles must have positive integrals");
  }
  r.lhs = 1.0 / r.integral_f;
  r.rhs = 0.5 * (1.0 / r.integral_g + 1.0 / r.integral_h);
  r.slack = (r.rhs - r.lhs) / r.rhs;
  const double spread = ef / (r.integral_f * r.integral_f) +
                        0.5 * (eg / (r.integral_g * r.integral_g) + eh / (r.integral_h * r.integral_h));
  r.integration_error = spread / r.rhs;
  if (r.slack >= -rel_tol) {
    r.status = ConclusionReport::Status::kPass;
  } else if (r.slack >= -rel_tol - r.integration_error) {
    r.status = ConclusionReport::Status::kInconclusive;
  } else {
    r.status = ConclusionReport::Status::kViolation;
  }
  return r;
}

const char* conclusion_status_name(ConclusionReport::Status s) {
  switch (s) {
    case ConclusionReport::Status::kPass: return "pass";
    case ConclusionReport::Status::kInconclusive: return "inconclusive";
    case ConclusionReport::Status::kViolation: return "violation";
  }
  return "unknown";
}

namespace {

double harmonic_slack(double mid, double s, double t) {
  const double lhs = 1.0 / mid;
  const double rhs = 0.5 * (1.0 / s + 1.0 / t);
  return (rhs - lhs) / rhs;
}

}  // namespace

HalfVolumeReport half_volume_inequality_check(const ShadowSystem& system, double s, double t,
                                              double a_s, double a_t, const Vector& c,
                                              double rel_tol) {
  const ShadowSystem cs = system.canonical();
  const int d = cs.dim();
  if (c.size() != d - 1) fail(ErrorCode::kInvalidArgument, "half-volume check: C has wrong dimension");
  const double tol = cs.tolerance();
  HalfVolumeReport r;
  r.at_s = half_volumes(cs.body_at(s), insert_coordinate(c, d - 1, a_s), d - 1, tol);
  r.at_t = half_volumes(cs.body_at(t), insert_coordinate(c, d - 1, a_t), d - 1, tol);
  r.at_mid = half_volumes(cs.body_at(0.5 * (s + t)), insert_coordinate(c, d - 1, 0.5 * (a_s + a_t)),
                          d - 1, tol);
  r.plus_slack = harmonic_slack(r.at_mid.b_plus, r.at_s.b_plus, r.at_t.b_plus);
  r.minus_slack = harmonic_slack(r.at_mid.b_minus, r.at_s.b_minus, r.at_t.b_minus);
  r.holds = r.plus_slack >= -rel_tol && r.minus_slack >= -rel_tol;
  return r;
}

InclusionReport slice_inclusion_check(const ShadowSystem& system, double s, double t,
                                      double a_s, double a_t, const Vector& c, int grid,
                                      double tol) {
  const ShadowSystem cs = system.canonical();
  const int d = cs.dim();
  const int axis = d - 1;
  const double gtol = cs.tolerance();
  const Vector gs = insert_coordinate(c, axis, a_s);
  const Vector gt = insert_coordinate(c, axis, a_t);
  const Vector gm = insert_coordinate(c, axis, 0.5 * (a_s + a_t));
  const Polytope ps = polar(cs.body_at(s), gs, gtol).polar;
  const Polytope pt = polar(cs.body_at(t), gt, gtol).polar;
  const Polytope km = cs.body_at(0.5 * (s + t));

  auto top = [&](const Polytope& p) {
    double m = 0.0;
    for (const Vector& v : p.vertices()) m = std::max(m, v[axis]);
    return m;
  };
  const double ys = top(ps);
  const double zt = top(pt);
  auto slice = [&](const Polytope& p, double level) -> PointList {
    try {
      return section(p, axis, level, gtol).vertices();
    } catch (const GeometryError&) {
      return {};
    }
  };

  InclusionReport r;
  r.worst_excess = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid; ++i) {
    const double y = ys * i / (grid + 1);
    const PointList sy = slice(ps, y);
    for (int j = 1; j <= grid; ++j) {
      const double z = zt * j / (grid + 1);
      const PointList sz = slice(pt, z);
      for (const Vector& yv : sy) {
        for (const Vector& zv : sz) {
          const Vector w = insert_coordinate((z * yv + y * zv) / (z + y), axis, 2 * z * y / (z + y));
          double excess = -std::numeric_limits<double>::infinity();
          for (const Vector& x : km.vertices()) excess = std::max(excess, w.dot(x - gm) - 1.0);
          r.worst_excess = std::max(r.worst_excess, excess);
          ++r.points;
        }
      }
    }
  }
  r.holds = r.points > 0 && r.worst_excess <= tol;
  return r;
}

ChainReport lemma_chain_check(const ShadowSystem& system, double s, double t, int grid,
                              double tol_sant) {
  const ShadowSystem cs = system.canonical();
  const int d = cs.dim();
  const int axis = d - 1;
  const double gtol = cs.tolerance();
  ChainReport r;
  r.s = s;
  r.t = t;
  const double mid = 0.5 * (s + t);
  const Polytope km = cs.body_at(mid);
  const Polytope ks = cs.body_at(s);
  const Polytope kt = cs.body_at(t);

  SantaloOptions opt;
  opt.tol = tol_sant;
  const SantaloResult sm = santalo_point(km, opt);
  r.center = sm.point;
  const Vector c = drop_coordinate(sm.point, axis);
  const double a = sm.point[axis];
  r.balanced = balanced_points(cs, s, t, a, c);
  const double a_s = r.balanced.a_s;
  const double a_t = r.balanced.a_t;
  const Vector gs = insert_coordinate(c, axis, a_s);
  const Vector gt = insert_coordinate(c, axis, a_t);
  const Vector gm = insert_coordinate(c, axis, 0.5 * (a_s + a_t));

  r.inclusion = slice_inclusion_check(cs, s, t, a_s, a_t, c);
  for (int side : {1, -1}) {
    const SliceProfile f = polar_slice_profile(km, gm, axis, side, kProfileSamples, gtol);
    const SliceProfile g = polar_slice_profile(ks, gs, axis, side, kProfileSamples, gtol);
    const SliceProfile h = polar_slice_profile(kt, gt, axis, side, kProfileSamples, gtol);
    HypothesisReport hyp = harmonic_hypothesis_check(f, g, h, grid);
    ConclusionReport con = harmonic_conclusion_check(f, g, h);
    if (side == 1) {
      r.hypothesis_plus = hyp;
      r.conclusion_plus = con;
    } else {
      r.hypothesis_minus = hyp;
      r.conclusion_minus = con;
    }
  }
  r.half_volumes = half_volume_inequality_check(cs, s, t, a_s, a_t, c);

  const double ps_centered = polar(ks, gs, gtol).polar_volume;
  const double pt_centered = polar(kt, gt, gtol).polar_volume;
  const SantaloResult ss = santalo_point(ks, opt);
  const SantaloResult st = santalo_point(kt, opt);
  r.midpoint_lhs = 1.0 / polar(km, gm, gtol).polar_volume;
  r.midpoint_rhs_centered = 0.5 * (1.0 / ps_centered + 1.0 / pt_centered);
  r.midpoint_rhs = 0.5 * (1.0 / ss.polar_volume + 1.0 / st.polar_volume);
  r.midpoint_holds = r.midpoint_lhs <= r.midpoint_rhs_centered * (1.0 + kConvexityTol) &&
                     r.midpoint_rhs_centered <= r.midpoint_rhs * (1.0 + kConvexityTol);

  auto passing = [](const ConclusionReport& x) {
    return x.status == ConclusionReport::Status::kPass;
  };
  r.passed = r.inclusion.holds && r.hypothesis_plus.holds && r.hypothesis_minus.holds &&
             passing(r.conclusion_plus) && passing(r.conclusion_minus) && r.half_volumes.holds &&
             r.midpoint_holds && sm.converged && ss.converged && st.converged;
  return r;
}

SliceProfile plateau_profile(double c, double scale) {
  return make_profile([c](double) { return c; }, scale);
}

EqualityFamily equality_family(double b, double c) {
  if (!(b > 0 && c > 0)) fail(ErrorCode::kInvalidArgument, "equality family: B, C must be positive");
  auto q = [](double x) { return x >= 0 && x <= 1 ? 3.0 * (1 - x) * (1 - x) : 0.0; };
  const double hm = 2 * b * c / (b + c);
  EqualityFamily e;
  e.f = make_profile([q, hm](double w) { return q(w / hm); }, hm);
  e.g = make_profile([q, b](double y) { return q(y / b); }, b);
  e.h = make_profile([q, c](double z) { return q(z / c); }, c);
  return e;
}

}  // namespace santalo

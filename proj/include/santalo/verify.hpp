#pragma once

#include <functional>

#include "santalo/santalo.hpp"

namespace santalo {

/// A compactly supported profile on [0, support.hi], sampled on a uniform grid,
/// with an exact evaluator for off-grid points.
struct SliceProfile {
  Interval support;
  std::vector<double> x;
  std::vector<double> value;
  /// Kinks of the profile inside the support; quadrature cells end there.
  std::vector<double> breakpoints;
  std::function<double(double)> exact;

  double operator()(double y) const;
};

inline constexpr int kProfileSamples = 257;

SliceProfile make_profile(std::function<double(double)> fn, double support_end,
                          int samples = kProfileSamples, std::vector<double> breakpoints = {});

/// y -> |K^{*center}(., side * y)| for y >= 0 along `axis`: the polar slice
/// volumes on one side of the centre, evaluated by exact sections.
SliceProfile polar_slice_profile(const Polytope& k, const Vector& center, int axis, int side = 1,
                                 int samples = kProfileSamples, double tol = kGeomTol);

/// Composite 3-point Gauss-Legendre over the sample grid refined at the breakpoints.
double integrate(const SliceProfile& p, int samples = kProfileSamples);

struct HypothesisReport {
  bool holds = true;
  /// min over pairs of f(2zy/(z+y)) - g(y)^{z/(z+y)} h(z)^{y/(z+y)}, over max(f, g, h).
  double worst_slack = 0.0;
  double witness_y = 0.0;
  double witness_z = 0.0;
  int pairs = 0;
};

HypothesisReport harmonic_hypothesis_check(const SliceProfile& f, const SliceProfile& g,
                                           const SliceProfile& h, int grid = 33,
                                           double slack_tol = 1e-7);

struct ConclusionReport {
  enum class Status { kPass, kInconclusive, kViolation };
  Status status = Status::kPass;
  double integral_f = 0.0;
  double integral_g = 0.0;
  double integral_h = 0.0;
  double lhs = 0.0;             // 1 / int f
  double rhs = 0.0;             // (1/int g + 1/int h) / 2
  double slack = 0.0;           // (rhs - lhs) / rhs
  double integration_error = 0.0;  // propagated to the slack, relative
};

ConclusionReport harmonic_conclusion_check(const SliceProfile& f, const SliceProfile& g,
                                           const SliceProfile& h, double rel_tol = 1e-6);

const char* conclusion_status_name(ConclusionReport::Status s);

struct HalfVolumeReport {
  HalfVolumes at_s;
  HalfVolumes at_t;
  HalfVolumes at_mid;
  double plus_slack = 0.0;   // relative slack of the B_+ inequality
  double minus_slack = 0.0;  // and of the B_- inequality
  bool holds = true;
};

/// 1/B(mid) <= (1/B(s) + 1/B(t)) / 2 for B_+ and B_-, with B computed by exact
/// clipping of the polars about (C, a_s), (C, a_t) and (C, (a_s + a_t)/2).
/// C and the heights are canonical-frame coordinates of the system.
HalfVolumeReport half_volume_inequality_check(const ShadowSystem& system, double s, double t,
                                              double a_s, double a_t, const Vector& c,
                                              double rel_tol = kGeomTol);

struct InclusionReport {
  bool holds = true;
  double worst_excess = 0.0;  // max <w, x - G> - 1 over tested points
  int points = 0;
};

/// (z Y + y Z)/(z + y) lies in the slice of the middle polar at 2zy/(z+y), for
/// vertices Y, Z of the outer slices at heights y, z.
InclusionReport slice_inclusion_check(const ShadowSystem& system, double s, double t,
                                      double a_s, double a_t, const Vector& c, int grid = 9,
                                      double tol = 1e-9);

struct ChainReport {
  double s = 0.0;
  double t = 0.0;
  Vector center;  // (C, a) = S(K_mid), canonical frame
  BalancedPoints balanced;
  InclusionReport inclusion;
  HypothesisReport hypothesis_plus;
  HypothesisReport hypothesis_minus;
  ConclusionReport conclusion_plus;
  ConclusionReport conclusion_minus;
  HalfVolumeReport half_volumes;
  /// 1/|K_mid^*| against the centred and the Santalo-point right-hand sides.
  double midpoint_lhs = 0.0;
  double midpoint_rhs_centered = 0.0;
  double midpoint_rhs = 0.0;
  bool midpoint_holds = true;
  bool passed = true;
};

/// The full chain for one triple: Santalo point of K_mid, balanced points,
/// slice inclusion, hypothesis, conclusion, half-volume and midpoint bounds.
ChainReport lemma_chain_check(const ShadowSystem& system, double s, double t, int grid = 33,
                              double tol_sant = kSantaloTol);

/// Plateau c on [0, 1].
SliceProfile plateau_profile(double c = 1.0, double scale = 1.0);
/// g(Bx) = h(Cx) = f(2BCx/(B+C)) from the template q(x) = 3(1-x)^2 on [0, 1].
struct EqualityFamily {
  SliceProfile f, g, h;
};
EqualityFamily equality_family(double b, double c);

}  // namespace santalo

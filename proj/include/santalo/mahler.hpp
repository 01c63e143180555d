#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "santalo/santalo.hpp"
#include "santalo/shadow_system.hpp"

namespace santalo {

/// (d+1)^{d+1} / (d!)^2, the volume product of a d-simplex.
double simplex_bound(int d);
/// (d+1)^{d+1} / d^{d+2}: Pi_d(pyramid) / Pi_{d-1}(base).
double pyramid_factor(int d);

struct PyramidReport {
  double vp_pyramid = 0.0;
  double vp_base = 0.0;
  double predicted = 0.0;          // pyramid_factor(d) * vp_base
  double factor_rel_error = 0.0;
  double collinearity_ratio = 0.0; // |x0 - z0| / |S(K) - z0|, expected d + 1
  double off_line_distance = 0.0;  // distance of S(K) from the line z0 x0, / diam K
  Vector santalo;
  Vector base_santalo;             // embedded in the base hyperplane
};

/// K = conv({apex} ∪ F) with F placed in {x_d = 0}. F has dimension d - 1 and
/// apex dimension d. Throws kDegenerateInput if the apex lies in that hyperplane.
PyramidReport pyramid_factorization_check(const Polytope& base, const Vector& apex);

enum class CaseLabel {
  kSimplex,
  kPyramidIa,
  kSimplicialIb,
  kPyramidIIa,
  kDoublePyramidIIb1,
  kSkewIIb2,
  kParallelIIb3,
  kSimplicialIIc,
};

const char* case_label_name(CaseLabel label);

struct Classification {
  CaseLabel label = CaseLabel::kSimplex;
  /// For IIb*: vertex indices of the coplanar d+1 set and of x1, x2 (ordered so
  /// that xi1 <= xi2 after orienting the plane, with xi2 > 0).
  std::vector<int> coplanar;
  int x1 = -1;
  int x2 = -1;
  Hyperplane plane;
  double xi1 = 0.0;
  double xi2 = 0.0;
  /// Smallest distance, relative to K's scale, by which a decision clears the
  /// coplanarity tolerance. Large margins mean the label is robust.
  double margin = 0.0;
};

/// Case analysis of a polytope with d+1, d+2 or d+3 vertices. Throws kTooManyVertices.
Classification classify(const Polytope& k, double tol = kGeomTol);

struct DescentMove {
  CaseLabel label = CaseLabel::kSimplex;
  ShadowSystem system;
  Interval t_range;
  std::string terminal_description;
  /// |K_t| = volume_at_zero + volume_slope * t over t_range (slope 0 except IIb3).
  double volume_at_zero = 0.0;
  double volume_slope = 0.0;
  /// Unit vector along which IIb3 bodies are renormalized before measuring.
  Vector stretch_direction;
};

/// The shadow system of the case analysis. Pyramids and simplices have no move:
/// those labels throw kInvalidArgument. An empty range throws kGeometryInconsistent.
DescentMove descent_move(const Polytope& k, double tol = kGeomTol);
DescentMove descent_move(const Polytope& k, const Classification& c, double tol = kGeomTol);

/// Pi_d(K_t), with the IIb3 affine renormalization applied (Pi is affine-invariant).
double move_volume_product(const DescentMove& move, double t);

struct DescentReport {
  std::vector<double> t;
  std::vector<double> vp;
  std::vector<double> volume;
  double endpoint_min = 0.0;
  double interior_min = 0.0;
  bool endpoint_minimal = true;
  double volume_law_error = 0.0;  // relative to |K|
  /// IIb3 only: 1/|K_t^*| is midpoint convex along the sweep and |K_t| affine.
  bool quotient_structure = true;
  int failed_rows = 0;
};

DescentReport verify_descent_monotonicity(const DescentMove& move, int samples = 129,
                                          double rel_tol = kConvexityTol);

struct CampaignViolation {
  int trial = 0;
  double vp = 0.0;
  PointList vertices;
  std::string kind;
};

struct CampaignReport {
  uint64_t seed = 0;
  int d = 0;
  int k = 0;
  int trials = 0;
  double bound = 0.0;
  double min_vp = 0.0;
  int argmin_trial = -1;
  PointList argmin_vertices;
  std::string argmin_label;
  std::vector<CampaignViolation> violations;
  int ill_conditioned = 0;   // excluded from the minimum
  int unconverged = 0;       // Santalo solver gave up; excluded
  long rejected_draws = 0;   // sampler rejections
  /// 2D campaign: closest Pi_2 to 27/4 among non-simplex samples.
  double closest_non_simplex = 0.0;
};

struct CampaignProgress {
  int trials_done = 0;
  double min_vp = 0.0;
  int violations = 0;
};

using ProgressCallback = std::function<void(const CampaignProgress&)>;

/// k trials with exactly k unit-ball vertices each; the lower bound is
/// simplex_bound(d) - 1e-6. Output is independent of the thread count.
CampaignReport verify_theorem_B(int d, int k, int trials, uint64_t seed,
                                const ProgressCallback& progress = {}, int threads = 0);
/// Random convex polygons with 3..12 vertices; also checks that values within
/// 1e-4 of 27/4 come only from triangles.
CampaignReport verify_theorem_D_2d(int trials, uint64_t seed,
                                   const ProgressCallback& progress = {}, int threads = 0);

/// Sample of the random polytope used by the campaigns, for trial `index`.
Polytope campaign_sample(int d, int k, uint64_t seed, int index, long* rejected = nullptr);
Polytope polygon_sample(uint64_t seed, int index);

/// Continuous piecewise-linear function through (x_i, y_i), x strictly increasing.
struct PiecewiseLinear {
  std::vector<double> x;
  std::vector<double> y;

  double operator()(double at) const;
  double left_slope(double at) const;
};

struct ConeSplit {
  PiecewiseLinear g;
  PiecewiseLinear h;
  bool g_proportional = false;  // g = c f for some c >= 0 (including g = 0)
  bool h_proportional = false;
};

/// f = g + h with g, h concave and vanishing at both ends, split at the
/// interior point a. Throws kNotInCone if f is not concave with f(alpha) = f(beta) = 0.
ConeSplit extreme_ray_decompose(const PiecewiseLinear& f, double a, double tol = 1e-12);

/// Slopes non-increasing (to tol * max|f|) and zero ends.
bool in_cone(const PiecewiseLinear& f, double tol = 1e-12);

}  // namespace santalo

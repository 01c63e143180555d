#pragma once

#include <array>
#include <optional>
#include <string>

#include "santalo/santalo.hpp"
#include "santalo/shadow_system.hpp"

namespace santalo {

struct SweepRecord {
  double t = 0.0;
  double volume = 0.0;
  double polar_volume = 0.0;
  Vector santalo;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  std::string error;  // empty unless the row failed
};

struct SweepOptions {
  double tol_sant = kSantaloTol;
  /// Seed each solve with the previous row's Santalo point.
  bool warm_start = true;
};

/// One record per grid point. Failures are recorded in the row; the sweep never aborts.
std::vector<SweepRecord> sweep(const ShadowSystem& system, const std::vector<double>& grid,
                               const SweepOptions& options = {});

struct ConvexityVerdict {
  bool is_midpoint_convex = true;
  /// max over triples of f(mid) - (f(lo) + f(hi))/2, in absolute units.
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::optional<std::array<double, 3>> witness_triple;
  int triples = 0;
  int excluded_rows = 0;
};

/// Midpoint test on |K_t| over index triples (i, (i+j)/2, j); tolerance is rel_tol * max |K_t|.
/// Throws kInsufficientGrid for fewer than 3 rows or an uneven grid.
ConvexityVerdict check_volume_convexity(const std::vector<SweepRecord>& records,
                                        double rel_tol = kConvexityTol);
/// The same test on 1/|K_t^*|, skipping rows whose Santalo solve did not converge.
ConvexityVerdict check_polar_convexity(const std::vector<SweepRecord>& records,
                                       double rel_tol = kConvexityTol);

/// Bodies A_t(K_mid), A_t(X, x) = (X, x + (t - mid)(v x + <V, X> + u)), as a shadow system
/// along the last axis. Throws kDegenerateMap unless 1 + v (t - mid) > tol on the interval.
ShadowSystem affine_family(const Polytope& k_mid, double v, const Vector& big_v, double u,
                           Interval interval, double tol = kGeomTol);

/// K_{-1} = K, K_1 = the mirror image of K in H, K_0 = the Steiner symmetral.
/// Supports d = 2 and d = 3.
ShadowSystem steiner_system(const Polytope& k, const Hyperplane& h, double tol = kGeomTol);
Polytope steiner_symmetral(const Polytope& k, const Hyperplane& h, double tol = kGeomTol);

struct BrunnReport {
  bool midpoints_coplanar = true;
  /// Worst affine-fit residual of the chord midpoints, divided by diam K.
  double worst_residual = 0.0;
  int directions = 0;
};

/// Fits an affine function to the midpoints of chords orthogonal to each of
/// `directions` random hyperplanes (rng seeded with `seed`).
BrunnReport brunn_midpoint_check(const Polytope& k, int directions = 16, uint64_t seed = 1,
                                 double rel_tol = 1e-6);
/// The same test for one hyperplane normal.
double chord_midpoint_residual(const Polytope& k, const Vector& normal);

struct AffineFit {
  enum class Status { kNotAffine, kAffineFamily, kConverseWitnessCandidate };
  Status status = Status::kNotAffine;
  double volume_deviation = 0.0;        // relative distance of |K_t| from its secant
  double inverse_polar_deviation = 0.0; // same for 1/|K_t^*|
  double v = 0.0;
  Vector big_v;
  double u = 0.0;
  double reproduction_error = 0.0;      // max vertex-set distance A_t(K_mid) vs K_t, / diam
};

/// Relative deviation from the secant through the first and last rows.
double secant_deviation(const std::vector<double>& t, const std::vector<double>& f);

/// When both sweeps are affine within rel_tol, fits (v, V, u) on the vertex
/// trajectories and checks that A_t(K_mid) reproduces K_t. A system canonical
/// in direction (e_d) is required.
AffineFit affine_converse_check(const ShadowSystem& system, const std::vector<SweepRecord>& records,
                                double rel_tol = kConvexityTol);

const char* affine_fit_status_name(AffineFit::Status s);

}  // namespace santalo

#pragma once

#include <functional>
#include <optional>

#include "santalo/polarity.hpp"
#include "santalo/shadow_system.hpp"

namespace santalo {

struct SantaloOptions {
  double tol = kSantaloTol;
  int max_iterations = 500;
  /// Central differences of |K^{*z}| instead of the polar-centroid gradient.
  bool finite_difference = false;
  std::optional<Vector> start;
  /// Called with every probed (z, |K^{*z}|) pair.
  std::function<void(const Vector&, double)> on_probe;
};

struct SantaloResult {
  Vector point;
  double polar_volume = 0.0;
  /// |centroid of K^{*z}| divided by the diameter of K^{*z}.
  double centroid_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes z -> |K^{*z}| by preconditioned descent along -Cov(K) * centroid(K^{*z}).
/// Running out of iterations returns the last iterate with converged = false.
SantaloResult santalo_point(const Polytope& k, const SantaloOptions& options = {});

/// |K| * |K^{*S(K)}|. Throws kMaxIterations if the solver does not converge.
double volume_product(const Polytope& k, double tol_sant = kSantaloTol);

struct BalancedPoints {
  double a_s = 0.0;
  double a_t = 0.0;
  double ratio_s = 0.0;
  double ratio_t = 0.0;
  /// |ratio_s / ratio_t - 1|.
  double ratio_mismatch = 0.0;
};

/// Points a_s, a_t with (a_s + a_t)/2 = a at which K_s and K_t have the same
/// half-volume ratio about (C, a_s) and (C, a_t). C and a are coordinates in
/// the canonical frame of the system (the identity when direction = e_d).
BalancedPoints balanced_points(const ShadowSystem& system, double s, double t, double a,
                               const Vector& c, double tol_ratio = kRatioTol);

}  // namespace santalo

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "santalo/verify.hpp"
#include "support/generators.hpp"
#include "support/systems.hpp"

namespace {

using namespace santalo;

TEST(Profiles, PlateauSatisfiesTheHypothesisWithEquality) {
  const SliceProfile p = plateau_profile(2.0);
  const HypothesisReport r = harmonic_hypothesis_check(p, p, p);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.worst_slack, 0.0, 1e-15);
  EXPECT_EQ(r.pairs, 33 * 33);
  EXPECT_NEAR(integrate(p), 2.0, 1e-14);
}

TEST(Profiles, ScaledPlateauIsCaughtWithAWitness) {
  const SliceProfile one = plateau_profile(1.0);
  const SliceProfile low = plateau_profile(0.9);
  const HypothesisReport r = harmonic_hypothesis_check(low, one, one);
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(r.worst_slack, -0.1, 1e-12);
  EXPECT_GT(r.witness_y, 0.0);
  EXPECT_GT(r.witness_z, 0.0);
  EXPECT_EQ(harmonic_conclusion_check(low, one, one).status, ConclusionReport::Status::kViolation);
}

TEST(Profiles, IdenticalProfilesGiveEquality) {
  const SliceProfile p = make_profile([](double y) { return 1.0 - y * y; }, 1.0);
  const ConclusionReport r = harmonic_conclusion_check(p, p, p);
  EXPECT_EQ(r.status, ConclusionReport::Status::kPass);
  EXPECT_NEAR(r.slack, 0.0, 1e-14);
  EXPECT_NEAR(r.integral_f, 2.0 / 3.0, 1e-14);
}

TEST(Profiles, EqualityFamilyIsTight) {
  const EqualityFamily e = equality_family(0.7, 1.9);
  const ConclusionReport r = harmonic_conclusion_check(e.f, e.g, e.h);
  EXPECT_EQ(r.status, ConclusionReport::Status::kPass);
  EXPECT_LE(std::abs(r.slack), 1e-12 + r.integration_error);
  EXPECT_NEAR(r.integral_g, 0.7, 1e-13);
  EXPECT_NEAR(r.integral_h, 1.9, 1e-13);
}

TEST(Profiles, StepProfileReportsItsQuadratureError) {
  // A step profile whose jump is not on the grid: the quadrature error is visible.
  const SliceProfile step = make_profile([](double y) { return y < 0.3001 ? 1.0 : 0.5; }, 1.0);
  const ConclusionReport same = harmonic_conclusion_check(step, step, step);
  EXPECT_EQ(same.status, ConclusionReport::Status::kPass);
  EXPECT_GT(same.integration_error, 0.0);
}

TEST(Profiles, PolarSliceIntegralsAreTheClippedHalfVolumes) {
  std::mt19937_64 rng(17);
  for (int d = 2; d <= 3; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const Polytope k = testgen::random_polytope(rng, d, 9);
      const Vector z = interior_point(k);
      const HalfVolumes hv = half_volumes(k, z, d - 1);
      const SliceProfile plus = polar_slice_profile(k, z, d - 1, 1);
      const SliceProfile minus = polar_slice_profile(k, z, d - 1, -1);
      EXPECT_NEAR(integrate(plus), hv.b_plus, 1e-10 * hv.b_plus);
      EXPECT_NEAR(integrate(minus), hv.b_minus, 1e-10 * hv.b_minus);
      const double fine = integrate(plus, 2 * kProfileSamples - 1);
      EXPECT_LE(std::abs(fine - integrate(plus)), 1e-8 * fine);
    }
  }
}

TEST(HalfVolume, SymmetricSystemAtSymmetricPoints) {
  // Square moving rigidly: all three bodies are translates.
  const Polytope sq = testgen::cube(2);
  const ShadowSystem sys(sq.vertices(), std::vector<double>(4, 1.0), unit_axis(2, 1),
                         Interval{-1.0, 1.0});
  const HalfVolumeReport r =
      half_volume_inequality_check(sys, -0.5, 0.5, -0.5, 0.5, make_vector({0.1}));
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.plus_slack, 0.0, 1e-12);
  EXPECT_NEAR(r.at_s.b_plus, r.at_mid.b_plus, 1e-12);
}

TEST(HalfVolume, OffChordCentreThrows) {
  const Polytope sq = testgen::cube(2);
  const ShadowSystem sys(sq.vertices(), std::vector<double>(4, 0.0), unit_axis(2, 1),
                         Interval{-1.0, 1.0});
  EXPECT_THROW(half_volume_inequality_check(sys, -0.5, 0.5, 1.0, 0.0, make_vector({0.0})),
               GeometryError);
}

TEST(Chain, RandomTriplesPassEveryLink) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int d = 2; d <= 3; ++d) {
    for (int trial = 0; trial < 4; ++trial) {
      const ShadowSystem sys = testgen::random_system(rng, d, d + 5);
      double s = u(rng), t = u(rng);
      if (s > t) std::swap(s, t);
      if (t - s < 0.2) t = std::min(1.0, s + 0.2);
      const ChainReport r = lemma_chain_check(sys, s, t, 17);
      EXPECT_TRUE(r.inclusion.holds) << r.inclusion.worst_excess;
      EXPECT_TRUE(r.hypothesis_plus.holds) << r.hypothesis_plus.worst_slack;
      EXPECT_TRUE(r.hypothesis_minus.holds) << r.hypothesis_minus.worst_slack;
      EXPECT_EQ(r.conclusion_plus.status, ConclusionReport::Status::kPass);
      EXPECT_EQ(r.conclusion_minus.status, ConclusionReport::Status::kPass);
      EXPECT_TRUE(r.half_volumes.holds);
      EXPECT_TRUE(r.midpoint_holds);
      EXPECT_TRUE(r.passed);
      EXPECT_NEAR(r.conclusion_plus.integral_f, r.half_volumes.at_mid.b_plus,
                  1e-9 * r.half_volumes.at_mid.b_plus);
    }
  }
}

}  // namespace

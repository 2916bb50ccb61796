// Copyright 2026 The bmgeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/distance.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace bmgeo;
using namespace bmgeo::testing;

namespace {

Body lp(double p, int n) { return lp_ball(std::isinf(p) ? LpExponent::inf() : LpExponent::of(p), n); }
constexpr double kInf = INFINITY;

}  // namespace

TEST(Distance, FixedPositionInStandardPosition) {
  EXPECT_NEAR(fixed_position_distance(lp(2, 2), lp(kInf, 2)), std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(fixed_position_distance(lp(2, 3), lp(kInf, 3)), std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(fixed_position_distance(lp(2, 2), lp(4, 2)), std::pow(2.0, 0.25), 1e-9);
  EXPECT_NEAR(fixed_position_distance(lp(4, 2), lp(kInf, 2)), std::pow(2.0, 0.25), 1e-9);
  EXPECT_NEAR(fixed_position_distance(lp(1, 3), lp(2, 3)), std::sqrt(3.0), 1e-9);
}

TEST(Distance, FixedPositionIsSymmetricAndAtLeastOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const Body a = random_polygon(rng);
    const Body b = random_polygon(rng);
    const double d = fixed_position_distance(a, b);
    EXPECT_GE(d, 1.0);
    EXPECT_NEAR(d, fixed_position_distance(b, a), 1e-12 * d);
  }
}

TEST(Distance, KnownLpFormula) {
  EXPECT_DOUBLE_EQ(known_lp_distance(LpExponent::of(2), LpExponent::inf(), 4), 2.0);
  EXPECT_NEAR(known_lp_distance(LpExponent::of(1), LpExponent::of(2), 3), std::sqrt(3.0), 1e-15);
  EXPECT_THROW(known_lp_distance(LpExponent::of(1), LpExponent::inf(), 2), InputError);
}

TEST(Distance, OptimizerFindsLpDistances) {
  const OptimizerConfig cfg;
  EXPECT_LT(rel_err(bm_distance(lp(2, 2), lp(kInf, 2), cfg).estimate, std::sqrt(2.0)), 1e-3);
  EXPECT_LT(rel_err(bm_distance(lp(2, 2), lp(4, 2), cfg).estimate, std::pow(2.0, 0.25)), 1e-3);
}

TEST(Distance, DiamondAndSquareAreIsometric) {
  const DistanceReport r = bm_distance(lp(1, 2), lp(kInf, 2), OptimizerConfig{});
  EXPECT_NEAR(r.estimate, 1.0, 1e-3);
  EXPECT_NEAR(r.factor_in * r.factor_out, r.estimate, 1e-12);
}

TEST(Distance, LinearImageIsAtDistanceOne) {
  std::mt19937_64 rng(2);
  const Body a = random_polygon(rng, 4);
  const Body b = linear_image(a, random_map(rng));
  OptimizerConfig cfg;
  cfg.starts = 8;
  EXPECT_NEAR(bm_distance(a, b, cfg).estimate, 1.0, 1e-4);
}

TEST(Distance, SameSeedSameReport) {
  std::mt19937_64 rng(3);
  const Body a = random_polygon(rng);
  const Body b = random_polygon(rng);
  OptimizerConfig cfg;
  cfg.starts = 4;
  cfg.seed = 17;
  const DistanceReport r1 = bm_distance(a, b, cfg);
  const DistanceReport r2 = bm_distance(a, b, cfg);
  EXPECT_EQ(r1.estimate, r2.estimate);
  EXPECT_EQ(r1.witness, r2.witness);
  EXPECT_EQ(r1.starts_used, 4);
}

TEST(Distance, EstimateNeverExceedsIdentity) {
  std::mt19937_64 rng(4);
  const Body a = random_polygon(rng);
  const Body b = random_polygon(rng);
  OptimizerConfig cfg;
  cfg.starts = 4;
  EXPECT_LE(bm_distance(a, b, cfg).estimate, fixed_position_distance(a, b) * (1 + 1e-12));
}

TEST(Distance, CanonicalPositionSatisfiesInclusions) {
  std::mt19937_64 rng(5);
  const Body a = random_polygon(rng);
  const Body b = random_polygon(rng);
  OptimizerConfig cfg;
  cfg.starts = 6;
  const PositionedPair p = canonical_position(a, b, cfg);
  EXPECT_LE(enclosing_factor(p.ball_f, p.ball_e), 1 + 1e-9);
  EXPECT_NEAR(enclosing_factor(p.ball_f, p.ball_e), 1.0, 1e-9);
  EXPECT_LE(enclosing_factor(p.ball_e, p.ball_f), p.d * (1 + 1e-9));
  EXPECT_NEAR(p.d, fixed_position_distance(p.ball_e, p.ball_f), 1e-12 * p.d);
  EXPECT_LE(p.d, fixed_position_distance(a, b) * (1 + 1e-9));
}

TEST(Distance, PairValidation) {
  EXPECT_THROW(PositionedPair::from_bodies(lp(kInf, 2), lp(2, 2)), InputError);
  const PositionedPair p = PositionedPair::by_scaling(lp(2, 2), lp(1, 2));
  EXPECT_NEAR(p.d, std::sqrt(2.0), 1e-12);
}

TEST(Distance, ConfigValidation) {
  OptimizerConfig cfg;
  cfg.starts = 0;
  EXPECT_THROW(bm_distance(lp(2, 2), lp(kInf, 2), cfg), InputError);
  cfg = {};
  cfg.tol = -1;
  EXPECT_THROW(bm_distance(lp(2, 2), lp(kInf, 2), cfg), InputError);
}

TEST(Distance, DistortionUnderRotation) {
  // Rotating the square by 45 degrees relative to itself costs a factor 2.
  const double c = std::sqrt(0.5);
  Matrix rot(2, 2);
  rot << c, -c, c, c;
  EXPECT_NEAR(distortion_under(lp(kInf, 2), lp(kInf, 2), rot).value(), 2.0, 1e-12);
}

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

#include "core/body.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace bmgeo;
using namespace bmgeo::testing;

TEST(Body, LpGaugeAndDualSupport) {
  const Body b = lp_ball(LpExponent::of(3), 2);
  const Vector x = vec2(0.4, -0.7);
  EXPECT_NEAR(gauge(b, x), std::cbrt(std::pow(0.4, 3) + std::pow(0.7, 3)), 1e-14);
  // Hoelder oracle: support of the lp ball is the lq norm, 1/p + 1/q = 1.
  const double q = 1.5;
  EXPECT_NEAR(support(b, x), std::pow(std::pow(0.4, q) + std::pow(0.7, q), 1 / q), 1e-12);
}

TEST(Body, ExtremeExponentsBecomePolytopes) {
  EXPECT_EQ(lp_ball(LpExponent::inf(), 2).kind(), Body::Kind::Polygon);
  EXPECT_EQ(lp_ball(LpExponent::of(1), 3).kind(), Body::Kind::Polytope);
  EXPECT_EQ(lp_ball(LpExponent::of(2), 2).kind(), Body::Kind::Gauge);
  EXPECT_EQ(lp_ball(LpExponent::of(1), 5).kind(), Body::Kind::Gauge);
  EXPECT_THROW(lp_ball(LpExponent::of(0.5), 2), InputError);
}

TEST(Body, EnclosingFactorsOfDiskAndSquare) {
  EXPECT_NEAR(enclosing_factor(disk(), square()), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(enclosing_factor(square(), disk()), 1.0, 1e-12);
  const Body l4 = lp_ball(LpExponent::of(4), 2);
  EXPECT_NEAR(enclosing_factor(disk(), l4), std::pow(2.0, 0.25), 1e-9);
}

TEST(Body, ScaleAndLinearImage) {
  const Body s = scale(disk(), 2.0);
  EXPECT_NEAR(gauge(s, vec2(1, 0)), 0.5, 1e-15);
  EXPECT_THROW(scale(disk(), 0.0), InputError);
  Matrix m(2, 2);
  m << 2, 1, 0, 1;
  const Body im = linear_image(disk(), m);
  const Vector x = vec2(0.3, 0.4);
  EXPECT_NEAR(gauge(im, m * x), 0.5, 1e-12);
  Matrix sing(2, 2);
  sing << 1, 2, 2, 4;
  EXPECT_THROW(linear_image(disk(), sing), InputError);
}

TEST(Body, IntersectionGaugeIsPointwiseMax) {
  std::mt19937_64 rng(5);
  const Body a = random_polygon(rng);
  const Body b = random_polygon(rng);
  const Body exact = intersect(a, b);
  const Body lazy = intersection_gauge(a, b);
  for (int i = 0; i < 200; ++i) {
    const Vector x = random_point(rng);
    const double want = std::max(gauge(a, x), gauge(b, x));
    EXPECT_NEAR(gauge(exact, x), want, 1e-9 * want);
    EXPECT_NEAR(gauge(lazy, x), want, 1e-12 * want);
  }
}

TEST(Body, HullGaugeMatchesExactHull) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const Body a = random_polygon(rng);
    const Body b = random_polygon(rng);
    const Body exact = hull_union(a, b);
    const Body lazy = hull_gauge(a, b);
    ASSERT_EQ(exact.kind(), Body::Kind::Polygon);
    for (int i = 0; i < 100; ++i) {
      const Vector x = random_point(rng);
      EXPECT_NEAR(gauge(lazy, x), gauge(exact, x), 1e-6 * gauge(exact, x));
    }
  }
}

TEST(Body, HullOfGaugeBodiesHasExactSupport) {
  const Body h = hull_union(disk(), scale(square(), 0.8));
  EXPECT_TRUE(has_exact_support(h));
  EXPECT_NEAR(support(h, vec2(1, 1) / std::sqrt(2.0)), std::max(1.0, 0.8 * std::sqrt(2.0)), 1e-12);
  // A boundary point of the square corner is on the hull boundary.
  EXPECT_NEAR(gauge(h, vec2(0.8, 0.8)), 1.0, 1e-6);
}

TEST(Body, PolygonizeKeepsRequestedVertexCount) {
  const Body p = polygonize(disk(), 64);
  ASSERT_EQ(p.kind(), Body::Kind::Polygon);
  EXPECT_EQ(p.polygon()->size(), 64u);
  EXPECT_NEAR(gauge(p, vec2(1, 0)), 1.0, 1e-12);
  const Body sq = square();
  EXPECT_TRUE(polygonize(sq, 64).same_object(sq));
}

TEST(Body, GaugeEqualAndSymmetry) {
  EXPECT_TRUE(gauge_equal(lp_ball(LpExponent::of(1), 2), linear_image(square(), Matrix(Eigen::Matrix2d{{0.5, 0.5}, {0.5, -0.5}}))));
  EXPECT_FALSE(gauge_equal(disk(), square()));
  EXPECT_TRUE(is_symmetric(disk()));
}

TEST(Body, DimensionMismatchIsInputError) {
  EXPECT_THROW(enclosing_factor(disk(), lp_ball(LpExponent::of(2), 3)), InputError);
  EXPECT_THROW(gauge(disk(), vec3(1, 0, 0)), InputError);
}

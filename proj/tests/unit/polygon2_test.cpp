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

#include "core/polygon2.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace bmgeo;

namespace {

Polygon2 square() { return Polygon2::from_points(std::vector<Vector>{vec2(1, 1), vec2(-1, 1)}); }

double brute_gauge(const std::vector<Vector>& verts, const Vector& x) {
  // Oracle: largest t with t*x on the boundary, by bisection on containment
  // through half-plane tests of each edge.
  auto inside = [&](const Vector& p) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Vector& a = verts[i];
      const Vector& b = verts[(i + 1) % verts.size()];
      if ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < 0) return false;
    }
    return true;
  };
  double lo = 0, hi = 1e3;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(x / mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TEST(Polygon2, HalfListGetsSymmetricClosure) {
  const Polygon2 p = square();
  ASSERT_EQ(p.size(), 4u);
  for (const auto& g : p.grid_vertices())
    EXPECT_NE(std::find(p.grid_vertices().begin(), p.grid_vertices().end(), -g), p.grid_vertices().end());
}

TEST(Polygon2, VerticesAreCounterclockwise) {
  const Polygon2 p = square();
  const auto& g = p.grid_vertices();
  for (std::size_t i = 0; i < g.size(); ++i)
    EXPECT_GT(orientation(g[i], g[(i + 1) % g.size()], g[(i + 2) % g.size()]), 0);
}

TEST(Polygon2, CollinearVertexIsMerged) {
  const Polygon2 p = Polygon2::from_points(std::vector<Vector>{vec2(1, 1), vec2(-1, 1), vec2(1, 0)});
  EXPECT_EQ(p.size(), 4u);
}

TEST(Polygon2, GaugeAndSupportOfSquare) {
  const Polygon2 p = square();
  EXPECT_DOUBLE_EQ(p.gauge(vec2(0.5, 0.25)), 0.5);
  EXPECT_DOUBLE_EQ(p.gauge(vec2(-3, 1)), 3.0);
  EXPECT_DOUBLE_EQ(p.support(vec2(1, 1)), 2.0);
  EXPECT_DOUBLE_EQ(p.support(vec2(0, -2)), 2.0);
}

TEST(Polygon2, DualsDescribeTheEdges) {
  const Polygon2 p = Polygon2::from_points(std::vector<Vector>{vec2(1, 0), vec2(0.6, 0.8), vec2(-0.4, 0.9)});
  const auto& v = p.vertices();
  const auto& w = p.duals();
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_NEAR(w[i].dot(v[i]), 1.0, 1e-12);
    EXPECT_NEAR(w[i].dot(v[(i + 1) % v.size()]), 1.0, 1e-12);
  }
}

TEST(Polygon2, GaugeMatchesBisectionOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  const Polygon2 p = Polygon2::from_points(std::vector<Vector>{vec2(1, 0.1), vec2(0.3, 0.9), vec2(-0.7, 0.8)});
  for (int i = 0; i < 200; ++i) {
    const Vector x = vec2(u(rng), u(rng));
    EXPECT_NEAR(p.gauge(x), brute_gauge(p.vertices(), x), 1e-9);
  }
}

TEST(Polygon2, IntersectionOfSquareAndDiamondIsOctagon) {
  const Polygon2 sq = square();
  const Polygon2 diamond = Polygon2::from_points(std::vector<Vector>{vec2(1.5, 0), vec2(0, 1.5)});
  const Polygon2 oct = intersect(sq, diamond);
  EXPECT_EQ(oct.size(), 8u);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 200; ++i) {
    const Vector x = vec2(u(rng), u(rng));
    EXPECT_NEAR(oct.gauge(x), std::max(sq.gauge(x), diamond.gauge(x)), 1e-9 * (1 + sq.gauge(x)));
  }
}

TEST(Polygon2, HullSupportIsMaxOfSupports) {
  const Polygon2 a = Polygon2::from_points(std::vector<Vector>{vec2(1, 0.2), vec2(0.1, 0.5)});
  const Polygon2 b = Polygon2::from_points(std::vector<Vector>{vec2(0.3, 1.1), vec2(-0.9, 0.2)});
  const Polygon2 h = hull(a, b);
  for (int k = 0; k < 360; ++k) {
    const double t = k * std::numbers::pi / 180;
    const Vector u = vec2(std::cos(t), std::sin(t));
    EXPECT_NEAR(h.support(u), std::max(a.support(u), b.support(u)), 1e-11);
  }
}

TEST(Polygon2, ScaledAndMapped) {
  const Polygon2 p = square();
  EXPECT_DOUBLE_EQ(p.scaled(2).gauge(vec2(1, 0)), 0.5);
  Matrix m(2, 2);
  m << 2, 0, 0, 1;
  const Polygon2 q = p.mapped(m);
  EXPECT_DOUBLE_EQ(q.gauge(vec2(2, 0)), 1.0);
  EXPECT_DOUBLE_EQ(q.gauge(vec2(0, 1)), 1.0);
}

TEST(Polygon2, ExactContainmentOnGrid) {
  const Polygon2 p = square();
  EXPECT_TRUE(p.contains(Polygon2::snap(1, 1)));
  EXPECT_TRUE(p.contains(Polygon2::snap(1, 0.3)));
  EXPECT_FALSE(p.contains(GridPoint{Polygon2::snap(1, 0).x + 1, 0}));
}

TEST(Polygon2, OrientationIsExactForNearlyCollinearPoints) {
  const GridPoint a{0, 0};
  const GridPoint b{std::int64_t{1} << 59, std::int64_t{1} << 59};
  const GridPoint c{(std::int64_t{1} << 58) + 1, std::int64_t{1} << 58};
  EXPECT_EQ(orientation(a, b, c), -1);
  EXPECT_EQ(orientation(a, b, GridPoint{std::int64_t{1} << 58, std::int64_t{1} << 58}), 0);
}

TEST(Polygon2, DegenerateInputIsRejected) {
  EXPECT_THROW(Polygon2::from_points(std::vector<Vector>{vec2(1, 1), vec2(2, 2)}), InputError);
  EXPECT_THROW(Polygon2::from_points(std::vector<Vector>{vec2(0, 0)}), InputError);
  EXPECT_THROW(Polygon2::from_points(std::vector<Vector>{vec2(3e6, 0), vec2(0, 1)}), InputError);
}

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

#include "core/polytope3.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace bmgeo;

namespace {

Polytope3 cube() {
  return Polytope3::from_points(std::vector<Vector>{vec3(1, 1, 1), vec3(1, 1, -1), vec3(1, -1, 1), vec3(-1, 1, 1)});
}

Polytope3 octahedron() {
  return Polytope3::from_points(std::vector<Vector>{vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)});
}

}  // namespace

TEST(Polytope3, CubeHasSixSquareFacets) {
  const Polytope3 c = cube();
  EXPECT_EQ(c.vertices().size(), 8u);
  ASSERT_EQ(c.facets().size(), 6u);
  for (const auto& f : c.facets()) {
    EXPECT_EQ(f.vertices.size(), 4u);
    EXPECT_NEAR(f.offset, 1.0, 1e-12);
  }
  c.validate();
}

TEST(Polytope3, OctahedronHasEightTriangles) {
  const Polytope3 o = octahedron();
  EXPECT_EQ(o.vertices().size(), 6u);
  EXPECT_EQ(o.facets().size(), 8u);
  EXPECT_NEAR(o.gauge(vec3(0.2, -0.3, 0.1)), 0.6, 1e-12);
  EXPECT_NEAR(o.support(vec3(1, 2, -3)), 3.0, 1e-12);
}

TEST(Polytope3, HalfspacesOfCubeGiveCube) {
  const std::vector<Eigen::Vector3d> duals{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const Polytope3 c = Polytope3::from_halfspaces(duals);
  EXPECT_EQ(c.vertices().size(), 8u);
  EXPECT_EQ(c.facets().size(), 6u);
  EXPECT_NEAR(c.gauge(vec3(0.5, 0.2, -0.7)), 0.7, 1e-12);
}

TEST(Polytope3, FacetsAreOutwardAndCounterclockwise) {
  const Polytope3 c = cube();
  for (const auto& f : c.facets()) {
    const Vector& a = c.vertices()[static_cast<std::size_t>(f.vertices[0])];
    const Vector& b = c.vertices()[static_cast<std::size_t>(f.vertices[1])];
    const Vector& d = c.vertices()[static_cast<std::size_t>(f.vertices[2])];
    const Eigen::Vector3d e1(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
    const Eigen::Vector3d e2(d[0] - a[0], d[1] - a[1], d[2] - a[2]);
    EXPECT_GT(e1.cross(e2).dot(f.normal), 0);
    EXPECT_GT(f.normal.dot(Eigen::Vector3d(a[0], a[1], a[2])), 0);
  }
}

TEST(Polytope3, RandomCloudHullIsConsistent) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<Vector> pts;
  for (int i = 0; i < 60; ++i) pts.push_back(vec3(g(rng), g(rng), g(rng)));
  const Polytope3 p = Polytope3::from_points(pts);
  p.validate();
  for (const auto& x : pts) {
    EXPECT_LE(p.gauge(x), 1.0 + 1e-9);
    EXPECT_LE(p.gauge(-x), 1.0 + 1e-9);
  }
  for (const auto& v : p.vertices()) EXPECT_NEAR(p.gauge(v), 1.0, 1e-9);
  // Euler characteristic of the boundary sphere.
  std::size_t edges = 0;
  for (const auto& f : p.facets()) edges += f.vertices.size();
  EXPECT_EQ(static_cast<long>(p.vertices().size()) - static_cast<long>(edges / 2) + static_cast<long>(p.facets().size()), 2);
}

TEST(Polytope3, MappedByReflectionStaysValid) {
  Matrix m(3, 3);
  m << -1, 0.2, 0, 0, 1, 0, 0.1, 0, 2;
  const Polytope3 c = cube().mapped(m);
  c.validate();
  const Vector x = vec3(0.3, -0.2, 0.5);
  EXPECT_NEAR(c.gauge(m * x), cube().gauge(x), 1e-12);
}

TEST(Polytope3, ScaledGauge) {
  EXPECT_NEAR(cube().scaled(2).gauge(vec3(1, 0, 0)), 0.5, 1e-15);
}

TEST(Polytope3, FlatInputIsRejected) {
  EXPECT_THROW(Polytope3::from_points(std::vector<Vector>{vec3(1, 0, 0), vec3(0, 1, 0)}), InputError);
}

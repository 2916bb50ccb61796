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

#pragma once

#include "core/dim2.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace bmgeo::testing {

// Random symmetric polygon: k points at random angles in [0, pi) and random
// radii, closed under negation.
inline Body random_polygon(std::mt19937_64& rng, int k = 5) {
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.6, 1.4);
  std::vector<Vector> pts;
  while (true) {
    pts.clear();
    for (int i = 0; i < k; ++i) {
      const double t = angle(rng);
      const double r = radius(rng);
      pts.push_back(vec2(r * std::cos(t), r * std::sin(t)));
    }
    try {
      return Body(Polygon2::from_points(pts));
    } catch (const InputError&) {
      // Degenerate draw (all points on a line); try again.
    }
  }
}

inline Matrix random_map(std::mt19937_64& rng, int n = 2) {
  std::normal_distribution<double> g;
  while (true) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = g(rng);
    if (std::fabs(m.determinant()) > 0.2) return m;
  }
}

inline Vector random_point(std::mt19937_64& rng, int n = 2, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline Body disk() { return lp_ball(LpExponent::of(2), 2); }
inline Body square() { return lp_ball(LpExponent::inf(), 2); }

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace bmgeo::testing

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

#include "core/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace bmgeo::search {

struct SimplexResult {
  Eigen::VectorXd x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead minimization. `normalize`, when given, is applied to every
/// trial point before it is evaluated and stored. Convergence means the simplex
/// diameter dropped below `tol` within `max_iters` iterations.
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& start,
                          double step, double tol, int max_iters,
                          const std::function<void(Eigen::VectorXd&)>& normalize = {});

/// Golden-section search on [lo, hi]; exact for unimodal (e.g. convex) f.
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iters) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct DirectionalMax {
  double value = 0.0;
  Vector direction;
};

inline Vector unit_direction(double theta) { return vec2(std::cos(theta), std::sin(theta)); }

/// sup over unit directions of an even function in the plane: 4096-point scan
/// of [0, pi) followed by golden-section refinement of the best local maxima.
template <class F>
DirectionalMax max_over_circle(F&& ratio, int samples = 4096, int refine = 4) {
  const double step = std::numbers::pi / samples;
  std::vector<double> vals(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) vals[static_cast<std::size_t>(k)] = ratio(unit_direction(k * step));
  std::vector<int> peaks;
  for (int k = 0; k < samples; ++k) {
    const double prev = vals[static_cast<std::size_t>((k + samples - 1) % samples)];
    const double next = vals[static_cast<std::size_t>((k + 1) % samples)];
    const double cur = vals[static_cast<std::size_t>(k)];
    if (cur >= prev && cur >= next) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return vals[static_cast<std::size_t>(a)] > vals[static_cast<std::size_t>(b)];
  });
  if (peaks.size() > static_cast<std::size_t>(refine)) peaks.resize(static_cast<std::size_t>(refine));
  DirectionalMax best{-std::numeric_limits<double>::infinity(), unit_direction(0)};
  for (int k : peaks) {
    const double centre = k * step;
    auto [theta, neg] = golden_min([&](double t) { return -ratio(unit_direction(t)); }, centre - step, centre + step, 60);
    const double grid_val = vals[static_cast<std::size_t>(k)];
    if (-neg >= grid_val && -neg > best.value) {
      best = {-neg, unit_direction(theta)};
    } else if (grid_val > best.value) {
      best = {grid_val, unit_direction(centre)};
    }
  }
  return best;
}

/// sup over unit directions in R^dim: seeded random starts refined by a
/// derivative-free local search on the sphere.
DirectionalMax max_over_sphere(const std::function<double(const Vector&)>& ratio, int dim, int starts = 64,
                               std::uint64_t seed = 0x5eedULL);

/// inf { ga(u) + gb(x - u) } for gauge oracles ga, gb. `box_lo`/`box_hi`
/// bound the coordinates of a minimizer u. Dimension 2 runs nested
/// golden-section searches (exact for the convex objective); higher
/// dimensions use multi-start simplex search seeded at 0, x/2 and x.
double inf_convolution(const std::function<double(const Vector&)>& ga, const std::function<double(const Vector&)>& gb,
                       const Vector& x, const Vector& box_lo, const Vector& box_hi);

}  // namespace bmgeo::search

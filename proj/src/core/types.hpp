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

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace bmgeo {

/// Largest ambient dimension supported by the gauge-oracle bodies. Polygons
/// are 2D and polytopes 3D; only lp / linear-image descriptors go beyond.
inline constexpr int kMaxDim = 8;

// Fixed-capacity storage keeps the inner loops allocation free.
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

inline Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

inline Vector vec3(double x, double y, double z) {
  Vector v(3);
  v << x, y, z;
  return v;
}

/// Malformed or out-of-contract input. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked identity (inclusion, product law, certificate) does not hold.
/// Maps to exit code 3.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructive search (witness, family parameters) gave up. Exit code 3.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bmgeo

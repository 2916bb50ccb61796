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

#include <span>
#include <vector>

namespace bmgeo {

struct Facet {
  std::vector<int> vertices;  // counterclockwise seen from outside
  Eigen::Vector3d normal;     // outward, unit length
  double offset = 0.0;        // normal . x = offset on the facet plane
};

/// Origin-symmetric convex polytope in R^3 in floating point, with coplanar
/// hull triangles merged into polygonal facets.
class Polytope3 {
 public:
  /// Relative tolerance for visibility, coplanarity and deduplication.
  static constexpr double kTol = 1e-9;

  /// Convex hull of the points and their negations.
  static Polytope3 from_points(std::span<const Vector> points);
  /// { x : w . x <= 1 } over the given dual points and their negations.
  static Polytope3 from_halfspaces(std::span<const Eigen::Vector3d> duals);

  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Facet planes as dual points w = normal / offset.
  const std::vector<Vector>& duals() const { return duals_; }

  double gauge(const Vector& x) const;
  double support(const Vector& u) const;

  Polytope3 scaled(double t) const;
  Polytope3 mapped(const Matrix& t) const;

  /// Checks symmetry, planarity, outward normals and interior origin; throws
  /// VerificationError naming the first violation.
  void validate() const;

 private:
  Polytope3() = default;
  static Polytope3 build(std::vector<Eigen::Vector3d> points);
  void refresh_duals();

  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
  std::vector<Vector> duals_;
};

}  // namespace bmgeo

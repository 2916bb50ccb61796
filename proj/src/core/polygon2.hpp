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

#include <cstdint>
#include <span>
#include <vector>

namespace bmgeo {

/// A point on the dyadic grid 2^-40 Z^2, stored as integer multiples.
struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
  GridPoint operator-() const { return {-x, -y}; }
};

/// Origin-symmetric convex polygon with vertices on the dyadic grid.
///
/// All combinatorial predicates (orientation, containment, segment crossing)
/// are evaluated exactly in 128-bit integer arithmetic. Constructed points
/// (edge crossings, scaled or mapped vertices) are rounded back onto the grid,
/// so the vertex set stays exactly symmetric under negation.
class Polygon2 {
 public:
  static constexpr int kGridBits = 40;
  static constexpr double kGridStep = 1.0 / static_cast<double>(std::int64_t{1} << kGridBits);
  /// Coordinates must satisfy |c| <= 2^20 so that cross products fit in int128.
  static constexpr double kMaxCoord = static_cast<double>(1 << 20);
  /// Vertices closer than this fraction of the diameter to the chord of their
  /// neighbours are merged away.
  static constexpr double kCollinearEps = 1e-9;

  /// Snaps, applies symmetric closure, takes the convex hull and merges
  /// nearly collinear vertices. Throws InputError on degenerate input.
  static Polygon2 from_points(std::span<const Vector> points);
  static Polygon2 from_grid(std::vector<GridPoint> points);

  static GridPoint snap(double x, double y);
  static Vector to_vector(const GridPoint& p);

  /// Counterclockwise vertex cycle.
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<GridPoint>& grid_vertices() const { return grid_; }
  /// Dual vertices w_i: the polygon is { x : w_i . x <= 1 for all i }, edge i
  /// running from vertex i to vertex i+1.
  const std::vector<Vector>& duals() const { return duals_; }
  std::size_t size() const { return grid_.size(); }
  double diameter() const { return diameter_; }

  double gauge(const Vector& x) const;
  double support(const Vector& u) const;

  Polygon2 scaled(double t) const;
  Polygon2 mapped(const Matrix& t) const;

  /// Closed containment, exact on grid points.
  bool contains(const GridPoint& p) const;

  friend Polygon2 intersect(const Polygon2& a, const Polygon2& b);
  friend Polygon2 hull(const Polygon2& a, const Polygon2& b);

 private:
  explicit Polygon2(std::vector<GridPoint> ccw);

  std::vector<GridPoint> grid_;
  std::vector<Vector> vertices_;
  std::vector<Vector> duals_;
  double diameter_ = 0.0;
};

/// Sign of the cross product (b - a) x (c - a), exact.
int orientation(const GridPoint& a, const GridPoint& b, const GridPoint& c);

/// (b - a) x (c - a) as an exact 128-bit integer.
__int128 cross(const GridPoint& a, const GridPoint& b, const GridPoint& c);

}  // namespace bmgeo

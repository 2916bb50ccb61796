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

#include <algorithm>
#include <cmath>
#include <limits>

namespace bmgeo {

namespace {

constexpr long double kScale = static_cast<long double>(std::int64_t{1} << Polygon2::kGridBits);

std::vector<GridPoint> convex_hull_ccw(std::vector<GridPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<GridPoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orientation(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && orientation(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double chord_distance(const GridPoint& prev, const GridPoint& cur, const GridPoint& next) {
  const long double c = static_cast<long double>(cross(prev, next, cur));
  const long double dx = static_cast<long double>(next.x - prev.x);
  const long double dy = static_cast<long double>(next.y - prev.y);
  const long double len = std::sqrt(dx * dx + dy * dy);
  if (len == 0) return 0.0;
  return static_cast<double>(std::fabs(c) / len / kScale);
}

std::size_t antipode(const std::vector<GridPoint>& ccw, std::size_t i) {
  const GridPoint target = -ccw[i];
  const std::size_t m = ccw.size();
  const std::size_t guess = (i + m / 2) % m;
  if (ccw[guess] == target) return guess;
  for (std::size_t j = 0; j < m; ++j)
    if (ccw[j] == target) return j;
  return m;
}

// Removes nearly collinear vertices pairwise with their antipodes so that the
// cycle stays symmetric.
void merge_collinear(std::vector<GridPoint>& ccw, double threshold) {
  while (ccw.size() > 4) {
    const std::size_t m = ccw.size();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = m;
    for (std::size_t i = 0; i < m; ++i) {
      const double dist = chord_distance(ccw[(i + m - 1) % m], ccw[i], ccw[(i + 1) % m]);
      if (dist < best) {
        best = dist;
        best_i = i;
      }
    }
    if (best > threshold) break;
    const std::size_t j = antipode(ccw, best_i);
    if (j == m || j == best_i) {
      ccw.erase(ccw.begin() + static_cast<std::ptrdiff_t>(best_i));
    } else {
      const auto hi = std::max(best_i, j);
      const auto lo = std::min(best_i, j);
      ccw.erase(ccw.begin() + static_cast<std::ptrdiff_t>(hi));
      ccw.erase(ccw.begin() + static_cast<std::ptrdiff_t>(lo));
    }
  }
}

}  // namespace

__int128 cross(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
  const __int128 bx = static_cast<__int128>(b.x) - a.x;
  const __int128 by = static_cast<__int128>(b.y) - a.y;
  const __int128 cx = static_cast<__int128>(c.x) - a.x;
  const __int128 cy = static_cast<__int128>(c.y) - a.y;
  return bx * cy - by * cx;
}

int orientation(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
  const __int128 v = cross(a, b, c);
  return (v > 0) - (v < 0);
}

GridPoint Polygon2::snap(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y) || std::fabs(x) > kMaxCoord || std::fabs(y) > kMaxCoord)
    throw InputError("polygon coordinate out of range or not finite");
  return {std::llround(static_cast<long double>(x) * kScale), std::llround(static_cast<long double>(y) * kScale)};
}

Vector Polygon2::to_vector(const GridPoint& p) {
  return vec2(static_cast<double>(static_cast<long double>(p.x) / kScale),
              static_cast<double>(static_cast<long double>(p.y) / kScale));
}

Polygon2 Polygon2::from_points(std::span<const Vector> points) {
  std::vector<GridPoint> grid;
  grid.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != 2) throw InputError("polygon vertices must be 2-dimensional");
    grid.push_back(snap(p[0], p[1]));
  }
  return from_grid(std::move(grid));
}

Polygon2 Polygon2::from_grid(std::vector<GridPoint> points) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) points.push_back(-points[i]);
  auto ccw = convex_hull_ccw(std::move(points));
  if (ccw.size() < 4) throw InputError("polygon is degenerate (needs a 2-dimensional symmetric hull)");
  long double rmax = 0;
  for (const auto& p : ccw)
    rmax = std::max(rmax, std::sqrt(static_cast<long double>(p.x) * p.x + static_cast<long double>(p.y) * p.y));
  const double diameter = static_cast<double>(2 * rmax / kScale);
  merge_collinear(ccw, kCollinearEps * diameter);
  return Polygon2(std::move(ccw));
}

Polygon2::Polygon2(std::vector<GridPoint> ccw) : grid_(std::move(ccw)) {
  const std::size_t m = grid_.size();
  if (m < 4) throw InputError("polygon is degenerate");
  const GridPoint origin{};
  for (std::size_t i = 0; i < m; ++i) {
    if (orientation(origin, grid_[i], grid_[(i + 1) % m]) <= 0)
      throw InputError("origin is not strictly interior to polygon");
  }
  vertices_.reserve(m);
  duals_.reserve(m);
  double rmax = 0;
  for (const auto& p : grid_) {
    vertices_.push_back(to_vector(p));
    rmax = std::max(rmax, vertices_.back().norm());
  }
  diameter_ = 2 * rmax;
  for (std::size_t i = 0; i < m; ++i) {
    const GridPoint& a = grid_[i];
    const GridPoint& b = grid_[(i + 1) % m];
    // Edge line: n . x = h with n = (b.y - a.y, a.x - b.x), h = a x b.
    const long double h = static_cast<long double>(cross(origin, a, b));
    const long double nx = static_cast<long double>(b.y - a.y);
    const long double ny = static_cast<long double>(a.x - b.x);
    duals_.push_back(vec2(static_cast<double>(nx * kScale / h), static_cast<double>(ny * kScale / h)));
  }
}

double Polygon2::gauge(const Vector& x) const {
  double g = 0.0;
  for (const auto& w : duals_) g = std::max(g, w[0] * x[0] + w[1] * x[1]);
  return g;
}

double Polygon2::support(const Vector& u) const {
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) s = std::max(s, v[0] * u[0] + v[1] * u[1]);
  return s;
}

bool Polygon2::contains(const GridPoint& p) const {
  const std::size_t m = grid_.size();
  for (std::size_t i = 0; i < m; ++i)
    if (orientation(grid_[i], grid_[(i + 1) % m], p) < 0) return false;
  return true;
}

Polygon2 Polygon2::scaled(double t) const {
  std::vector<Vector> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(t * v);
  return from_points(pts);
}

Polygon2 Polygon2::mapped(const Matrix& t) const {
  if (t.rows() != 2 || t.cols() != 2) throw InputError("polygon map must be 2x2");
  std::vector<Vector> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(t * v);
  return from_points(pts);
}

Polygon2 intersect(const Polygon2& a, const Polygon2& b) {
  std::vector<GridPoint> candidates;
  for (const auto& p : a.grid_)
    if (b.contains(p)) candidates.push_back(p);
  for (const auto& p : b.grid_)
    if (a.contains(p)) candidates.push_back(p);
  const std::size_t ma = a.grid_.size();
  const std::size_t mb = b.grid_.size();
  for (std::size_t i = 0; i < ma; ++i) {
    const GridPoint& a0 = a.grid_[i];
    const GridPoint& a1 = a.grid_[(i + 1) % ma];
    for (std::size_t j = 0; j < mb; ++j) {
      const GridPoint& b0 = b.grid_[j];
      const GridPoint& b1 = b.grid_[(j + 1) % mb];
      const int o1 = orientation(a0, a1, b0);
      const int o2 = orientation(a0, a1, b1);
      if (o1 * o2 >= 0) continue;
      const int o3 = orientation(b0, b1, a0);
      const int o4 = orientation(b0, b1, a1);
      if (o3 * o4 >= 0) continue;
      // Touching configurations are already covered by the containment pass.
      const GridPoint d{b1.x - b0.x, b1.y - b0.y};
      const GridPoint origin{};
      const __int128 num = cross(origin, GridPoint{b0.x - a0.x, b0.y - a0.y}, d);
      const __int128 den = cross(origin, GridPoint{a1.x - a0.x, a1.y - a0.y}, d);
      const long double t = static_cast<long double>(num) / static_cast<long double>(den);
      const long double px = static_cast<long double>(a0.x) + t * static_cast<long double>(a1.x - a0.x);
      const long double py = static_cast<long double>(a0.y) + t * static_cast<long double>(a1.y - a0.y);
      candidates.push_back({std::llround(px), std::llround(py)});
    }
  }
  return Polygon2::from_grid(std::move(candidates));
}

Polygon2 hull(const Polygon2& a, const Polygon2& b) {
  std::vector<GridPoint> pts = a.grid_;
  pts.insert(pts.end(), b.grid_.begin(), b.grid_.end());
  return Polygon2::from_grid(std::move(pts));
}

}  // namespace bmgeo

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace bmgeo {

namespace {

using V3 = Eigen::Vector3d;

struct Tri {
  int a, b, c;
  V3 n;
  double off;
  bool alive = true;
};

Tri make_tri(const std::vector<V3>& p, int a, int b, int c) {
  V3 n = (p[b] - p[a]).cross(p[c] - p[a]);
  const double len = n.norm();
  if (len > 0) n /= len;
  return {a, b, c, n, n.dot(p[a]), true};
}

struct HullResult {
  std::vector<V3> points;
  std::vector<Tri> tris;
  double eps;
};

HullResult incremental_hull(std::vector<V3> pts) {
  double scale = 0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());
  if (!(scale > 0) || !std::isfinite(scale)) throw InputError("polytope has no extent or non-finite coordinates");
  const double eps = Polytope3::kTol * scale;

  // Deduplicate within tolerance.
  std::sort(pts.begin(), pts.end(), [](const V3& a, const V3& b) {
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
  });
  std::vector<V3> uniq;
  for (const auto& p : pts) {
    bool dup = false;
    for (auto it = uniq.rbegin(); it != uniq.rend(); ++it) {
      if ((*it)[0] < p[0] - eps) break;
      if ((p - *it).norm() <= eps) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(p);
  }
  pts = std::move(uniq);
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw InputError("polytope needs at least four affinely independent points");

  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (pts[i].norm() > pts[i0].norm()) i0 = i;
  int i1 = i0;
  for (int i = 0; i < n; ++i)
    if ((pts[i] - pts[i0]).norm() > (pts[i1] - pts[i0]).norm()) i1 = i;
  const V3 dir = (pts[i1] - pts[i0]).normalized();
  auto line_dist = [&](int i) {
    const V3 v = pts[i] - pts[i0];
    return (v - v.dot(dir) * dir).norm();
  };
  int i2 = i0;
  for (int i = 0; i < n; ++i)
    if (line_dist(i) > line_dist(i2)) i2 = i;
  if (line_dist(i2) <= eps) throw InputError("polytope points are collinear");
  const V3 pn = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  int i3 = i0;
  for (int i = 0; i < n; ++i)
    if (std::fabs(pn.dot(pts[i] - pts[i0])) > std::fabs(pn.dot(pts[i3] - pts[i0]))) i3 = i;
  if (std::fabs(pn.dot(pts[i3] - pts[i0])) <= eps) throw InputError("polytope points are coplanar");

  const V3 centre = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  std::vector<Tri> tris;
  auto add_oriented = [&](int a, int b, int c) {
    Tri t = make_tri(pts, a, b, c);
    if (t.n.dot(centre) - t.off > 0) t = make_tri(pts, a, c, b);
    tris.push_back(t);
  };
  add_oriented(i0, i1, i2);
  add_oriented(i0, i1, i3);
  add_oriented(i0, i2, i3);
  add_oriented(i1, i2, i3);

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::set<std::pair<int, int>> edges;
    bool any = false;
    for (auto& t : tris) {
      if (!t.alive) continue;
      if (t.n.dot(pts[p]) - t.off > eps) {
        t.alive = false;
        any = true;
        edges.insert({t.a, t.b});
        edges.insert({t.b, t.c});
        edges.insert({t.c, t.a});
      }
    }
    if (!any) continue;
    for (const auto& [u, v] : edges)
      if (!edges.count({v, u})) tris.push_back(make_tri(pts, u, v, p));
    std::erase_if(tris, [](const Tri& t) { return !t.alive; });
  }
  return {std::move(pts), std::move(tris), eps};
}

// Points of the facet ordered counterclockwise around the outward normal with
// non-corner points dropped.
std::vector<int> order_facet(const std::vector<V3>& pts, std::vector<int> idx, const V3& normal, double eps) {
  V3 centre = V3::Zero();
  for (int i : idx) centre += pts[i];
  centre /= static_cast<double>(idx.size());
  V3 e1 = (pts[idx[0]] - centre);
  e1 -= e1.dot(normal) * normal;
  e1.normalize();
  const V3 e2 = normal.cross(e1);
  auto angle = [&](int i) {
    const V3 v = pts[i] - centre;
    return std::atan2(v.dot(e2), v.dot(e1));
  };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return angle(a) < angle(b); });
  bool changed = true;
  while (changed && idx.size() > 3) {
    changed = false;
    const std::size_t m = idx.size();
    for (std::size_t k = 0; k < m; ++k) {
      const V3& prev = pts[idx[(k + m - 1) % m]];
      const V3& cur = pts[idx[k]];
      const V3& next = pts[idx[(k + 1) % m]];
      const V3 chord = next - prev;
      const double len = chord.norm();
      const double dist = len > 0 ? (cur - prev).cross(chord).norm() / len : 0.0;
      if (dist <= eps) {
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }
  return idx;
}

}  // namespace

Polytope3 Polytope3::from_points(std::span<const Vector> points) {
  std::vector<V3> pts;
  pts.reserve(2 * points.size());
  for (const auto& p : points) {
    if (p.size() != 3) throw InputError("polytope3 vertices must be 3-dimensional");
    pts.emplace_back(p[0], p[1], p[2]);
    pts.emplace_back(-p[0], -p[1], -p[2]);
  }
  return build(std::move(pts));
}

Polytope3 Polytope3::from_halfspaces(std::span<const V3> duals) {
  std::vector<V3> pts;
  for (const auto& w : duals) {
    pts.push_back(w);
    pts.push_back(-w);
  }
  const HullResult dual = incremental_hull(std::move(pts));
  std::vector<V3> primal;
  primal.reserve(dual.tris.size());
  for (const auto& t : dual.tris) {
    if (!(t.off > dual.eps)) throw InputError("halfspace intersection is unbounded");
    primal.push_back(t.n / t.off);
  }
  return build(std::move(primal));
}

Polytope3 Polytope3::build(std::vector<V3> points) {
  HullResult h = incremental_hull(std::move(points));
  const auto& pts = h.points;
  const std::size_t nt = h.tris.size();

  std::map<std::pair<int, int>, std::size_t> edge_owner;
  for (std::size_t i = 0; i < nt; ++i) {
    const Tri& t = h.tris[i];
    edge_owner[{t.a, t.b}] = i;
    edge_owner[{t.b, t.c}] = i;
    edge_owner[{t.c, t.a}] = i;
  }

  // Flood-fill coplanar neighbours against the seed triangle's plane.
  std::vector<int> group(nt, -1);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t s = 0; s < nt; ++s) {
    if (group[s] >= 0) continue;
    const int g = static_cast<int>(groups.size());
    groups.emplace_back();
    std::vector<std::size_t> stack{s};
    group[s] = g;
    const Tri& seed = h.tris[s];
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      groups[g].push_back(cur);
      const Tri& t = h.tris[cur];
      for (auto [u, v] : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
        auto it = edge_owner.find({v, u});
        if (it == edge_owner.end() || group[it->second] >= 0) continue;
        const Tri& nb = h.tris[it->second];
        const bool coplanar = nb.n.dot(seed.n) > 0 && std::fabs(seed.n.dot(pts[nb.a]) - seed.off) <= h.eps &&
                              std::fabs(seed.n.dot(pts[nb.b]) - seed.off) <= h.eps &&
                              std::fabs(seed.n.dot(pts[nb.c]) - seed.off) <= h.eps;
        if (!coplanar) continue;
        group[it->second] = g;
        stack.push_back(it->second);
      }
    }
  }

  Polytope3 out;
  std::map<int, int> remap;
  for (const auto& members : groups) {
    std::set<int> idx;
    double best_area = -1;
    V3 normal = V3::Zero();
    for (std::size_t ti : members) {
      const Tri& t = h.tris[ti];
      idx.insert({t.a, t.b, t.c});
      const double area = (pts[t.b] - pts[t.a]).cross(pts[t.c] - pts[t.a]).norm();
      if (area > best_area) {
        best_area = area;
        normal = t.n;
      }
    }
    auto cycle = order_facet(pts, std::vector<int>(idx.begin(), idx.end()), normal, h.eps);
    Facet f;
    f.normal = normal;
    double off = 0;
    for (int i : cycle) off += normal.dot(pts[i]);
    f.offset = off / static_cast<double>(cycle.size());
    for (int i : cycle) {
      auto [it, inserted] = remap.emplace(i, static_cast<int>(out.vertices_.size()));
      if (inserted) out.vertices_.push_back(vec3(pts[i][0], pts[i][1], pts[i][2]));
      f.vertices.push_back(it->second);
    }
    out.facets_.push_back(std::move(f));
  }
  out.refresh_duals();
  out.validate();
  return out;
}

void Polytope3::refresh_duals() {
  duals_.clear();
  duals_.reserve(facets_.size());
  for (const auto& f : facets_) {
    const V3 w = f.normal / f.offset;
    duals_.push_back(vec3(w[0], w[1], w[2]));
  }
}

void Polytope3::validate() const {
  double scale = 0;
  for (const auto& v : vertices_) scale = std::max(scale, v.norm());
  const double eps = 1e3 * kTol * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    bool found = false;
    for (const auto& w : vertices_)
      if ((w + vertices_[i]).norm() <= eps) {
        found = true;
        break;
      }
    if (!found) throw VerificationError("polytope vertex set is not origin-symmetric");
  }
  for (std::size_t fi = 0; fi < facets_.size(); ++fi) {
    const Facet& f = facets_[fi];
    if (!(f.offset > 0)) throw VerificationError("origin not strictly interior to polytope");
    for (int i : f.vertices) {
      const Vector& v = vertices_[static_cast<std::size_t>(i)];
      if (std::fabs(f.normal.dot(Eigen::Vector3d(v[0], v[1], v[2])) - f.offset) > eps)
        throw VerificationError("polytope facet " + std::to_string(fi) + " is not planar");
    }
    for (const auto& v : vertices_)
      if (f.normal.dot(Eigen::Vector3d(v[0], v[1], v[2])) - f.offset > eps)
        throw VerificationError("polytope facet normal " + std::to_string(fi) + " is not outward");
  }
}

double Polytope3::gauge(const Vector& x) const {
  double g = 0.0;
  for (const auto& w : duals_) g = std::max(g, w[0] * x[0] + w[1] * x[1] + w[2] * x[2]);
  return g;
}

double Polytope3::support(const Vector& u) const {
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) s = std::max(s, v[0] * u[0] + v[1] * u[1] + v[2] * u[2]);
  return s;
}

Polytope3 Polytope3::scaled(double t) const {
  Polytope3 out = *this;
  for (auto& v : out.vertices_) v *= t;
  for (auto& f : out.facets_) f.offset *= t;
  out.refresh_duals();
  return out;
}

Polytope3 Polytope3::mapped(const Matrix& t) const {
  if (t.rows() != 3 || t.cols() != 3) throw InputError("polytope map must be 3x3");
  const Eigen::Matrix3d m = t;
  const Eigen::Matrix3d inv_t = m.inverse().transpose();
  Polytope3 out = *this;
  for (auto& v : out.vertices_) v = t * v;
  const bool flips = m.determinant() < 0;
  for (auto& f : out.facets_) {
    const V3 w = inv_t * (f.normal / f.offset);
    f.offset = 1.0 / w.norm();
    f.normal = w.normalized();
    if (flips) std::reverse(f.vertices.begin(), f.vertices.end());
  }
  out.refresh_duals();
  return out;
}

}  // namespace bmgeo

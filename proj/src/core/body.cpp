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

#include "core/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace bmgeo {

namespace {

GaugeExpr make_expr(GaugeExpr::Op op, int dim) {
  GaugeExpr e;
  e.op = op;
  e.dim = dim;
  return e;
}

double lp_norm(const Vector& x, LpExponent p) {
  if (p.infinite) return x.cwiseAbs().maxCoeff();
  if (p.value == 1.0) return x.cwiseAbs().sum();
  if (p.value == 2.0) return x.norm();
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::fabs(x[i]) / m, p.value);
  return m * std::pow(s, 1.0 / p.value);
}

LpExponent dual_exponent(LpExponent p) {
  if (p.infinite) return LpExponent::of(1.0);
  if (p.value == 1.0) return LpExponent::inf();
  return LpExponent::of(p.value / (p.value - 1.0));
}

// Sampled unit directions used for gauge comparisons and symmetry checks.
std::vector<Vector> sample_directions(int dim, int count) {
  std::vector<Vector> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int k = 0; k < count; ++k) dirs.push_back(search::unit_direction(std::numbers::pi * k / count));
  } else if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      dirs.push_back(vec3(r * std::cos(golden * k), r * std::sin(golden * k), z));
    }
  } else {
    std::mt19937_64 rng(0xd1ce5ULL);
    std::normal_distribution<double> g;
    for (int k = 0; k < count; ++k) {
      Vector v(dim);
      for (int i = 0; i < dim; ++i) v[i] = g(rng);
      dirs.push_back(v.normalized());
    }
  }
  return dirs;
}

template <class F>
double max_ratio(int dim, F&& ratio) {
  if (dim == 2) return search::max_over_circle(ratio).value;
  return search::max_over_sphere(ratio, dim).value;
}

}  // namespace

Body::Body(Polygon2 p) : impl_(std::make_shared<Impl>(std::move(p))) {}
Body::Body(Polytope3 p) : impl_(std::make_shared<Impl>(std::move(p))) {}
Body::Body(GaugeExpr g) : impl_(std::make_shared<Impl>(std::move(g))) {}

Body::Kind Body::kind() const {
  switch (impl_->rep.index()) {
    case 0:
      return Kind::Polygon;
    case 1:
      return Kind::Polytope;
    default:
      return Kind::Gauge;
  }
}

int Body::dim() const {
  if (polygon()) return 2;
  if (polytope()) return 3;
  return expr()->dim;
}

std::span<const Vector> Body::vertices() const {
  if (auto* p = polygon()) return p->vertices();
  if (auto* p = polytope()) return p->vertices();
  return {};
}

std::span<const Vector> Body::duals() const {
  if (auto* p = polygon()) return p->duals();
  if (auto* p = polytope()) return p->duals();
  return {};
}

const Vector& Body::axis_extents() const {
  std::call_once(impl_->extents_once, [this] {
    const int n = dim();
    Vector ext(n);
    for (int i = 0; i < n; ++i) ext[i] = support(*this, Vector::Unit(n, i));
    impl_->extents = ext;
  });
  return impl_->extents;
}

void require_same_dim(const Body& a, const Body& b) {
  if (a.dim() != b.dim())
    throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

void require_dim(const Body& body, const Vector& x) {
  if (x.size() != body.dim())
    throw InputError("vector of dimension " + std::to_string(x.size()) + " for body of dimension " +
                     std::to_string(body.dim()));
}

double gauge(const Body& body, const Vector& x) {
  require_dim(body, x);
  if (auto* p = body.polygon()) return p->gauge(x);
  if (auto* p = body.polytope()) return p->gauge(x);
  const GaugeExpr& e = *body.expr();
  switch (e.op) {
    case GaugeExpr::Op::Lp:
      return lp_norm(x, e.p);
    case GaugeExpr::Op::LinearImage:
      return gauge(e.children[0], Vector(e.inverse * x));
    case GaugeExpr::Op::Scaled:
      return gauge(e.children[0], x) / e.factor;
    case GaugeExpr::Op::Intersection:
      return std::max(gauge(e.children[0], x), gauge(e.children[1], x));
    case GaugeExpr::Op::Hull: {
      const Body& a = e.children[0];
      const Body& b = e.children[1];
      if (x.isZero(0.0)) return 0.0;
      const double ga = gauge(a, x);
      const double gb = gauge(b, x);
      // A minimizing split u lies in gb(x) A and in x - ga(x) B.
      const Vector ra = gb * a.axis_extents();
      const Vector rb = ga * b.axis_extents();
      Vector lo = (-ra).cwiseMax(x - rb);
      Vector hi = ra.cwiseMin(x + rb);
      for (Eigen::Index i = 0; i < x.size(); ++i)
        if (lo[i] > hi[i]) std::swap(lo[i], hi[i]);
      return search::inf_convolution([&](const Vector& u) { return gauge(a, u); },
                                     [&](const Vector& v) { return gauge(b, v); }, x, lo, hi);
    }
  }
  return 0.0;
}

double support(const Body& body, const Vector& u) {
  if (auto* p = body.polygon()) return p->support(u);
  if (auto* p = body.polytope()) return p->support(u);
  const GaugeExpr& e = *body.expr();
  switch (e.op) {
    case GaugeExpr::Op::Lp:
      return lp_norm(u, dual_exponent(e.p));
    case GaugeExpr::Op::LinearImage:
      return support(e.children[0], Vector(e.map.transpose() * u));
    case GaugeExpr::Op::Scaled:
      return e.factor * support(e.children[0], u);
    case GaugeExpr::Op::Hull:
      return std::max(support(e.children[0], u), support(e.children[1], u));
    case GaugeExpr::Op::Intersection:
      return max_ratio(body.dim(), [&](const Vector& x) { return std::fabs(u.dot(x)) / gauge(body, x); });
  }
  return 0.0;
}

bool has_exact_support(const Body& body) {
  const GaugeExpr* e = body.expr();
  if (!e) return true;
  switch (e->op) {
    case GaugeExpr::Op::Lp:
      return true;
    case GaugeExpr::Op::LinearImage:
    case GaugeExpr::Op::Scaled:
      return has_exact_support(e->children[0]);
    case GaugeExpr::Op::Hull:
      return has_exact_support(e->children[0]) && has_exact_support(e->children[1]);
    case GaugeExpr::Op::Intersection:
      return false;
  }
  return false;
}

double enclosing_factor(const Body& inner, const Body& outer) {
  require_same_dim(inner, outer);
  if (inner.same_object(outer)) return 1.0;
  if (outer.is_polytopal()) {
    double best = 0;
    for (const auto& v : outer.vertices()) best = std::max(best, gauge(inner, v));
    return best;
  }
  if (inner.is_polytopal() && has_exact_support(outer)) {
    double best = 0;
    for (const auto& w : inner.duals()) best = std::max(best, support(outer, w));
    return best;
  }
  // The gauge of an intersection is a maximum and a hull's convex hull is
  // spanned by its parts, so both split exactly.
  const GaugeExpr* ei = inner.expr();
  const GaugeExpr* eo = outer.expr();
  if (ei && ei->op == GaugeExpr::Op::Scaled) return enclosing_factor(ei->children[0], outer) / ei->factor;
  if (eo && eo->op == GaugeExpr::Op::Scaled) return eo->factor * enclosing_factor(inner, eo->children[0]);
  if (ei && ei->op == GaugeExpr::Op::Intersection)
    return std::max(enclosing_factor(ei->children[0], outer), enclosing_factor(ei->children[1], outer));
  if (eo && eo->op == GaugeExpr::Op::Hull)
    return std::max(enclosing_factor(inner, eo->children[0]), enclosing_factor(inner, eo->children[1]));
  if (has_exact_support(inner) && has_exact_support(outer)) {
    // outer in L * inner iff h_outer <= L h_inner on every direction.
    return max_ratio(inner.dim(), [&](const Vector& u) { return support(outer, u) / support(inner, u); });
  }
  return max_ratio(inner.dim(), [&](const Vector& x) { return gauge(inner, x) / gauge(outer, x); });
}

Body intersect(const Body& a, const Body& b) {
  require_same_dim(a, b);
  if (a.same_object(b)) return a;
  if (a.polygon() && b.polygon()) return Body(intersect(*a.polygon(), *b.polygon()));
  if (a.polytope() && b.polytope()) {
    std::vector<Eigen::Vector3d> duals;
    for (const auto& w : a.duals()) duals.emplace_back(w[0], w[1], w[2]);
    for (const auto& w : b.duals()) duals.emplace_back(w[0], w[1], w[2]);
    return Body(Polytope3::from_halfspaces(duals));
  }
  GaugeExpr e = make_expr(GaugeExpr::Op::Intersection, a.dim());
  e.children = {a, b};
  return Body(std::move(e));
}

Body hull_union(const Body& a, const Body& b) {
  require_same_dim(a, b);
  if (a.same_object(b)) return a;
  if (a.polygon() && b.polygon()) return Body(hull(*a.polygon(), *b.polygon()));
  if (a.polytope() && b.polytope()) {
    std::vector<Vector> pts(a.vertices().begin(), a.vertices().end());
    pts.insert(pts.end(), b.vertices().begin(), b.vertices().end());
    return Body(Polytope3::from_points(pts));
  }
  GaugeExpr e = make_expr(GaugeExpr::Op::Hull, a.dim());
  e.children = {a, b};
  return Body(std::move(e));
}

Body intersection_gauge(const Body& a, const Body& b) {
  require_same_dim(a, b);
  GaugeExpr e = make_expr(GaugeExpr::Op::Intersection, a.dim());
  e.children = {a, b};
  return Body(std::move(e));
}

Body hull_gauge(const Body& a, const Body& b) {
  require_same_dim(a, b);
  GaugeExpr e = make_expr(GaugeExpr::Op::Hull, a.dim());
  e.children = {a, b};
  return Body(std::move(e));
}

Body scale(const Body& body, double t) {
  if (!(t > 0) || !std::isfinite(t)) throw InputError("scale factor must be positive and finite");
  if (t == 1.0) return body;
  if (auto* p = body.polygon()) return Body(p->scaled(t));
  if (auto* p = body.polytope()) return Body(p->scaled(t));
  const GaugeExpr& inner = *body.expr();
  GaugeExpr e = make_expr(GaugeExpr::Op::Scaled, body.dim());
  if (inner.op == GaugeExpr::Op::Scaled) {
    e.factor = inner.factor * t;
    e.children = inner.children;
  } else {
    e.factor = t;
    e.children = {body};
  }
  return Body(std::move(e));
}

Body linear_image(const Body& body, const Matrix& t) {
  const int n = body.dim();
  if (t.rows() != n || t.cols() != n) throw InputError("linear map must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!t.allFinite()) throw InputError("linear map has non-finite entries");
  const double det = t.determinant();
  if (!(std::fabs(det) >= 1e-12)) throw InputError("linear map is singular");
  if (auto* p = body.polygon()) return Body(p->mapped(t));
  if (auto* p = body.polytope()) return Body(p->mapped(t));
  const GaugeExpr& inner = *body.expr();
  GaugeExpr e = make_expr(GaugeExpr::Op::LinearImage, n);
  if (inner.op == GaugeExpr::Op::LinearImage) {
    e.map = t * inner.map;
    e.children = inner.children;
  } else {
    e.map = t;
    e.children = {body};
  }
  e.inverse = e.map.inverse();
  return Body(std::move(e));
}

Body lp_ball(LpExponent p, int dim) {
  if (dim < 2 || dim > kMaxDim) throw InputError("lp ball dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  if (!p.infinite && !(p.value >= 1.0)) throw InputError("lp exponent must be >= 1");
  if (!p.infinite && !std::isfinite(p.value)) p = LpExponent::inf();
  if (p.infinite || p.value == 1.0) {
    std::vector<Vector> pts;
    if (dim == 2) {
      if (p.infinite) pts = {vec2(1, 1), vec2(1, -1)};
      else pts = {vec2(1, 0), vec2(0, 1)};
      return Body(Polygon2::from_points(pts));
    }
    if (dim == 3) {
      if (p.infinite) pts = {vec3(1, 1, 1), vec3(1, 1, -1), vec3(1, -1, 1), vec3(1, -1, -1)};
      else pts = {vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)};
      return Body(Polytope3::from_points(pts));
    }
  }
  GaugeExpr e = make_expr(GaugeExpr::Op::Lp, dim);
  e.p = p;
  return Body(std::move(e));
}

Body polygonize(const Body& body, int vertices) {
  if (body.dim() != 2) throw InputError("polygonize needs a 2-dimensional body");
  if (body.polygon()) return body;
  if (vertices < 4 || vertices % 2 != 0) throw InputError("polygonize needs an even vertex count >= 4");
  std::vector<Vector> pts;
  for (int k = 0; k < vertices / 2; ++k) {
    const Vector u = search::unit_direction(2.0 * std::numbers::pi * k / vertices);
    pts.push_back(u / gauge(body, u));
  }
  return Body(Polygon2::from_points(pts));
}

bool gauge_equal(const Body& a, const Body& b, double tol) {
  if (a.dim() != b.dim()) return false;
  if (a.same_object(b)) return true;
  if (a.polygon() && b.polygon()) {
    const auto& va = a.polygon()->vertices();
    const auto& vb = b.polygon()->vertices();
    if (va.size() != vb.size()) return false;
    for (const auto& v : va) {
      const bool match = std::any_of(vb.begin(), vb.end(), [&](const Vector& w) { return (v - w).norm() <= tol; });
      if (!match) return false;
    }
  }
  for (const auto& u : sample_directions(a.dim(), 4096)) {
    const double ga = gauge(a, u);
    const double gb = gauge(b, u);
    if (std::fabs(ga - gb) > tol * std::max(1.0, ga)) return false;
  }
  return true;
}

bool is_symmetric(const Body& body) {
  if (auto* p = body.polygon()) {
    const auto& g = p->grid_vertices();
    return std::all_of(g.begin(), g.end(),
                       [&](const GridPoint& v) { return std::find(g.begin(), g.end(), -v) != g.end(); });
  }
  if (auto* p = body.polytope()) {
    try {
      p->validate();
    } catch (const VerificationError&) {
      return false;
    }
    return true;
  }
  for (const auto& u : sample_directions(body.dim(), 256)) {
    const double g1 = gauge(body, u);
    const double g2 = gauge(body, Vector(-u));
    if (std::fabs(g1 - g2) > 1e-9 * std::max(1.0, g1)) return false;
  }
  return true;
}

}  // namespace bmgeo

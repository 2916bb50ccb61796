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

#include "core/polygon2.hpp"
#include "core/polytope3.hpp"
#include "core/types.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace bmgeo {

class Body;

/// Exponent of an lp norm. Infinity is a distinguished value so that exact
/// dispatch to the cube polytope is possible.
struct LpExponent {
  double value = 2.0;
  bool infinite = false;

  static LpExponent inf() { return {0.0, true}; }
  static LpExponent of(double p) { return {p, false}; }
  bool is(double p) const { return !infinite && value == p; }
};

/// Symbolic norm descriptor for a body known only through its gauge.
struct GaugeExpr {
  enum class Op { Lp, LinearImage, Intersection, Hull, Scaled };

  Op op = Op::Lp;
  int dim = 2;
  LpExponent p;          // Lp
  Matrix map;            // LinearImage
  Matrix inverse;        // LinearImage
  double factor = 1.0;   // Scaled
  std::vector<Body> children;
};

/// Immutable handle to an origin-symmetric convex body: an exact polygon, a
/// 3D polytope, or a gauge oracle. Copies share the representation.
class Body {
 public:
  enum class Kind { Polygon, Polytope, Gauge };

  explicit Body(Polygon2 p);
  explicit Body(Polytope3 p);
  explicit Body(GaugeExpr g);

  Kind kind() const;
  int dim() const;

  const Polygon2* polygon() const { return std::get_if<Polygon2>(&impl_->rep); }
  const Polytope3* polytope() const { return std::get_if<Polytope3>(&impl_->rep); }
  const GaugeExpr* expr() const { return std::get_if<GaugeExpr>(&impl_->rep); }

  /// Vertex list for polygon / polytope bodies, empty otherwise.
  std::span<const Vector> vertices() const;
  /// Dual points w (body = { x : w . x <= 1 }) for polygon / polytope bodies.
  std::span<const Vector> duals() const;
  bool is_polytopal() const { return kind() != Kind::Gauge; }

  /// support(e_i) per coordinate axis; the body lies in the box they span.
  const Vector& axis_extents() const;

  bool same_object(const Body& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    std::variant<Polygon2, Polytope3, GaugeExpr> rep;
    mutable std::once_flag extents_once;
    mutable Vector extents;
    explicit Impl(std::variant<Polygon2, Polytope3, GaugeExpr> r) : rep(std::move(r)) {}
  };
  std::shared_ptr<const Impl> impl_;
};

/// Minkowski functional: inf { t > 0 : x / t in body }.
double gauge(const Body& body, const Vector& x);
/// max { <u, x> : x in body }.
double support(const Body& body, const Vector& u);
/// True when `support` is evaluated in closed form (no boundary search).
bool has_exact_support(const Body& body);

/// Smallest L with outer subset of L * inner.
double enclosing_factor(const Body& inner, const Body& outer);

Body intersect(const Body& a, const Body& b);
Body hull_union(const Body& a, const Body& b);
/// Descriptor-only variants: never build an exact representation, so the
/// gauge is the pointwise max / the numeric inf-convolution of the parts.
Body intersection_gauge(const Body& a, const Body& b);
Body hull_gauge(const Body& a, const Body& b);
Body scale(const Body& body, double t);
Body linear_image(const Body& body, const Matrix& t);
Body lp_ball(LpExponent p, int dim);

/// Polygon with `vertices` boundary points at equally spaced angles,
/// starting at angle 0. Polygons pass through unchanged.
Body polygonize(const Body& body, int vertices = 64);

/// sup over sampled unit directions of |gauge_a - gauge_b|, plus vertex-set
/// comparison when both are polygons.
bool gauge_equal(const Body& a, const Body& b, double tol = 1e-9);

/// Checks origin symmetry of the representation (exact for polygons,
/// toleranced for polytopes, sampled for gauge bodies).
bool is_symmetric(const Body& body);

void require_same_dim(const Body& a, const Body& b);
void require_dim(const Body& body, const Vector& x);

}  // namespace bmgeo

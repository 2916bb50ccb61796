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

#include "core/geodesics.hpp"

#include <array>
#include <span>
#include <vector>

namespace bmgeo::dim2 {

/// An edge of a polygon: consecutive vertices p -> q of the ccw cycle.
struct EdgeFace {
  Vector p;
  Vector q;
  std::size_t index = 0;
};

/// All 1-faces of the polygon (its edges after collinear merge).
std::vector<EdgeFace> faces_1d(const Polygon2& poly);

/// Sorted set of ratios of areas of the triangles (0, p, q) over the edges.
/// Invariant under invertible linear maps.
struct AreaRatioInvariant {
  std::vector<double> ratios;
  /// Number of edge triangles the ratios were formed from.
  std::size_t triangles = 0;

  bool contains(double r, double rel_tol = 1e-7) const;
};

AreaRatioInvariant area_ratios(const Polygon2& poly);

/// True iff some ratio of one set has no partner within 1e-7 (relative) in
/// the other. Equal invariants are inconclusive, never a proof of isometry.
bool invariant_distinct(const AreaRatioInvariant& a, const AreaRatioInvariant& b);

/// A point strictly between the extreme balls: inside B_lambda, outside
/// C_lambda, with a linear form separating it from C_lambda.
struct SeparationWitness {
  Vector point;
  /// sup over C_lambda of functional . x is 1; functional . point > 1.
  Vector functional;
  double margin_out = 0;  // gauge_C(point) - 1
  double margin_in = 0;   // 1 - gauge_B(point)
  /// Boundary sample count at which the witness was found.
  int resolution = 0;
};

SeparationWitness separation_witness(const PositionedPair& pair, double lambda);

struct FamilyMember {
  Body body;
  Vector q;
  /// area(0, p1, q) / area(0, p2, q)
  double ratio = 0;
  SandwichResult sandwich;
  std::array<EdgeFace, 2> new_faces;
  AreaRatioInvariant invariant;
};

struct Family {
  double lambda = 0;
  SeparationWitness witness;
  Vector p1;
  Vector p2;
  double eps = 0;
  double delta = 0;
  AreaRatioInvariant c_invariant;
  AreaRatioInvariant b_invariant;
  std::vector<FamilyMember> members;
};

/// Planar bodies strictly between C_lambda and B_lambda, pairwise certified
/// non-isometric through their area-ratio invariants. Both balls of the pair
/// must be polygons. Throws ConstructionError when `count` members with
/// well separated ratios cannot be placed.
Family bq_family(const PositionedPair& pair, double lambda, int count);

/// Where a 2-face may be attached in 3D: a disc of `radius` around
/// `centre` in the plane { functional . x = functional . centre }.
struct FacePlacement {
  SeparationWitness witness;
  Vector centre;
  Vector functional;
  double radius = 0;
  Vector e1;
  Vector e2;
};

FacePlacement face_placement(const PositionedPair& pair, double lambda);

/// Maps a planar convex shape (coordinates in the e1/e2 frame) into the
/// placement disc, scaled to 0.9 of its radius.
std::vector<Vector> place_face(const FacePlacement& placement, std::span<const Vector> shape);

struct Attachment {
  Body body;
  std::size_t facet_index = 0;
  std::vector<Vector> facet_vertices;
  SandwichResult sandwich;
  std::vector<int> census;
};

/// conv(C_lambda, K, -K) for a planar polygon K in 3D. K must be strictly
/// separated from C_lambda by its own plane and lie inside B_lambda; K then
/// appears as a facet of the result.
Attachment attach_face_3d(const PositionedPair& pair, double lambda, std::span<const Vector> face);

/// Sorted vertex counts of all facets.
std::vector<int> facet_census(const Polytope3& poly);

}  // namespace bmgeo::dim2

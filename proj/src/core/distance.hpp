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

#include "core/body.hpp"

#include <cstdint>

namespace bmgeo {

struct OptimizerConfig {
  int starts = 32;
  int max_iters = 2000;
  double tol = 1e-6;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DistanceReport {
  double estimate = 1.0;  // factor_in * factor_out
  Matrix witness;         // T with |det T| = 1, applied to the first body
  double factor_in = 1.0;   // smallest s with T(a) inside s * b
  double factor_out = 1.0;  // smallest r with b inside r * T(a)
  int starts_used = 0;
  bool converged = false;
};

/// Two bodies with ball_e inside ball_f inside d * ball_e, d being the
/// identity-map distortion of the pair.
struct PositionedPair {
  Body ball_e;
  Body ball_f;
  double d = 1.0;
  bool converged = true;

  /// Takes the bodies as positioned; throws InputError unless the
  /// inclusions hold within 1e-9.
  static PositionedPair from_bodies(Body e, Body f);
  /// Scales `f` so that it touches `e` from outside (identity witness).
  static PositionedPair by_scaling(const Body& e, const Body& f);

  int dim() const { return ball_e.dim(); }
};

/// r * s with s = enclosing_factor(a, b) and r = enclosing_factor(b, a): the
/// distortion of the identity map after optimal scaling.
double fixed_position_distance(const Body& a, const Body& b);

/// Identity-map distortion between T(a) and b. Polytopal bodies are mapped
/// through their vertex / facet lists without rebuilding.
struct Distortion {
  double factor_in;
  double factor_out;
  double value() const { return factor_in * factor_out; }
};
Distortion distortion_under(const Body& a, const Body& b, const Matrix& t);

/// Multi-start simplex search over det-normalized maps. The estimate is an
/// upper bound on the Banach-Mazur distance and never exceeds the
/// fixed-position distance.
DistanceReport bm_distance(const Body& a, const Body& b, const OptimizerConfig& cfg = {});

/// Keeps `a` in place and replaces `b` by the optimally mapped and scaled
/// copy so that a is inside b' inside d * a.
PositionedPair canonical_position(const Body& a, const Body& b, const OptimizerConfig& cfg = {});

/// n^|1/r - 1/s| for exponents on the same side of 2.
double known_lp_distance(LpExponent r, LpExponent s, int n);

}  // namespace bmgeo

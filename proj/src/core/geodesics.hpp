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

#include "core/distance.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bmgeo {

/// Intersection-type interpolating ball: (d^lambda * ball_e) meet ball_f.
Body b_lambda(const PositionedPair& pair, double lambda);
/// Hull-type interpolating ball: conv(ball_e, d^-(1-lambda) * ball_f).
Body c_lambda(const PositionedPair& pair, double lambda);

struct InclusionChain {
  /// ball_e in C, C in B, B in ball_f, ball_f in d * ball_e.
  static constexpr std::array<const char*, 4> kNames = {"E<=C", "C<=B", "B<=F", "F<=dE"};
  /// Containment factor of each inclusion (<= 1 + 1e-9 means it holds).
  std::array<double, 4> factors{};
  /// How far the outer set sticks out: outer inside (1 + gap) * inner.
  std::array<double, 4> gaps{};
  bool holds = false;
};
InclusionChain inclusion_chain_check(const PositionedPair& pair, double lambda);

struct ExtremeDistances {
  double e_to_b;  // d(E, E_lambda), expected d^lambda
  double b_to_f;  // d(E_lambda, F), expected d^(1-lambda)
  double e_to_c;  // d(E, F_lambda), expected d^lambda
  double c_to_f;  // d(F_lambda, F), expected d^(1-lambda)
};
/// Fixed-position distances to and from both extreme balls; throws
/// VerificationError naming the first identity off by more than 1e-6.
ExtremeDistances extreme_distance_check(const PositionedPair& pair, double lambda);

enum class PathKind { Intersection, Hull, Concatenation };
const char* to_string(PathKind kind);
PathKind path_kind_from_string(const std::string& s);

struct PathSample {
  double lambda;
  Body body;
};

/// A lambda-parametrized family of bodies from ball_e (lambda = 0) to
/// ball_f (lambda = 1). Bodies off the sample grid are constructed on demand
/// unless the path was loaded from samples only.
class GeodesicPath {
 public:
  static GeodesicPath build(const PositionedPair& pair, PathKind kind, std::span<const double> grid);
  /// Path known only through its samples (for example read back from disk).
  static GeodesicPath from_samples(PositionedPair pair, PathKind kind, std::vector<PathSample> samples);
  /// Constant path at a body.
  static GeodesicPath constant(const Body& body);

  PathKind kind() const { return kind_; }
  const PositionedPair& pair() const { return pair_; }
  double d() const { return pair_.d; }
  const std::vector<PathSample>& samples() const { return samples_; }
  const std::vector<GeodesicPath>& segments() const { return segments_; }
  const std::vector<double>& breaks() const { return breaks_; }

  Body body_at(double lambda) const;

  friend GeodesicPath join_geodesics(const GeodesicPath& first, const GeodesicPath& second);

 private:
  GeodesicPath(PositionedPair pair, PathKind kind) : pair_(std::move(pair)), kind_(kind) {}

  PositionedPair pair_;
  PathKind kind_;
  bool constructive_ = true;
  std::vector<PathSample> samples_;
  std::vector<GeodesicPath> segments_;  // Concatenation only
  std::vector<double> breaks_;          // segment boundaries, 0 ... 1
};

std::vector<double> uniform_grid(int points);

struct PartitionCheck {
  std::vector<double> partition;
  std::vector<double> pairwise;  // d(gamma(t_{i-1}), gamma(t_i))
  std::vector<double> expected;  // d^(t_i - t_{i-1})
  double product = 1.0;
  double target = 1.0;
  bool ok = false;
  /// First sub-interval whose factor is off, if any.
  std::optional<std::size_t> offending;
  std::string describe() const;
};

/// Evaluates the product law without throwing.
PartitionCheck evaluate_product_law(const GeodesicPath& path, std::span<const double> partition,
                                    double tol = 1e-6);
/// As evaluate_product_law, throwing VerificationError with the offending
/// sub-interval on failure.
PartitionCheck geodesic_product_check(const GeodesicPath& path, std::span<const double> partition);

/// Largest sum of log distances over dyadic partitions of depth <= refinement.
double path_length(const GeodesicPath& path, int refinement);

struct SandwichResult {
  double lower_factor = 0;  // C inside lower_factor * X
  double upper_factor = 0;  // X inside upper_factor * B
  bool inside = false;
  double d_ex = 0;
  double d_xf = 0;
  bool multiplicative = false;
  bool ok() const { return inside && multiplicative; }
};
/// C_lambda in X in B_lambda within 1e-9; when sandwiched, asserts
/// d(E, X) d(X, F) = d within 1e-6 (VerificationError otherwise).
SandwichResult sandwich_check(const Body& x, const PositionedPair& pair, double lambda);
SandwichResult sandwich_check(const Body& x, const PositionedPair& pair, double lambda, const Body& c, const Body& b);

struct KjGauges {
  double k_value;  // max(d^-lambda gauge_E, gauge_F)
  double j_value;  // inf-convolution of gauge_E and d^(1-lambda) gauge_F
};
/// Closed-form gauges for the extreme balls, checked against the
/// constructed bodies to 1e-6.
KjGauges kj_gauges(const PositionedPair& pair, double lambda, const Vector& x);
KjGauges kj_gauges(const PositionedPair& pair, double lambda, const Vector& x, const Body& b, const Body& c);

}  // namespace bmgeo

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

#include "core/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bmgeo {

namespace {

constexpr double kInclusionTol = 1e-9;
constexpr double kIdentityTol = 1e-6;

void require_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InputError("lambda must lie in [0, 1]");
}

bool close_rel(double value, double expected, double tol) {
  return std::fabs(value - expected) <= tol * std::fabs(expected);
}

void require_partition(std::span<const double> t) {
  if (t.size() < 2) throw InputError("partition needs at least two points");
  if (t.front() != 0.0 || t.back() != 1.0) throw InputError("partition must start at 0 and end at 1");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw InputError("partition must be strictly increasing");
}

}  // namespace

Body b_lambda(const PositionedPair& pair, double lambda) {
  require_lambda(lambda);
  // E is inside F, so the endpoints collapse to the balls themselves.
  if (lambda == 0.0) return pair.ball_e;
  if (lambda == 1.0) return pair.ball_f;
  return intersect(scale(pair.ball_e, std::pow(pair.d, lambda)), pair.ball_f);
}

Body c_lambda(const PositionedPair& pair, double lambda) {
  require_lambda(lambda);
  if (lambda == 0.0) return pair.ball_e;
  if (lambda == 1.0) return pair.ball_f;
  return hull_union(pair.ball_e, scale(pair.ball_f, std::pow(pair.d, -(1.0 - lambda))));
}

InclusionChain inclusion_chain_check(const PositionedPair& pair, double lambda) {
  const Body b = b_lambda(pair, lambda);
  const Body c = c_lambda(pair, lambda);
  const Body& e = pair.ball_e;
  const Body& f = pair.ball_f;
  InclusionChain out;
  out.factors = {enclosing_factor(c, e), enclosing_factor(b, c), enclosing_factor(f, b),
                 enclosing_factor(e, f) / pair.d};
  out.gaps = {enclosing_factor(e, c) - 1.0, enclosing_factor(c, b) - 1.0, enclosing_factor(b, f) - 1.0,
              pair.d * enclosing_factor(f, e) - 1.0};
  out.holds = std::all_of(out.factors.begin(), out.factors.end(), [](double v) { return v <= 1 + kInclusionTol; });
  return out;
}

ExtremeDistances extreme_distance_check(const PositionedPair& pair, double lambda) {
  const Body b = b_lambda(pair, lambda);
  const Body c = c_lambda(pair, lambda);
  ExtremeDistances out{fixed_position_distance(pair.ball_e, b), fixed_position_distance(b, pair.ball_f),
                       fixed_position_distance(pair.ball_e, c), fixed_position_distance(c, pair.ball_f)};
  const double near = std::pow(pair.d, lambda);
  const double far = std::pow(pair.d, 1.0 - lambda);
  const std::pair<double, double> checks[] = {
      {out.e_to_b, near}, {out.b_to_f, far}, {out.e_to_c, near}, {out.c_to_f, far}};
  const char* names[] = {"d(E,E_lambda) = d^lambda", "d(E_lambda,F) = d^(1-lambda)", "d(E,F_lambda) = d^lambda",
                         "d(F_lambda,F) = d^(1-lambda)"};
  for (int i = 0; i < 4; ++i) {
    if (!close_rel(checks[i].first, checks[i].second, kIdentityTol)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "identity " << names[i] << " violated: " << checks[i].first << " vs " << checks[i].second;
      throw VerificationError(msg.str());
    }
  }
  return out;
}

const char* to_string(PathKind kind) {
  switch (kind) {
    case PathKind::Intersection:
      return "intersection";
    case PathKind::Hull:
      return "hull";
    case PathKind::Concatenation:
      return "concatenation";
  }
  return "?";
}

PathKind path_kind_from_string(const std::string& s) {
  if (s == "intersection") return PathKind::Intersection;
  if (s == "hull") return PathKind::Hull;
  if (s == "concatenation") return PathKind::Concatenation;
  throw InputError("unknown path kind '" + s + "' (expected intersection or hull)");
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw InputError("grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return g;
}

GeodesicPath GeodesicPath::build(const PositionedPair& pair, PathKind kind, std::span<const double> grid) {
  if (kind == PathKind::Concatenation) throw InputError("concatenations are built with join_geodesics");
  require_partition(grid);
  GeodesicPath path(pair, kind);
  for (double lambda : grid) {
    Body body = kind == PathKind::Intersection ? b_lambda(pair, lambda) : c_lambda(pair, lambda);
    if (enclosing_factor(body, pair.ball_e) > 1 + kInclusionTol ||
        enclosing_factor(pair.ball_f, body) > 1 + kInclusionTol) {
      std::ostringstream msg;
      msg << "path body at lambda " << lambda << " leaves the [ball_e, ball_f] sandwich";
      throw VerificationError(msg.str());
    }
    path.samples_.push_back({lambda, std::move(body)});
  }
  return path;
}

GeodesicPath GeodesicPath::from_samples(PositionedPair pair, PathKind kind, std::vector<PathSample> samples) {
  std::vector<double> lambdas;
  for (const auto& s : samples) lambdas.push_back(s.lambda);
  require_partition(lambdas);
  GeodesicPath path(std::move(pair), kind);
  path.constructive_ = false;
  path.samples_ = std::move(samples);
  return path;
}

GeodesicPath GeodesicPath::constant(const Body& body) {
  const double grid[] = {0.0, 1.0};
  return build(PositionedPair{body, body, 1.0, true}, PathKind::Intersection, grid);
}

Body GeodesicPath::body_at(double lambda) const {
  require_lambda(lambda);
  for (const auto& s : samples_)
    if (std::fabs(s.lambda - lambda) <= 1e-12) return s.body;
  if (!constructive_) {
    std::ostringstream msg;
    msg << "lambda " << lambda << " is not among the stored samples";
    throw InputError(msg.str());
  }
  switch (kind_) {
    case PathKind::Intersection:
      return b_lambda(pair_, lambda);
    case PathKind::Hull:
      return c_lambda(pair_, lambda);
    case PathKind::Concatenation:
      break;
  }
  std::size_t i = 0;
  while (i + 1 < segments_.size() && lambda > breaks_[i + 1]) ++i;
  const double lo = breaks_[i];
  const double hi = breaks_[i + 1];
  const double local = std::clamp((lambda - lo) / (hi - lo), 0.0, 1.0);
  return segments_[i].body_at(local);
}

GeodesicPath join_geodesics(const GeodesicPath& first, const GeodesicPath& second) {
  if (!gauge_equal(first.pair().ball_f, second.pair().ball_e))
    throw InputError("junction mismatch: the first path does not end where the second starts");
  constexpr double kTrivial = 1e-12;
  if (second.d() <= 1 + kTrivial) return first;
  if (first.d() <= 1 + kTrivial) return second;

  const Body& e = first.pair().ball_e;
  const Body& f = second.pair().ball_f;
  const double outer = fixed_position_distance(e, f);
  const double product = first.d() * second.d();
  if (!close_rel(outer, product, kIdentityTol)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "junction is not an intermediate space: d(E,F) = " << outer << " but d(E,X) d(X,F) = " << product;
    throw InputError(msg.str());
  }

  GeodesicPath joined(PositionedPair{e, f, product, first.pair().converged && second.pair().converged},
                      PathKind::Concatenation);
  auto append = [&](const GeodesicPath& p) {
    if (p.kind() == PathKind::Concatenation) {
      for (const auto& s : p.segments()) joined.segments_.push_back(s);
    } else {
      joined.segments_.push_back(p);
    }
  };
  append(first);
  append(second);
  const double total = std::log(product);
  double acc = 0;
  joined.breaks_.push_back(0.0);
  for (const auto& s : joined.segments_) {
    acc += std::log(s.d());
    joined.breaks_.push_back(acc / total);
  }
  joined.breaks_.back() = 1.0;
  for (std::size_t i = 0; i < joined.segments_.size(); ++i) {
    const double lo = joined.breaks_[i];
    const double hi = joined.breaks_[i + 1];
    for (const auto& s : joined.segments_[i].samples()) {
      const double g = lo + s.lambda * (hi - lo);
      if (!joined.samples_.empty() && std::fabs(joined.samples_.back().lambda - g) <= 1e-12) continue;
      joined.samples_.push_back({g, s.body});
    }
  }
  joined.samples_.back().lambda = 1.0;
  joined.constructive_ = std::all_of(joined.segments_.begin(), joined.segments_.end(),
                                     [](const GeodesicPath& s) { return s.constructive_; });
  return joined;
}

std::string PartitionCheck::describe() const {
  std::ostringstream msg;
  msg.precision(12);
  if (offending) {
    const std::size_t i = *offending;
    msg << "interval [" << partition[i] << ", " << partition[i + 1] << "]: factor " << pairwise[i] << ", expected "
        << expected[i];
  } else if (!ok) {
    msg << "product " << product << " differs from d = " << target;
  } else {
    msg << "product law holds over " << pairwise.size() << " intervals";
  }
  return msg.str();
}

PartitionCheck evaluate_product_law(const GeodesicPath& path, std::span<const double> partition, double tol) {
  require_partition(partition);
  PartitionCheck out;
  out.partition.assign(partition.begin(), partition.end());
  out.target = path.d();
  std::vector<Body> bodies;
  bodies.reserve(partition.size());
  for (double t : partition) bodies.push_back(path.body_at(t));
  for (std::size_t i = 1; i < bodies.size(); ++i) {
    const double factor = fixed_position_distance(bodies[i - 1], bodies[i]);
    const double expected = std::pow(path.d(), partition[i] - partition[i - 1]);
    out.pairwise.push_back(factor);
    out.expected.push_back(expected);
    out.product *= factor;
    if (!out.offending && !close_rel(factor, expected, tol)) out.offending = i - 1;
  }
  out.ok = !out.offending && close_rel(out.product, out.target, tol);
  return out;
}

PartitionCheck geodesic_product_check(const GeodesicPath& path, std::span<const double> partition) {
  PartitionCheck check = evaluate_product_law(path, partition);
  if (!check.ok) throw VerificationError("product law violated: " + check.describe());
  return check;
}

double path_length(const GeodesicPath& path, int refinement) {
  if (refinement < 1) throw InputError("refinement must be >= 1");
  if (refinement > 20) throw InputError("refinement above 20 is not supported");
  const std::size_t n = std::size_t{1} << refinement;
  std::vector<Body> bodies;
  bodies.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) bodies.push_back(path.body_at(static_cast<double>(j) / static_cast<double>(n)));
  double best = 0.0;
  for (int depth = 0; depth <= refinement; ++depth) {
    const std::size_t stride = n >> depth;
    double sum = 0;
    for (std::size_t j = stride; j <= n; j += stride) sum += std::log(fixed_position_distance(bodies[j - stride], bodies[j]));
    best = std::max(best, sum);
  }
  return best;
}

SandwichResult sandwich_check(const Body& x, const PositionedPair& pair, double lambda) {
  return sandwich_check(x, pair, lambda, c_lambda(pair, lambda), b_lambda(pair, lambda));
}

SandwichResult sandwich_check(const Body& x, const PositionedPair& pair, double lambda, const Body& c, const Body& b) {
  require_lambda(lambda);
  require_same_dim(x, pair.ball_e);
  SandwichResult out;
  out.lower_factor = enclosing_factor(x, c);
  out.upper_factor = enclosing_factor(b, x);
  out.inside = out.lower_factor <= 1 + kInclusionTol && out.upper_factor <= 1 + kInclusionTol;
  if (!out.inside) return out;
  out.d_ex = fixed_position_distance(pair.ball_e, x);
  out.d_xf = fixed_position_distance(x, pair.ball_f);
  out.multiplicative = close_rel(out.d_ex * out.d_xf, pair.d, kIdentityTol);
  if (!out.multiplicative) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "sandwiched body is not intermediate: d(E,X) d(X,F) = " << out.d_ex * out.d_xf << " vs d = " << pair.d;
    throw VerificationError(msg.str());
  }
  return out;
}

KjGauges kj_gauges(const PositionedPair& pair, double lambda, const Vector& x) {
  return kj_gauges(pair, lambda, x, b_lambda(pair, lambda), c_lambda(pair, lambda));
}

KjGauges kj_gauges(const PositionedPair& pair, double lambda, const Vector& x, const Body& b, const Body& c) {
  require_lambda(lambda);
  require_dim(pair.ball_e, x);
  const double d = pair.d;
  KjGauges out;
  out.k_value = std::max(std::pow(d, -lambda) * gauge(pair.ball_e, x), gauge(pair.ball_f, x));
  const Body split = hull_gauge(pair.ball_e, scale(pair.ball_f, std::pow(d, -(1.0 - lambda))));
  out.j_value = gauge(split, x);
  const double kb = gauge(b, x);
  const double jc = gauge(c, x);
  if (std::fabs(out.k_value - kb) > kIdentityTol * std::max(1.0, kb) ||
      std::fabs(out.j_value - jc) > kIdentityTol * std::max(1.0, jc)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "closed-form gauges (" << out.k_value << ", " << out.j_value << ") disagree with constructed bodies (" << kb
        << ", " << jc << ")";
    throw VerificationError(msg.str());
  }
  return out;
}

}  // namespace bmgeo

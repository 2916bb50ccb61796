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

#include "core/distance.hpp"

#include "core/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace bmgeo {

namespace {

constexpr double kInclusionTol = 1e-9;

Matrix second_moment_root(const Body& body) {
  const int n = body.dim();
  std::vector<Vector> pts(body.vertices().begin(), body.vertices().end());
  if (pts.empty()) {
    if (n == 2) {
      for (int k = 0; k < 256; ++k) {
        const Vector u = search::unit_direction(std::numbers::pi * k / 256);
        pts.push_back(u / gauge(body, u));
      }
    } else {
      std::mt19937_64 rng(0x3017ULL);
      std::normal_distribution<double> g;
      for (int k = 0; k < 512; ++k) {
        Vector u(n);
        for (int i = 0; i < n; ++i) u[i] = g(rng);
        u.normalize();
        pts.push_back(u / gauge(body, u));
      }
    }
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : pts) m += Eigen::VectorXd(p) * Eigen::VectorXd(p).transpose();
  m /= static_cast<double>(pts.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(1e-12).cwiseSqrt();
  return Matrix(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose());
}

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  return Matrix(q);
}

Matrix normalized(Matrix t) {
  const double det = t.determinant();
  if (!(std::fabs(det) > 0) || !std::isfinite(det)) return t;
  t /= std::pow(std::fabs(det), 1.0 / static_cast<double>(t.rows()));
  return t;
}

Matrix to_matrix(const Eigen::VectorXd& x, int n) {
  Matrix t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = x[i * n + j];
  return t;
}

Eigen::VectorXd to_params(const Matrix& t) {
  const auto n = t.rows();
  Eigen::VectorXd x(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) x[i * n + j] = t(i, j);
  return x;
}

// Boundary points of a gauge body, used as a stand-in vertex list while the
// optimizer runs. Empty for polytopal bodies, which are handled exactly.
std::vector<Vector> boundary_samples(const Body& body) {
  std::vector<Vector> pts;
  if (body.is_polytopal()) return pts;
  const int n = body.dim();
  if (n == 2) {
    constexpr int kCount = 512;
    for (int k = 0; k < kCount; ++k) {
      const Vector u = search::unit_direction(std::numbers::pi * k / kCount);
      pts.push_back(u / gauge(body, u));
    }
    return pts;
  }
  std::mt19937_64 rng(0xb0d1ULL);
  std::normal_distribution<double> g;
  for (int k = 0; k < 4096; ++k) {
    Vector u(n);
    for (int i = 0; i < n; ++i) u[i] = g(rng);
    u.normalize();
    pts.push_back(u / gauge(body, u));
  }
  return pts;
}

// Distortion with gauge bodies replaced by their boundary samples; cheap
// enough for the inner loop of the optimizer.
double sampled_distortion(const Body& a, const Body& b, std::span<const Vector> pa, std::span<const Vector> pb,
                          const Matrix& t) {
  const double det = t.determinant();
  if (!(std::fabs(det) >= 1e-12) || !std::isfinite(det)) return std::numeric_limits<double>::infinity();
  const Matrix inv = t.inverse();
  double s = 0;
  double r = 0;
  if (a.is_polytopal() || !b.is_polytopal()) {
    for (const auto& v : a.is_polytopal() ? a.vertices() : pa) s = std::max(s, gauge(b, Vector(t * v)));
  } else {
    for (const auto& w : b.duals()) s = std::max(s, support(a, Vector(t.transpose() * w)));
  }
  if (b.is_polytopal() || !a.is_polytopal()) {
    for (const auto& v : b.is_polytopal() ? b.vertices() : pb) r = std::max(r, gauge(a, Vector(inv * v)));
  } else {
    for (const auto& w : a.duals()) r = std::max(r, support(b, Vector(inv.transpose() * w)));
  }
  return s * r;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (starts < 1) throw InputError("optimizer needs at least one start");
  if (max_iters < 1) throw InputError("optimizer needs max_iters >= 1");
  if (!(tol > 0)) throw InputError("optimizer tolerance must be positive");
}

double fixed_position_distance(const Body& a, const Body& b) {
  require_same_dim(a, b);
  return enclosing_factor(b, a) * enclosing_factor(a, b);
}

PositionedPair PositionedPair::from_bodies(Body e, Body f) {
  require_same_dim(e, f);
  const double inner = enclosing_factor(f, e);
  const double outer = enclosing_factor(e, f);
  const double d = inner * outer;
  if (inner > 1 + kInclusionTol)
    throw InputError("pair is not positioned: ball_e is not contained in ball_f (factor " + std::to_string(inner) + ")");
  if (outer > d * (1 + kInclusionTol))
    throw InputError("pair is not positioned: ball_f does not touch ball_e from outside");
  return {std::move(e), std::move(f), std::max(d, 1.0), true};
}

PositionedPair PositionedPair::by_scaling(const Body& e, const Body& f) {
  require_same_dim(e, f);
  const double s = enclosing_factor(f, e);
  return from_bodies(e, scale(f, s));
}

Distortion distortion_under(const Body& a, const Body& b, const Matrix& t) {
  const double det = t.determinant();
  if (!(std::fabs(det) >= 1e-12) || !std::isfinite(det))
    return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const Matrix inv = t.inverse();
  double s = 0;
  double r = 0;
  // s = sup over T(a) of gauge_b.
  if (a.is_polytopal()) {
    for (const auto& v : a.vertices()) s = std::max(s, gauge(b, Vector(t * v)));
  } else if (b.is_polytopal() && has_exact_support(a)) {
    for (const auto& w : b.duals()) s = std::max(s, support(a, Vector(t.transpose() * w)));
  } else {
    s = enclosing_factor(b, linear_image(a, t));
  }
  // r = sup over b of gauge_{T(a)} = gauge_a o T^-1.
  if (b.is_polytopal()) {
    for (const auto& v : b.vertices()) r = std::max(r, gauge(a, Vector(inv * v)));
  } else if (a.is_polytopal() && has_exact_support(b)) {
    for (const auto& w : a.duals()) r = std::max(r, support(b, Vector(inv.transpose() * w)));
  } else {
    r = enclosing_factor(linear_image(a, t), b);
  }
  return {s, r};
}

DistanceReport bm_distance(const Body& a, const Body& b, const OptimizerConfig& cfg) {
  cfg.validate();
  require_same_dim(a, b);
  const int n = a.dim();
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix whitening = normalized(Matrix(second_moment_root(b) * second_moment_root(a).inverse()));

  const std::vector<Vector> pa = boundary_samples(a);
  const std::vector<Vector> pb = boundary_samples(b);
  const bool exact = pa.empty() && pb.empty();
  auto objective = [&](const Eigen::VectorXd& x) {
    const Matrix t = to_matrix(x, n);
    return exact ? distortion_under(a, b, t).value() : sampled_distortion(a, b, pa, pb, t);
  };
  auto normalize = [&](Eigen::VectorXd& x) { x = to_params(normalized(to_matrix(x, n))); };

  DistanceReport best;
  best.witness = identity;
  const Distortion at_identity = distortion_under(a, b, identity);
  best.estimate = at_identity.value();
  best.factor_in = at_identity.factor_in;
  best.factor_out = at_identity.factor_out;
  best.converged = false;
  double best_value = best.estimate;

  for (int k = 0; k < cfg.starts; ++k) {
    std::mt19937_64 rng(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(k));
    Matrix start = identity;
    if (k == 1) {
      start = whitening;
    } else if (k >= 2) {
      const Matrix rot = random_orthogonal(n, rng);
      if (k % 2 == 0) {
        start = whitening * rot;
      } else {
        std::normal_distribution<double> g(0.0, 0.35);
        Matrix diag = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) diag(i, i) = std::exp(g(rng));
        start = diag * rot;
      }
    }
    start = normalized(start);

    Eigen::VectorXd x = to_params(start);
    double step = 0.1;
    int budget = cfg.max_iters;
    search::SimplexResult res;
    double prev = std::numeric_limits<double>::infinity();
    // Restarting from the incumbent with a fresh, smaller simplex escapes the
    // kinks where a collapsed simplex stalls on a nonsmooth objective.
    while (budget > 0) {
      res = search::nelder_mead(objective, x, step, cfg.tol, budget, normalize);
      budget -= std::max(res.iterations, 1);
      x = res.x;
      if (!res.converged || !(res.value < prev - 1e-12)) break;
      prev = res.value;
      step *= 0.3;
      if (step < cfg.tol) break;
    }
    const Matrix w = to_matrix(res.x, n);
    const Distortion dist = distortion_under(a, b, w);
    if (dist.value() < best_value) {
      best_value = dist.value();
      best.witness = w;
      best.factor_in = dist.factor_in;
      best.factor_out = dist.factor_out;
      best.estimate = dist.value();
      best.converged = res.converged;
    } else if (k == 0) {
      best.converged = res.converged;
    }
  }
  best.starts_used = cfg.starts;
  return best;
}

PositionedPair canonical_position(const Body& a, const Body& b, const OptimizerConfig& cfg) {
  const DistanceReport report = bm_distance(a, b, cfg);
  const int n = a.dim();
  const double at_identity = fixed_position_distance(a, b);
  Matrix t = report.witness;
  double s = report.factor_in;
  // Keep the given position when the optimizer found no real improvement.
  if (report.estimate >= at_identity * (1 - 1e-12)) {
    t = Matrix::Identity(n, n);
    s = enclosing_factor(b, a);
  }
  Body mapped = t.isIdentity(0.0) ? scale(b, s) : linear_image(b, Matrix(s * t.inverse()));
  // Rounding in the image can leave a gap of order 1e-12; rescale to contact.
  const double contact = enclosing_factor(mapped, a);
  if (std::fabs(contact - 1.0) > 1e-12) mapped = scale(mapped, contact);
  PositionedPair pair = PositionedPair::from_bodies(a, mapped);
  pair.converged = report.converged;
  return pair;
}

double known_lp_distance(LpExponent r, LpExponent s, int n) {
  if (n < 1) throw InputError("dimension must be positive");
  auto inv = [](LpExponent p) { return p.infinite ? 0.0 : 1.0 / p.value; };
  for (auto p : {r, s})
    if (!p.infinite && !(p.value >= 1.0)) throw InputError("lp exponent must be >= 1");
  const double ir = inv(r);
  const double is = inv(s);
  const bool low = ir >= 0.5 && is >= 0.5;
  const bool high = ir <= 0.5 && is <= 0.5;
  if (!low && !high) throw InputError("exponents straddle 2; the distance is not given by the power formula");
  return std::pow(static_cast<double>(n), std::fabs(ir - is));
}

}  // namespace bmgeo

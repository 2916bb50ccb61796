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

#include "core/search.hpp"

#include <algorithm>
#include <numeric>

namespace bmgeo::search {

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& start,
                          double step, double tol, int max_iters,
                          const std::function<void(Eigen::VectorXd&)>& normalize) {
  const auto n = start.size();
  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), start);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  auto eval = [&](Eigen::VectorXd& p) {
    if (normalize) normalize(p);
    const double v = f(p);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)][i] += step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(pts.size());
  SimplexResult out;
  int it = 0;
  for (; it < max_iters; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    double diam = 0;
    for (const auto& p : pts) diam = std::max(diam, (p - pts[best]).norm());
    if (diam < tol) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
    const double fr = eval(refl);
    if (fr < vals[best]) {
      Eigen::VectorXd exp = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(exp);
      if (fe < fr) {
        pts[worst] = exp;
        vals[worst] = fe;
      } else {
        pts[worst] = refl;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = refl;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    Eigen::VectorXd con = outside ? Eigen::VectorXd(centroid + 0.5 * (refl - centroid))
                                  : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(con);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = con;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.x = pts[best];
  out.value = vals[best];
  out.iterations = it;
  return out;
}

DirectionalMax max_over_sphere(const std::function<double(const Vector&)>& ratio, int dim, int starts,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_dir = [&]() {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    return Eigen::VectorXd(v.normalized());
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    const double len = x.norm();
    if (!(len > 1e-300)) return std::numeric_limits<double>::infinity();
    return -ratio(Vector(x / len));
  };
  DirectionalMax best{-std::numeric_limits<double>::infinity(), Vector::Zero(dim)};
  // Coordinate axes and diagonals catch the usual maximizers of polytope-like
  // ratios before any local search.
  std::vector<Eigen::VectorXd> seeds;
  for (int i = 0; i < dim; ++i) seeds.push_back(Eigen::VectorXd::Unit(dim, i));
  seeds.push_back(Eigen::VectorXd::Ones(dim).normalized());
  for (int s = 0; s < starts; ++s) seeds.push_back(random_dir());
  for (const auto& s : seeds) {
    auto res = nelder_mead(objective, s, 0.05, 1e-11, 400);
    if (-res.value > best.value) best = {-res.value, Vector(res.x.normalized())};
  }
  return best;
}

double inf_convolution(const std::function<double(const Vector&)>& ga, const std::function<double(const Vector&)>& gb,
                       const Vector& x, const Vector& box_lo, const Vector& box_hi) {
  const auto dim = x.size();
  auto phi = [&](const Vector& u) { return ga(u) + gb(x - u); };
  if (dim == 2) {
    constexpr int kIters = 56;
    Vector u(2);
    auto inner = [&](double u0) {
      u[0] = u0;
      return golden_min(
                 [&](double u1) {
                   u[1] = u1;
                   return phi(u);
                 },
                 box_lo[1], box_hi[1], kIters)
          .second;
    };
    const double split = golden_min(inner, box_lo[0], box_hi[0], kIters).second;
    return std::min({split, ga(x), gb(x)});
  }
  double best = std::min(ga(x), gb(x));
  const Eigen::VectorXd xd = x;
  auto objective = [&](const Eigen::VectorXd& u) { return phi(Vector(u)); };
  for (const Eigen::VectorXd& seed : {Eigen::VectorXd(Eigen::VectorXd::Zero(dim)), Eigen::VectorXd(0.5 * xd), xd}) {
    Eigen::VectorXd start = seed;
    double step = 0.1 * std::max(xd.norm(), 1e-12);
    for (int restart = 0; restart < 4; ++restart) {
      auto res = nelder_mead(objective, start, step, 1e-12 * std::max(xd.norm(), 1e-300), 1500);
      best = std::min(best, res.value);
      start = res.x;
      step *= 0.25;
    }
  }
  return best;
}

}  // namespace bmgeo::search

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

#include "core/dim2.hpp"

#include "core/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bmgeo::dim2 {

namespace {

constexpr double kDedupTol = 1e-9;
constexpr double kDistinctTol = 1e-7;
constexpr double kMinMargin = 1e-6;
constexpr double kMinRatioGap = 1e-3;
constexpr int kBaseResolution = 8192;
constexpr int kMaxResolution = 65536;

long double edge_area(const GridPoint& a, const GridPoint& b) {
  const __int128 c = cross(GridPoint{0, 0}, a, b);
  return std::fabs(static_cast<long double>(c));
}

double cross2(const Vector& a, const Vector& b) { return a[0] * b[1] - a[1] * b[0]; }

void require_open_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("lambda must lie strictly between 0 and 1");
}

void require_non_isometric(const PositionedPair& pair) {
  if (!(pair.d > 1.0 + 1e-6))
    throw InputError("the pair is (numerically) isometric: d <= 1 + 1e-6 leaves no room between the extreme balls");
}

// Distance from y to the boundary of a polytopal body, through its facet planes.
double inner_distance(const Body& body, const Vector& y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : body.duals()) best = std::min(best, (1.0 - w.dot(y)) / w.norm());
  return best;
}

// Normalized linear form maximizing <u, p> / h_C(u); its value at p is gauge_C(p).
Vector separating_functional(const Body& c, const Vector& p) {
  if (c.is_polytopal()) {
    const auto duals = c.duals();
    auto it = std::max_element(duals.begin(), duals.end(),
                               [&](const Vector& a, const Vector& b) { return a.dot(p) < b.dot(p); });
    return *it;
  }
  auto ratio = [&](const Vector& u) { return std::fabs(u.dot(p)) / support(c, u); };
  search::DirectionalMax m =
      p.size() == 2 ? search::max_over_circle(ratio) : search::max_over_sphere(ratio, static_cast<int>(p.size()));
  Vector u = m.direction;
  if (u.dot(p) < 0) u = -u;
  return u / support(c, u);
}

struct Candidate {
  double value = 1.0;  // gauge_C at the boundary point
  Vector y;
};

Candidate scan_planar(const Body& e, const Body& f, const Body& c, double limit, int n) {
  const double step = 2.0 * std::numbers::pi / n;
  auto boundary = [&](double theta) {
    const Vector u = search::unit_direction(theta);
    return Vector(u / gauge(f, u));
  };
  std::vector<double> ge(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) ge[static_cast<std::size_t>(k)] = gauge(e, boundary(k * step));

  // Contact points: local minima of gauge_E along the sphere of F that refine to 1.
  std::vector<std::pair<double, double>> contacts;
  for (int k = 0; k < n; ++k) {
    const double cur = ge[static_cast<std::size_t>(k)];
    if (cur > ge[static_cast<std::size_t>((k + n - 1) % n)] || cur > ge[static_cast<std::size_t>((k + 1) % n)]) continue;
    auto [theta, val] = search::golden_min([&](double t) { return gauge(e, boundary(t)); }, (k - 1) * step,
                                           (k + 1) * step, 60);
    val = std::min(val, cur);
    if (val <= 1.0 + 1e-9) contacts.emplace_back(val, val < cur ? theta : k * step);
  }
  if (contacts.empty())
    throw ConstructionError("no contact point between the unit spheres; the pair is not in canonical position");
  std::sort(contacts.begin(), contacts.end());
  if (contacts.size() > 16) contacts.resize(16);

  Candidate best;
  for (const auto& contact : contacts) {
    for (int dir : {-1, 1}) {
      for (int j = 1; j <= n / 2; ++j) {
        const Vector y = boundary(contact.second + dir * j * step);
        if (gauge(e, y) >= limit) break;
        const double g = gauge(c, y);
        if (g > best.value) best = {g, y};
      }
    }
  }
  return best;
}

Candidate scan_spatial(const Body& e, const Body& f, const Body& c, double limit, int n) {
  Candidate best;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vector u = vec3(r * std::cos(golden * k), r * std::sin(golden * k), z);
    const Vector y = u / gauge(f, u);
    if (gauge(e, y) >= limit) continue;
    const double g = gauge(c, y);
    if (g > best.value) best = {g, y};
  }
  return best;
}

bool adjacent(const std::vector<GridPoint>& cycle, const GridPoint& a, const GridPoint& b, std::size_t* index) {
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if ((cycle[i] == a && cycle[j] == b) || (cycle[i] == b && cycle[j] == a)) {
      *index = i;
      return true;
    }
  }
  return false;
}

// The line through a and b misses C iff every vertex of C lies strictly on
// the origin's side.
bool line_misses(const GridPoint& a, const GridPoint& b, const Polygon2& c) {
  const int side = orientation(a, b, GridPoint{0, 0});
  if (side == 0) return false;
  for (const auto& v : c.grid_vertices())
    if (orientation(a, b, v) != side) return false;
  return true;
}

}  // namespace

std::vector<EdgeFace> faces_1d(const Polygon2& poly) {
  const auto& v = poly.vertices();
  std::vector<EdgeFace> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back({v[i], v[(i + 1) % v.size()], i});
  return out;
}

bool AreaRatioInvariant::contains(double r, double rel_tol) const {
  auto it = std::lower_bound(ratios.begin(), ratios.end(), r * (1.0 - rel_tol));
  return it != ratios.end() && *it <= r * (1.0 + rel_tol);
}

AreaRatioInvariant area_ratios(const Polygon2& poly) {
  const auto& g = poly.grid_vertices();
  const std::size_t n = g.size();
  std::vector<long double> areas(n);
  for (std::size_t i = 0; i < n; ++i) areas[i] = edge_area(g[i], g[(i + 1) % n]);
  std::vector<double> all;
  all.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) all.push_back(static_cast<double>(areas[i] / areas[j]));
  std::sort(all.begin(), all.end());
  AreaRatioInvariant out;
  out.triangles = n;
  for (double r : all)
    if (out.ratios.empty() || r > out.ratios.back() * (1.0 + kDedupTol)) out.ratios.push_back(r);
  return out;
}

bool invariant_distinct(const AreaRatioInvariant& a, const AreaRatioInvariant& b) {
  for (double r : a.ratios)
    if (!b.contains(r, kDistinctTol)) return true;
  for (double r : b.ratios)
    if (!a.contains(r, kDistinctTol)) return true;
  return false;
}

SeparationWitness separation_witness(const PositionedPair& pair, double lambda) {
  require_open_lambda(lambda);
  require_non_isometric(pair);
  const int dim = pair.dim();
  if (dim != 2 && dim != 3) throw InputError("separation witnesses are computed in dimension 2 or 3");
  const Body b = b_lambda(pair, lambda);
  const Body c = c_lambda(pair, lambda);
  const double limit = std::pow(pair.d, lambda);

  double best_margin = 0;
  int n = kBaseResolution;
  for (; n <= kMaxResolution; n *= 2) {
    const Candidate cand = dim == 2 ? scan_planar(pair.ball_e, pair.ball_f, c, limit, n)
                                    : scan_spatial(pair.ball_e, pair.ball_f, c, limit, n);
    if (!(cand.value > 1.0)) continue;
    const double eta = (cand.value - 1.0) / (cand.value + 1.0);
    SeparationWitness w;
    w.point = (1.0 - eta) * cand.y;
    w.margin_in = 1.0 - gauge(b, w.point);
    w.margin_out = gauge(c, w.point) - 1.0;
    w.functional = separating_functional(c, w.point);
    w.resolution = n;
    const double lift = w.functional.dot(w.point) - 1.0;
    const double margin = std::min({w.margin_in, w.margin_out, lift});
    best_margin = std::max(best_margin, margin);
    if (margin >= kMinMargin) return w;
  }
  std::ostringstream msg;
  msg << "no separation witness with margins >= " << kMinMargin << " at resolutions up to " << kMaxResolution
      << " boundary samples (best margin " << best_margin
      << "); the pair may be nearly isometric or lambda too close to 0 or 1";
  throw ConstructionError(msg.str());
}

Family bq_family(const PositionedPair& pair, double lambda, int count) {
  require_open_lambda(lambda);
  if (pair.dim() != 2) throw InputError("bq_family works in dimension 2");
  if (!pair.ball_e.polygon() || !pair.ball_f.polygon())
    throw InputError("bq_family needs polygon balls; polygonize gauge bodies first");
  if (count < 1) throw InputError("count must be >= 1");
  if (count > 1000) throw InputError("count above 1000 is not supported");

  const Body b = b_lambda(pair, lambda);
  const Body c = c_lambda(pair, lambda);
  const Polygon2& cpoly = *c.polygon();
  Family fam;
  fam.lambda = lambda;
  fam.witness = separation_witness(pair, lambda);
  fam.c_invariant = area_ratios(cpoly);
  fam.b_invariant = area_ratios(*b.polygon());

  const Vector& x = fam.witness.point;
  const Vector& f = fam.witness.functional;
  const Vector nrm = f / f.norm();
  const Vector tan = vec2(-nrm[1], nrm[0]);
  const double dist_c = (f.dot(x) - 1.0) / f.norm();

  double eps = dist_c / 8.0;
  for (int i = 0; inner_distance(b, x) <= eps * 1.001; ++i) {
    if (i > 60) throw ConstructionError("cannot fit a ball around the witness inside B_lambda");
    eps /= 2.0;
  }
  fam.eps = eps;
  const GridPoint p1 = Polygon2::snap(x[0] - eps * tan[0], x[1] - eps * tan[1]);
  const GridPoint p2 = Polygon2::snap(x[0] + eps * tan[0], x[1] + eps * tan[1]);
  fam.p1 = Polygon2::to_vector(p1);
  fam.p2 = Polygon2::to_vector(p2);

  constexpr double kPhases[] = {0.5, 0.25, 0.75, 0.1, 0.9};
  double delta = eps / 2.0;
  std::string last_failure = "no attempt";
  for (int attempt = 0; attempt < 12; ++attempt, delta /= 2.0) {
    const double s = delta / 2.0;
    const double tau_max = 0.98 * std::sqrt(delta * delta - s * s);
    auto q_at = [&](double tau) { return Vector(x + s * nrm + tau * tan); };
    auto ratio_at = [&](double tau) {
      const Vector q = q_at(tau);
      return std::fabs(cross2(fam.p1, q)) / std::fabs(cross2(q, fam.p2));
    };
    const double r_lo = ratio_at(-tau_max);
    const double r_hi = ratio_at(tau_max);
    const double range = std::fabs(r_hi - r_lo);
    if (range / count < kMinRatioGap) {
      std::ostringstream msg;
      msg << "cannot place " << count << " parameters with ratio gaps >= " << kMinRatioGap << " (ratio range " << range
          << "); try a smaller count or a different lambda";
      throw ConstructionError(msg.str());
    }
    const bool increasing = r_hi > r_lo;
    auto invert = [&](double target) {
      double lo = -tau_max, hi = tau_max;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((ratio_at(mid) < target) == increasing ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    };

    bool shrink = false;
    for (double phase : kPhases) {
      std::vector<FamilyMember> members;
      for (int j = 0; j < count && !shrink; ++j) {
        const double target = std::min(r_lo, r_hi) + (j + phase) / count * range;
        const Vector qv = q_at(invert(target));
        const GridPoint q = Polygon2::snap(qv[0], qv[1]);
        const Vector qs = Polygon2::to_vector(q);
        const Polygon2& bpoly = *b.polygon();
        if (bpoly.gauge(qs) >= 1.0 || bpoly.gauge(fam.p1) >= 1.0 || bpoly.gauge(fam.p2) >= 1.0) {
          shrink = true;
          last_failure = "new vertices leave B_lambda";
          break;
        }
        const bool crit1 = line_misses(p1, q, cpoly);
        const bool crit2 = line_misses(q, p2, cpoly);
        std::vector<GridPoint> pts = cpoly.grid_vertices();
        pts.insert(pts.end(), {p1, p2, q});
        Polygon2 bq = Polygon2::from_grid(std::move(pts));
        std::size_t e1 = 0, e2 = 0;
        const bool edge1 = adjacent(bq.grid_vertices(), p1, q, &e1);
        const bool edge2 = adjacent(bq.grid_vertices(), q, p2, &e2);
        if (crit1 != edge1 || crit2 != edge2)
          throw VerificationError("face-line criterion disagrees with the hull edges of B_q");
        if (!crit1 || !crit2) {
          shrink = true;
          last_failure = "a line through the new faces meets C_lambda";
          break;
        }
        FamilyMember m{Body(bq), qs, 0.0, {}, {}, {}};
        m.ratio = static_cast<double>(edge_area(p1, q) / edge_area(q, p2));
        const auto faces = faces_1d(bq);
        m.new_faces = {faces[e1], faces[e2]};
        m.sandwich = sandwich_check(m.body, pair, lambda, c, b);
        if (!m.sandwich.ok()) throw VerificationError("B_q is not sandwiched between C_lambda and B_lambda");
        m.invariant = area_ratios(bq);
        members.push_back(std::move(m));
      }
      if (shrink) break;

      std::vector<double> ratios;
      for (const auto& m : members) ratios.push_back(m.ratio);
      std::sort(ratios.begin(), ratios.end());
      bool ok = true;
      for (std::size_t i = 1; i < ratios.size(); ++i) ok = ok && ratios[i] - ratios[i - 1] >= kMinRatioGap;
      if (!ok) {
        last_failure = "snapped ratios closer than the minimum gap";
        continue;
      }
      for (std::size_t i = 0; i < members.size() && ok; ++i) {
        ok = invariant_distinct(members[i].invariant, fam.c_invariant) &&
             invariant_distinct(members[i].invariant, fam.b_invariant);
        for (std::size_t j = 0; j < i && ok; ++j) ok = invariant_distinct(members[i].invariant, members[j].invariant);
      }
      if (!ok) {
        last_failure = "area-ratio invariants not pairwise distinct";
        continue;
      }
      fam.delta = delta;
      fam.members = std::move(members);
      return fam;
    }
  }
  throw ConstructionError("could not construct the B_q family: " + last_failure);
}

FacePlacement face_placement(const PositionedPair& pair, double lambda) {
  if (pair.dim() != 3) throw InputError("face attachment works in dimension 3");
  const Body b = b_lambda(pair, lambda);
  if (!b.is_polytopal()) throw InputError("face attachment needs polytope balls");
  FacePlacement pl;
  pl.witness = separation_witness(pair, lambda);
  pl.centre = pl.witness.point;
  pl.functional = pl.witness.functional;
  const double dist_c = (pl.functional.dot(pl.centre) - 1.0) / pl.functional.norm();
  double r = dist_c / 8.0;
  for (int i = 0; inner_distance(b, pl.centre) <= r * 1.001; ++i) {
    if (i > 60) throw ConstructionError("cannot fit a disc around the witness inside B_lambda");
    r /= 2.0;
  }
  pl.radius = r;
  const Eigen::Vector3d n = Eigen::Vector3d(pl.functional[0], pl.functional[1], pl.functional[2]).normalized();
  Eigen::Index axis = 0;
  n.cwiseAbs().minCoeff(&axis);
  Eigen::Vector3d a = Eigen::Vector3d::Unit(axis);
  const Eigen::Vector3d e1 = (a - a.dot(n) * n).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  pl.e1 = vec3(e1[0], e1[1], e1[2]);
  pl.e2 = vec3(e2[0], e2[1], e2[2]);
  return pl;
}

std::vector<Vector> place_face(const FacePlacement& placement, std::span<const Vector> shape) {
  if (shape.size() < 3) throw InputError("an attachment face needs at least 3 vertices");
  double extent = 0;
  for (const auto& p : shape) {
    if (p.size() != 2) throw InputError("face shapes are given by planar coordinates");
    extent = std::max(extent, p.norm());
  }
  if (!(extent > 0)) throw InputError("degenerate attachment face");
  const double k = 0.9 * placement.radius / extent;
  std::vector<Vector> out;
  for (const auto& p : shape) out.push_back(placement.centre + k * (p[0] * placement.e1 + p[1] * placement.e2));
  return out;
}

std::vector<int> facet_census(const Polytope3& poly) {
  std::vector<int> out;
  for (const auto& f : poly.facets()) out.push_back(static_cast<int>(f.vertices.size()));
  std::sort(out.begin(), out.end());
  return out;
}

Attachment attach_face_3d(const PositionedPair& pair, double lambda, std::span<const Vector> face) {
  require_open_lambda(lambda);
  if (pair.dim() != 3) throw InputError("face attachment works in dimension 3");
  if (face.size() < 3) throw InputError("an attachment face needs at least 3 vertices");
  std::vector<Eigen::Vector3d> k;
  for (const auto& p : face) {
    if (p.size() != 3) throw InputError("attachment face vertices must be 3D points");
    k.emplace_back(p[0], p[1], p[2]);
  }
  const Body b = b_lambda(pair, lambda);
  const Body c = c_lambda(pair, lambda);
  if (!c.is_polytopal()) throw InputError("face attachment needs polytope balls");

  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  double scale = 0;
  for (const auto& p : k) {
    centroid += p;
    scale = std::max(scale, p.norm());
  }
  centroid /= static_cast<double>(k.size());
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
  double spread = 0;
  for (std::size_t i = 1; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      const Eigen::Vector3d cr = (k[i] - k[0]).cross(k[j] - k[0]);
      if (cr.norm() > spread) {
        spread = cr.norm();
        normal = cr;
      }
    }
  }
  double size = 0;
  for (const auto& p : k) size = std::max(size, (p - centroid).norm());
  if (!(spread > 1e-12 * size * size) || !(size > 0))
    throw InputError("attachment face is degenerate (its vertices are collinear)");
  normal.normalize();
  for (const auto& p : k)
    if (std::fabs(normal.dot(p - centroid)) > 1e-9 * std::max(1.0, scale))
      throw InputError("attachment face vertices are not coplanar");
  if (normal.dot(centroid) < 0) normal = -normal;
  const double height = normal.dot(centroid);
  for (const auto& v : c.vertices()) {
    if (normal.dot(Eigen::Vector3d(v[0], v[1], v[2])) >= height - 1e-9 * std::max(1.0, height))
      throw InputError("attachment face is not strictly separated from C_lambda by its plane");
  }
  for (const auto& p : face)
    if (gauge(b, p) >= 1.0) throw InputError("attachment face leaves B_lambda");

  std::vector<Vector> pts(c.vertices().begin(), c.vertices().end());
  pts.insert(pts.end(), face.begin(), face.end());
  Polytope3 hull = Polytope3::from_points(pts);
  hull.validate();

  Attachment out{Body(hull), 0, {}, {}, {}};
  const Polytope3& poly = *out.body.polytope();
  const double match_tol = 1e-9 * std::max(1.0, scale);
  bool found = false;
  for (std::size_t i = 0; i < poly.facets().size() && !found; ++i) {
    const Facet& fct = poly.facets()[i];
    if (fct.normal.dot(normal) < 1.0 - 1e-9 || fct.vertices.size() != k.size()) continue;
    bool all = true;
    for (int vi : fct.vertices) {
      const Vector& v = poly.vertices()[static_cast<std::size_t>(vi)];
      const Eigen::Vector3d pv(v[0], v[1], v[2]);
      all = all && std::any_of(k.begin(), k.end(), [&](const Eigen::Vector3d& q) { return (q - pv).norm() <= match_tol; });
    }
    if (!all) continue;
    found = true;
    out.facet_index = i;
    for (int vi : fct.vertices) out.facet_vertices.push_back(poly.vertices()[static_cast<std::size_t>(vi)]);
  }
  if (!found)
    throw VerificationError("attachment face does not appear as a facet of the hull (vertices not in convex position?)");
  out.sandwich = sandwich_check(out.body, pair, lambda, c, b);
  if (!out.sandwich.ok()) throw VerificationError("attached body is not sandwiched between C_lambda and B_lambda");
  out.census = facet_census(poly);
  return out;
}

}  // namespace bmgeo::dim2

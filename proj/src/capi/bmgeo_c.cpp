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

#include "bmgeo/bmgeo.h"

#include "core/io.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

struct bmg_body {
  bmgeo::Body body;
};

struct bmg_pair {
  bmgeo::PositionedPair pair;
};

namespace {

using bmgeo::io::Json;

thread_local std::string g_last_error;

bmg_status fail(bmg_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs fn, mapping the library's exception types onto status codes.
template <class F>
bmg_status guarded(F&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const bmgeo::InputError& e) {
    return fail(BMG_ERR_INPUT, e.what());
  } catch (const bmgeo::VerificationError& e) {
    return fail(BMG_ERR_VERIFY, e.what());
  } catch (const bmgeo::ConstructionError& e) {
    return fail(BMG_ERR_VERIFY, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BMG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BMG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BMG_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw bmgeo::InputError(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const Json& j) {
  if (out != nullptr) *out = dup(j.dump(1) + "\n");
}

bmgeo::OptimizerConfig config(const bmg_optimizer_config* cfg) {
  bmgeo::OptimizerConfig c;
  if (cfg != nullptr) {
    c.starts = cfg->starts;
    c.max_iters = cfg->max_iters;
    c.tol = cfg->tol;
    c.seed = cfg->seed;
  }
  c.validate();
  return c;
}

bmgeo::Vector vector_of(const double* x, size_t n) {
  require(x, "vector");
  if (n < 1 || n > static_cast<size_t>(bmgeo::kMaxDim)) throw bmgeo::InputError("vector length out of range");
  bmgeo::Vector v(static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  return v;
}

bmg_status give(bmgeo::Body body, bmg_body** out) {
  require(out, "output");
  *out = new bmg_body{std::move(body)};
  return BMG_OK;
}

bmg_status give(bmgeo::PositionedPair pair, bmg_pair** out) {
  require(out, "output");
  const bool converged = pair.converged;
  *out = new bmg_pair{std::move(pair)};
  return converged ? BMG_OK : fail(BMG_ERR_CONVERGENCE, "optimizer did not converge");
}

void key_json(const char* text, Json* out) {
  require(text, "json text");
  *out = bmgeo::io::parse_json(text);
}

std::filesystem::path prepare_dir(const char* dir) {
  require(dir, "output directory");
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw bmgeo::InputError("cannot create output directory " + p.string());
  return p;
}

}  // namespace

extern "C" {

const char* bmg_version(void) { return "0.1.0"; }

const char* bmg_last_error(void) { return g_last_error.c_str(); }

void bmg_string_free(char* s) { std::free(s); }

void bmg_optimizer_config_default(bmg_optimizer_config* cfg) {
  if (cfg == nullptr) return;
  const bmgeo::OptimizerConfig d;
  cfg->starts = d.starts;
  cfg->max_iters = d.max_iters;
  cfg->tol = d.tol;
  cfg->seed = d.seed;
}

bmg_status bmg_body_from_json(const char* json, bmg_body** out) {
  return guarded([&] {
    Json j;
    key_json(json, &j);
    return give(bmgeo::io::body_from_json(j), out);
  });
}

bmg_status bmg_body_load(const char* path, bmg_body** out) {
  return guarded([&] {
    require(path, "path");
    return give(bmgeo::io::load_body(path), out);
  });
}

bmg_status bmg_body_to_json(const bmg_body* body, char** out) {
  return guarded([&] {
    require(body, "body");
    require(out, "output");
    emit(out, bmgeo::io::body_to_json(body->body));
    return BMG_OK;
  });
}

void bmg_body_free(bmg_body* body) { delete body; }

int bmg_body_dim(const bmg_body* body) { return body == nullptr ? 0 : body->body.dim(); }

bmg_status bmg_lp_ball(double p, int dim, bmg_body** out) {
  return guarded([&] {
    const auto e = std::isinf(p) ? bmgeo::LpExponent::inf() : bmgeo::LpExponent::of(p);
    return give(bmgeo::lp_ball(e, dim), out);
  });
}

bmg_status bmg_body_gauge(const bmg_body* body, const double* x, size_t n, double* out) {
  return guarded([&] {
    require(body, "body");
    require(out, "output");
    *out = bmgeo::gauge(body->body, vector_of(x, n));
    return BMG_OK;
  });
}

bmg_status bmg_body_support(const bmg_body* body, const double* u, size_t n, double* out) {
  return guarded([&] {
    require(body, "body");
    require(out, "output");
    *out = bmgeo::support(body->body, vector_of(u, n));
    return BMG_OK;
  });
}

bmg_status bmg_enclosing_factor(const bmg_body* inner, const bmg_body* outer, double* out) {
  return guarded([&] {
    require(inner, "inner body");
    require(outer, "outer body");
    require(out, "output");
    *out = bmgeo::enclosing_factor(inner->body, outer->body);
    return BMG_OK;
  });
}

bmg_status bmg_body_intersect(const bmg_body* a, const bmg_body* b, bmg_body** out) {
  return guarded([&] {
    require(a, "body");
    require(b, "body");
    return give(bmgeo::intersect(a->body, b->body), out);
  });
}

bmg_status bmg_body_hull(const bmg_body* a, const bmg_body* b, bmg_body** out) {
  return guarded([&] {
    require(a, "body");
    require(b, "body");
    return give(bmgeo::hull_union(a->body, b->body), out);
  });
}

bmg_status bmg_body_scale(const bmg_body* body, double t, bmg_body** out) {
  return guarded([&] {
    require(body, "body");
    return give(bmgeo::scale(body->body, t), out);
  });
}

bmg_status bmg_body_linear_image(const bmg_body* body, const double* matrix, size_t n, bmg_body** out) {
  return guarded([&] {
    require(body, "body");
    require(matrix, "matrix");
    if (n < 1 || n > static_cast<size_t>(bmgeo::kMaxDim)) throw bmgeo::InputError("matrix size out of range");
    const auto k = static_cast<Eigen::Index>(n);
    bmgeo::Matrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) m(i, j) = matrix[static_cast<size_t>(i * k + j)];
    return give(bmgeo::linear_image(body->body, m), out);
  });
}

bmg_status bmg_body_map_json(const bmg_body* body, const char* matrix_json, bmg_body** out) {
  return guarded([&] {
    require(body, "body");
    Json j;
    key_json(matrix_json, &j);
    return give(bmgeo::linear_image(body->body, bmgeo::io::matrix_from_json(j)), out);
  });
}

bmg_status bmg_body_polygonize(const bmg_body* body, int vertices, bmg_body** out) {
  return guarded([&] {
    require(body, "body");
    return give(bmgeo::polygonize(body->body, vertices), out);
  });
}

bmg_status bmg_fixed_position_distance(const bmg_body* a, const bmg_body* b, double* out) {
  return guarded([&] {
    require(a, "body");
    require(b, "body");
    require(out, "output");
    *out = bmgeo::fixed_position_distance(a->body, b->body);
    return BMG_OK;
  });
}

bmg_status bmg_fixed_position_report(const bmg_body* a, const bmg_body* b, char** report) {
  return guarded([&] {
    require(a, "body");
    require(b, "body");
    require(report, "output");
    const int n = a->body.dim();
    const bmgeo::Distortion dist = bmgeo::distortion_under(a->body, b->body, bmgeo::Matrix::Identity(n, n));
    bmgeo::DistanceReport r;
    r.estimate = dist.value();
    r.witness = bmgeo::Matrix::Identity(n, n);
    r.factor_in = dist.factor_in;
    r.factor_out = dist.factor_out;
    r.starts_used = 0;
    r.converged = true;
    emit(report, bmgeo::io::report_to_json(r));
    return BMG_OK;
  });
}

bmg_status bmg_bm_distance(const bmg_body* a, const bmg_body* b, const bmg_optimizer_config* cfg, char** report) {
  return guarded([&] {
    require(a, "body");
    require(b, "body");
    require(report, "output");
    const bmgeo::DistanceReport r = bmgeo::bm_distance(a->body, b->body, config(cfg));
    emit(report, bmgeo::io::report_to_json(r));
    return r.converged ? BMG_OK : fail(BMG_ERR_CONVERGENCE, "optimizer did not converge within the iteration budget");
  });
}

bmg_status bmg_canonical_position(const bmg_body* a, const bmg_body* b, const bmg_optimizer_config* cfg,
                                  bmg_pair** out) {
  return guarded([&] {
    require(a, "body");
    require(b, "body");
    return give(bmgeo::canonical_position(a->body, b->body, config(cfg)), out);
  });
}

bmg_status bmg_pair_from_bodies(const bmg_body* e, const bmg_body* f, bmg_pair** out) {
  return guarded([&] {
    require(e, "body");
    require(f, "body");
    return give(bmgeo::PositionedPair::from_bodies(e->body, f->body), out);
  });
}

bmg_status bmg_pair_by_scaling(const bmg_body* e, const bmg_body* f, bmg_pair** out) {
  return guarded([&] {
    require(e, "body");
    require(f, "body");
    return give(bmgeo::PositionedPair::by_scaling(e->body, f->body), out);
  });
}

void bmg_pair_free(bmg_pair* pair) { delete pair; }

double bmg_pair_d(const bmg_pair* pair) { return pair == nullptr ? 0.0 : pair->pair.d; }

bmg_status bmg_pair_ball_e(const bmg_pair* pair, bmg_body** out) {
  return guarded([&] {
    require(pair, "pair");
    return give(pair->pair.ball_e, out);
  });
}

bmg_status bmg_pair_ball_f(const bmg_pair* pair, bmg_body** out) {
  return guarded([&] {
    require(pair, "pair");
    return give(pair->pair.ball_f, out);
  });
}

bmg_status bmg_pair_polygonize(const bmg_pair* pair, int vertices, bmg_pair** out) {
  return guarded([&] {
    require(pair, "pair");
    if (pair->pair.dim() != 2) throw bmgeo::InputError("only planar pairs can be polygonized");
    const bmgeo::Body e = bmgeo::polygonize(pair->pair.ball_e, vertices);
    const bmgeo::Body f = bmgeo::polygonize(pair->pair.ball_f, vertices);
    return give(bmgeo::PositionedPair::by_scaling(e, f), out);
  });
}

bmg_status bmg_b_lambda(const bmg_pair* pair, double lambda, bmg_body** out) {
  return guarded([&] {
    require(pair, "pair");
    return give(bmgeo::b_lambda(pair->pair, lambda), out);
  });
}

bmg_status bmg_c_lambda(const bmg_pair* pair, double lambda, bmg_body** out) {
  return guarded([&] {
    require(pair, "pair");
    return give(bmgeo::c_lambda(pair->pair, lambda), out);
  });
}

bmg_status bmg_path_length(const bmg_pair* pair, const char* kind, int refinement, double* out) {
  return guarded([&] {
    require(pair, "pair");
    require(kind, "kind");
    require(out, "output");
    const double grid[] = {0.0, 1.0};
    const auto path = bmgeo::GeodesicPath::build(pair->pair, bmgeo::path_kind_from_string(kind), grid);
    *out = bmgeo::path_length(path, refinement);
    return BMG_OK;
  });
}

bmg_status bmg_geodesic_export(const bmg_pair* pair, const char* kind, const double* grid, size_t n, const char* dir,
                               char** manifest) {
  return guarded([&] {
    require(pair, "pair");
    require(kind, "kind");
    require(grid, "grid");
    const std::filesystem::path out_dir = prepare_dir(dir);
    const auto path = bmgeo::GeodesicPath::build(pair->pair, bmgeo::path_kind_from_string(kind),
                                                 std::span<const double>(grid, n));
    const bmgeo::PartitionCheck check = bmgeo::evaluate_product_law(path, std::span<const double>(grid, n));
    const Json m = bmgeo::io::export_path(path, out_dir);
    emit(manifest, m);
    if (!check.ok) return fail(BMG_ERR_VERIFY, "product law violated on the exported grid: " + check.describe());
    return pair->pair.converged ? BMG_OK : fail(BMG_ERR_CONVERGENCE, "positioning optimizer did not converge");
  });
}

bmg_status bmg_verify_manifest(const char* manifest_path, int partitions, uint64_t seed, char** report) {
  return guarded([&] {
    require(manifest_path, "manifest path");
    const auto path = bmgeo::io::load_manifest(manifest_path);
    const bmgeo::io::VerifyReport r = bmgeo::io::verify_path(path, partitions, seed);
    emit(report, r.to_json());
    if (r.ok) return BMG_OK;
    return fail(BMG_ERR_VERIFY, "product law violated: " + r.failures.front().describe());
  });
}

bmg_status bmg_invariant_json(const bmg_body* polygon, char** out) {
  return guarded([&] {
    require(polygon, "body");
    require(out, "output");
    const bmgeo::Polygon2* p = polygon->body.polygon();
    if (p == nullptr) throw bmgeo::InputError("area-ratio invariants need a polygon body");
    emit(out, bmgeo::io::invariant_to_json(*p));
    return BMG_OK;
  });
}

bmg_status bmg_separation_witness(const bmg_pair* pair, double lambda, char** out) {
  return guarded([&] {
    require(pair, "pair");
    require(out, "output");
    const auto w = bmgeo::dim2::separation_witness(pair->pair, lambda);
    Json point = Json::array();
    Json functional = Json::array();
    for (Eigen::Index i = 0; i < w.point.size(); ++i) {
      point.push_back(w.point[i]);
      functional.push_back(w.functional[i]);
    }
    emit(out, Json{{"point", point},
                   {"functional", functional},
                   {"margin_in", w.margin_in},
                   {"margin_out", w.margin_out},
                   {"resolution", w.resolution}});
    return BMG_OK;
  });
}

bmg_status bmg_family_export(const bmg_pair* pair, double lambda, int count, const char* dir, char** out) {
  return guarded([&] {
    require(pair, "pair");
    const std::filesystem::path out_dir = prepare_dir(dir);
    const auto fam = bmgeo::dim2::bq_family(pair->pair, lambda, count);
    const Json j = bmgeo::io::family_to_json(fam);
    bmgeo::io::write_atomic(out_dir / "family.json", j.dump(1) + "\n");
    emit(out, j);
    for (const auto& m : fam.members)
      if (!m.sandwich.ok()) return fail(BMG_ERR_VERIFY, "a family member failed its sandwich certificate");
    return BMG_OK;
  });
}

bmg_status bmg_attach_faces_export(const bmg_pair* pair, double lambda, const char* faces_json, const char* dir,
                                   char** out) {
  return guarded([&] {
    require(pair, "pair");
    Json doc;
    key_json(faces_json, &doc);
    const std::filesystem::path out_dir = prepare_dir(dir);
    const auto faces = bmgeo::io::faces_from_json(doc, pair->pair, lambda);
    std::vector<bmgeo::dim2::Attachment> list;
    for (const auto& f : faces) list.push_back(bmgeo::dim2::attach_face_3d(pair->pair, lambda, f));
    const Json j = bmgeo::io::attachments_to_json(list, lambda);
    bmgeo::io::write_atomic(out_dir / "family.json", j.dump(1) + "\n");
    emit(out, j);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t k = 0; k < i; ++k)
        if (list[i].census == list[k].census)
          return fail(BMG_ERR_VERIFY, "attachments " + std::to_string(k) + " and " + std::to_string(i) +
                                          " have the same facet census; non-isometry is not certified");
    return BMG_OK;
  });
}

}  // extern "C"

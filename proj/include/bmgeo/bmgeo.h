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

/* C interface to the bmgeo library: convex bodies, Banach-Mazur distances,
 * interpolating geodesics and the planar / spatial family constructions.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns a bmg_status; on failure bmg_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are owned by the caller and released with
 * bmg_string_free. */

#ifndef BMGEO_BMGEO_H_
#define BMGEO_BMGEO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BMGEO_BUILDING_LIBRARY)
#    define BMG_API __declspec(dllexport)
#  else
#    define BMG_API __declspec(dllimport)
#  endif
#else
#  define BMG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bmg_status {
  BMG_OK = 0,
  BMG_ERR_INTERNAL = 1,
  BMG_ERR_INPUT = 2,       /* malformed or out-of-contract input */
  BMG_ERR_VERIFY = 3,      /* a checked identity or certificate failed */
  BMG_ERR_CONVERGENCE = 4  /* optimizer did not converge; outputs still set */
} bmg_status;

typedef struct bmg_body bmg_body;
typedef struct bmg_pair bmg_pair;

typedef struct bmg_optimizer_config {
  int starts;
  int max_iters;
  double tol;
  uint64_t seed;
} bmg_optimizer_config;

BMG_API const char* bmg_version(void);
BMG_API const char* bmg_last_error(void);
BMG_API void bmg_string_free(char* s);
BMG_API void bmg_optimizer_config_default(bmg_optimizer_config* cfg);

/* Bodies. */
BMG_API bmg_status bmg_body_from_json(const char* json, bmg_body** out);
BMG_API bmg_status bmg_body_load(const char* path, bmg_body** out);
BMG_API bmg_status bmg_body_to_json(const bmg_body* body, char** out);
BMG_API void bmg_body_free(bmg_body* body);
BMG_API int bmg_body_dim(const bmg_body* body);
/* Unit ball of the lp norm; pass INFINITY for p = inf. */
BMG_API bmg_status bmg_lp_ball(double p, int dim, bmg_body** out);
BMG_API bmg_status bmg_body_gauge(const bmg_body* body, const double* x, size_t n, double* out);
BMG_API bmg_status bmg_body_support(const bmg_body* body, const double* u, size_t n, double* out);
/* Smallest L with outer inside L * inner. */
BMG_API bmg_status bmg_enclosing_factor(const bmg_body* inner, const bmg_body* outer, double* out);
BMG_API bmg_status bmg_body_intersect(const bmg_body* a, const bmg_body* b, bmg_body** out);
BMG_API bmg_status bmg_body_hull(const bmg_body* a, const bmg_body* b, bmg_body** out);
BMG_API bmg_status bmg_body_scale(const bmg_body* body, double t, bmg_body** out);
/* matrix is n x n, row major. */
BMG_API bmg_status bmg_body_linear_image(const bmg_body* body, const double* matrix, size_t n, bmg_body** out);
/* matrix_json: [[...], ...] or {"matrix": [[...], ...]}. */
BMG_API bmg_status bmg_body_map_json(const bmg_body* body, const char* matrix_json, bmg_body** out);
BMG_API bmg_status bmg_body_polygonize(const bmg_body* body, int vertices, bmg_body** out);

/* Distances. Reports are DistanceReport JSON objects. */
BMG_API bmg_status bmg_fixed_position_distance(const bmg_body* a, const bmg_body* b, double* out);
BMG_API bmg_status bmg_fixed_position_report(const bmg_body* a, const bmg_body* b, char** report);
BMG_API bmg_status bmg_bm_distance(const bmg_body* a, const bmg_body* b, const bmg_optimizer_config* cfg,
                                   char** report);

/* Positioned pairs: ball_e inside ball_f inside d * ball_e. */
BMG_API bmg_status bmg_canonical_position(const bmg_body* a, const bmg_body* b, const bmg_optimizer_config* cfg,
                                          bmg_pair** out);
BMG_API bmg_status bmg_pair_from_bodies(const bmg_body* e, const bmg_body* f, bmg_pair** out);
BMG_API bmg_status bmg_pair_by_scaling(const bmg_body* e, const bmg_body* f, bmg_pair** out);
BMG_API void bmg_pair_free(bmg_pair* pair);
BMG_API double bmg_pair_d(const bmg_pair* pair);
BMG_API bmg_status bmg_pair_ball_e(const bmg_pair* pair, bmg_body** out);
BMG_API bmg_status bmg_pair_ball_f(const bmg_pair* pair, bmg_body** out);
/* Replaces both balls of a planar pair by regular polygons and re-positions. */
BMG_API bmg_status bmg_pair_polygonize(const bmg_pair* pair, int vertices, bmg_pair** out);

/* Geodesics. kind is "intersection" or "hull". */
BMG_API bmg_status bmg_b_lambda(const bmg_pair* pair, double lambda, bmg_body** out);
BMG_API bmg_status bmg_c_lambda(const bmg_pair* pair, double lambda, bmg_body** out);
BMG_API bmg_status bmg_path_length(const bmg_pair* pair, const char* kind, int refinement, double* out);
/* Builds the path on the grid, checks the product law on it and writes body
 * files, SVGs and manifest.json into dir. */
BMG_API bmg_status bmg_geodesic_export(const bmg_pair* pair, const char* kind, const double* grid, size_t n,
                                       const char* dir, char** manifest);
/* Product law on the stored grid and on random sub-grids; BMG_ERR_VERIFY
 * with the report filled when a partition fails. */
BMG_API bmg_status bmg_verify_manifest(const char* manifest_path, int partitions, uint64_t seed, char** report);

/* Planar invariants and families. */
BMG_API bmg_status bmg_invariant_json(const bmg_body* polygon, char** out);
BMG_API bmg_status bmg_separation_witness(const bmg_pair* pair, double lambda, char** out);
BMG_API bmg_status bmg_family_export(const bmg_pair* pair, double lambda, int count, const char* dir, char** out);
/* faces_json: a face {"vertices": [[x,y,z],...]} or {"shape": [[a,b],...]},
 * or an array of them. */
BMG_API bmg_status bmg_attach_faces_export(const bmg_pair* pair, double lambda, const char* faces_json,
                                           const char* dir, char** out);

#ifdef __cplusplus
}
#endif

#endif  /* BMGEO_BMGEO_H_ */

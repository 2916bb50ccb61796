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

// Command-line front end. Talks to the library only through its C interface.

#include "bmgeo/bmgeo.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct BodyDeleter {
  void operator()(bmg_body* b) const { bmg_body_free(b); }
};
struct PairDeleter {
  void operator()(bmg_pair* p) const { bmg_pair_free(p); }
};
struct StringDeleter {
  void operator()(char* s) const { bmg_string_free(s); }
};
using BodyPtr = std::unique_ptr<bmg_body, BodyDeleter>;
using PairPtr = std::unique_ptr<bmg_pair, PairDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Carries a status out of a command; rendered once in main.
struct Failure {
  int code;
  std::string message;
};

void check(bmg_status s) {
  if (s != BMG_OK) throw Failure{static_cast<int>(s), bmg_last_error()};
}

BodyPtr load(const std::string& path) {
  bmg_body* b = nullptr;
  check(bmg_body_load(path.c_str(), &b));
  return BodyPtr(b);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{BMG_ERR_INPUT, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Optimizer {
  int starts = 32;
  int max_iters = 2000;
  double tol = 1e-6;
  std::uint64_t seed = 0;

  bmg_optimizer_config config() const { return {starts, max_iters, tol, seed}; }
};

void add_optimizer_flags(CLI::App* cmd, Optimizer& opt) {
  cmd->add_option("--seed", opt.seed, "Seed for the randomized optimizer starts");
  cmd->add_option("--tol", opt.tol, "Optimizer convergence tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--starts", opt.starts, "Number of optimizer starts")->check(CLI::Range(1, 100000));
}

// Positions a pair: as given (scaled to contact) or by the optimizer.
// Returns the non-convergence status separately so output can still be made.
PairPtr position(const bmg_body* a, const bmg_body* b, bool fixed, const Optimizer& opt, bmg_status* status) {
  bmg_pair* p = nullptr;
  *status = BMG_OK;
  if (fixed) {
    check(bmg_pair_by_scaling(a, b, &p));
  } else {
    const bmg_optimizer_config cfg = opt.config();
    const bmg_status s = bmg_canonical_position(a, b, &cfg, &p);
    if (s != BMG_OK && s != BMG_ERR_CONVERGENCE) check(s);
    *status = s;
  }
  return PairPtr(p);
}

std::vector<double> parse_grid(const std::string& range, const std::string& list) {
  std::vector<double> grid;
  if (!list.empty()) {
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        grid.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Failure{BMG_ERR_INPUT, "bad --grid-list entry '" + item + "'"};
      }
    }
    return grid;
  }
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::stringstream ss(range);
  if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) || !(b > a))
    throw Failure{BMG_ERR_INPUT, "--grid expects a:b:step with a < b and step > 0"};
  const double count = (b - a) / step;
  const long n = std::lround(count);
  if (std::fabs(count - static_cast<double>(n)) > 1e-9 * std::max(1.0, count) || n > 1000000)
    throw Failure{BMG_ERR_INPUT, "--grid step must divide b - a"};
  for (long i = 0; i < n; ++i) grid.push_back(a + static_cast<double>(i) * step);
  grid.push_back(b);
  return grid;
}

void print(const StringPtr& s) { std::fputs(s.get(), stdout); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Banach-Mazur distances, interpolating geodesics and intermediate-space families"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bmg_version()));

  Optimizer opt;

  std::string body_a, body_b;
  bool fixed = false;
  auto* dist = app.add_subcommand("dist", "Distance between two bodies (DistanceReport JSON)");
  dist->add_option("bodyA", body_a, "First body JSON")->required();
  dist->add_option("bodyB", body_b, "Second body JSON")->required();
  dist->add_flag("--fixed-position", fixed, "Skip the optimizer; distortion of the identity");
  add_optimizer_flags(dist, opt);

  std::string kind = "intersection", grid_range = "0:1:0.1", grid_list, out_dir;
  auto* geo = app.add_subcommand("geodesic", "Sample a geodesic between the positioned bodies");
  geo->add_option("bodyA", body_a, "Body E")->required();
  geo->add_option("bodyB", body_b, "Body F")->required();
  geo->add_option("--kind", kind, "intersection or hull")->check(CLI::IsMember({"intersection", "hull"}));
  auto* grid_opt = geo->add_option("--grid", grid_range, "Grid a:b:step");
  geo->add_option("--grid-list", grid_list, "Comma separated lambdas")->excludes(grid_opt);
  geo->add_option("--out", out_dir, "Output directory")->required();
  geo->add_flag("--fixed-position", fixed, "Use the given position (scaled to contact)");
  add_optimizer_flags(geo, opt);

  std::string manifest;
  int partitions = 16;
  auto* verify = app.add_subcommand("verify", "Check the product law on an exported path");
  verify->add_option("manifest", manifest, "manifest.json")->required();
  verify->add_option("--partitions", partitions, "Random sub-grids to check")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", opt.seed, "Seed for the random partitions");

  std::string body, map_file;
  auto* inv = app.add_subcommand("invariant", "Area-ratio invariant of a polygon");
  inv->add_option("body", body, "Polygon body JSON")->required();
  inv->add_option("--map", map_file, "Apply this linear map first (JSON matrix)");

  double lambda = 0.5;
  int count = 1;
  std::vector<std::string> faces;
  auto* fam = app.add_subcommand("family", "Certified non-isometric bodies between the extreme balls");
  fam->add_option("bodyA", body_a, "Body E")->required();
  fam->add_option("bodyB", body_b, "Body F")->required();
  fam->add_option("--lambda", lambda, "Interpolation exponent in (0, 1)");
  fam->add_option("--count", count, "Number of planar family members")->check(CLI::Range(1, 1000));
  fam->add_option("--out", out_dir, "Output directory")->required();
  fam->add_option("--attach-face", faces, "3D face descriptor JSON (repeatable)");
  fam->add_flag("--fixed-position", fixed, "Use the given position (scaled to contact)");
  add_optimizer_flags(fam, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : BMG_ERR_INPUT;
  }

  try {
    if (*dist) {
      const BodyPtr a = load(body_a);
      const BodyPtr b = load(body_b);
      char* report = nullptr;
      bmg_status s = BMG_OK;
      if (fixed) {
        check(bmg_fixed_position_report(a.get(), b.get(), &report));
      } else {
        const bmg_optimizer_config cfg = opt.config();
        s = bmg_bm_distance(a.get(), b.get(), &cfg, &report);
        if (s != BMG_ERR_CONVERGENCE) check(s);
      }
      const StringPtr text(report);
      print(text);
      check(s);
    } else if (*geo) {
      const std::vector<double> grid = parse_grid(grid_range, grid_list);
      const BodyPtr a = load(body_a);
      const BodyPtr b = load(body_b);
      bmg_status positioned = BMG_OK;
      const PairPtr pair = position(a.get(), b.get(), fixed, opt, &positioned);
      char* m = nullptr;
      const bmg_status s = bmg_geodesic_export(pair.get(), kind.c_str(), grid.data(), grid.size(), out_dir.c_str(), &m);
      const StringPtr text(m);
      if (text) print(text);
      check(s);
      check(positioned);
    } else if (*verify) {
      char* report = nullptr;
      const bmg_status s = bmg_verify_manifest(manifest.c_str(), partitions, opt.seed, &report);
      const StringPtr text(report);
      if (text) print(text);
      check(s);
    } else if (*inv) {
      BodyPtr p = load(body);
      if (!map_file.empty()) {
        bmg_body* mapped = nullptr;
        check(bmg_body_map_json(p.get(), slurp(map_file).c_str(), &mapped));
        p.reset(mapped);
      }
      char* out = nullptr;
      check(bmg_invariant_json(p.get(), &out));
      print(StringPtr(out));
    } else if (*fam) {
      const BodyPtr a = load(body_a);
      const BodyPtr b = load(body_b);
      bmg_status positioned = BMG_OK;
      char* out = nullptr;
      bmg_status s = BMG_OK;
      if (bmg_body_dim(a.get()) == 3) {
        if (faces.empty()) throw Failure{BMG_ERR_INPUT, "3D families need at least one --attach-face"};
        const PairPtr pair = position(a.get(), b.get(), fixed, opt, &positioned);
        std::string doc = "[";
        for (std::size_t i = 0; i < faces.size(); ++i) doc += (i ? "," : "") + slurp(faces[i]);
        doc += "]";
        s = bmg_attach_faces_export(pair.get(), lambda, doc.c_str(), out_dir.c_str(), &out);
      } else {
        if (!faces.empty()) throw Failure{BMG_ERR_INPUT, "--attach-face applies to 3D bodies only"};
        // Exact constructions need polygons: approximate gauge bodies first.
        BodyPtr pa, pb;
        bmg_body* tmp = nullptr;
        check(bmg_body_polygonize(a.get(), 64, &tmp));
        pa.reset(tmp);
        check(bmg_body_polygonize(b.get(), 64, &tmp));
        pb.reset(tmp);
        const PairPtr pair = position(pa.get(), pb.get(), fixed, opt, &positioned);
        s = bmg_family_export(pair.get(), lambda, count, out_dir.c_str(), &out);
      }
      const StringPtr text(out);
      check(s);
      check(positioned);
      std::fprintf(stdout, "{\"family\": \"%s/family.json\", \"certified\": true}\n", out_dir.c_str());
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "bmgeo: error: %s\n", f.message.c_str());
    return f.code;
  }
  return 0;
}

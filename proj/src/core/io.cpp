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

#include "core/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <unistd.h>

namespace bmgeo::io {

namespace fs = std::filesystem;

namespace {

// Inputs can only name this many nested descriptors.
constexpr int kMaxDepth = 64;

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("body descriptor is missing \"") + name + "\"");
  return j.at(name);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
  return v;
}

std::vector<Vector> point_list(const Json& j, int dim) {
  if (!j.is_array() || j.empty()) throw InputError("vertices must be a non-empty array of points");
  std::vector<Vector> pts;
  for (const auto& p : j) {
    if (!p.is_array() || static_cast<int>(p.size()) != dim)
      throw InputError("each vertex must have " + std::to_string(dim) + " coordinates");
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = number(p[static_cast<std::size_t>(i)], "coordinate");
    pts.push_back(v);
  }
  return pts;
}

Json point_json(const Vector& v) {
  Json p = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) p.push_back(v[i]);
  return p;
}

Body parse(const Json& j, int depth) {
  if (depth > kMaxDepth) throw InputError("body descriptor nested too deeply");
  const Json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) throw InputError("\"kind\" must be a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "polygon") {
    const auto pts = point_list(field(j, "vertices"), 2);
    return Body(Polygon2::from_points(pts));
  }
  if (kind == "polytope3") {
    const auto pts = point_list(field(j, "vertices"), 3);
    return Body(Polytope3::from_points(pts));
  }
  if (kind == "lp") {
    const Json& p = field(j, "p");
    LpExponent e;
    if (p.is_string()) {
      if (p.get<std::string>() != "inf") throw InputError("p must be a number or \"inf\"");
      e = LpExponent::inf();
    } else {
      const double v = number(p, "p");
      e = std::isinf(v) ? LpExponent::inf() : LpExponent::of(v);
    }
    const Json& dim = field(j, "dim");
    if (!dim.is_number_integer()) throw InputError("dim must be an integer");
    return lp_ball(e, dim.get<int>());
  }
  if (kind == "scaled") return scale(parse(field(j, "of"), depth + 1), number(field(j, "t"), "t"));
  if (kind == "linear_image") return linear_image(parse(field(j, "of"), depth + 1), matrix_from_json(field(j, "matrix")));
  if (kind == "intersection" || kind == "hull") {
    const Json& of = field(j, "of");
    if (!of.is_array() || of.size() != 2) throw InputError("\"of\" must list exactly two bodies");
    const Body a = parse(of[0], depth + 1);
    const Body b = parse(of[1], depth + 1);
    return kind == "intersection" ? intersect(a, b) : hull_union(a, b);
  }
  throw InputError("unknown body kind '" + kind + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string svg_path(const Body& body) {
  const Body poly = body.polygon() ? body : polygonize(body, 256);
  std::ostringstream out;
  out.precision(9);
  const auto& v = poly.polygon()->vertices();
  for (std::size_t i = 0; i < v.size(); ++i) out << (i == 0 ? "M" : " L") << v[i][0] << ' ' << v[i][1];
  out << " Z";
  return out.str();
}

double round_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json load_json(const fs::path& path) { return parse_json(read_file(path)); }

Body body_from_json(const Json& j) {
  try {
    return parse(j, 0);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed body descriptor: ") + e.what());
  }
}

Body load_body(const fs::path& path) { return body_from_json(load_json(path)); }

Json body_to_json(const Body& body) {
  if (const Polygon2* p = body.polygon()) {
    Json v = Json::array();
    for (const auto& x : p->vertices()) v.push_back(point_json(x));
    return {{"kind", "polygon"}, {"vertices", v}};
  }
  if (const Polytope3* p = body.polytope()) {
    Json v = Json::array();
    for (const auto& x : p->vertices()) v.push_back(point_json(x));
    return {{"kind", "polytope3"}, {"vertices", v}};
  }
  const GaugeExpr& e = *body.expr();
  switch (e.op) {
    case GaugeExpr::Op::Lp:
      return {{"kind", "lp"}, {"p", e.p.infinite ? Json("inf") : Json(e.p.value)}, {"dim", e.dim}};
    case GaugeExpr::Op::Scaled:
      return {{"kind", "scaled"}, {"t", e.factor}, {"of", body_to_json(e.children.at(0))}};
    case GaugeExpr::Op::LinearImage:
      return {{"kind", "linear_image"}, {"matrix", matrix_to_json(e.map)}, {"of", body_to_json(e.children.at(0))}};
    case GaugeExpr::Op::Intersection:
    case GaugeExpr::Op::Hull: {
      Json of = Json::array();
      for (const auto& c : e.children) of.push_back(body_to_json(c));
      return {{"kind", e.op == GaugeExpr::Op::Hull ? "hull" : "intersection"}, {"of", of}};
    }
  }
  throw InputError("unserializable body");
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array() || rows.empty() || rows.size() > static_cast<std::size_t>(kMaxDim))
    throw InputError("matrix must be a non-empty square array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw InputError("matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = number(row[static_cast<std::size_t>(k)], "matrix entry");
  }
  return m;
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.close();
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at " + path.string());
  }
}

Json report_to_json(const DistanceReport& r) {
  return {{"estimate", r.estimate},   {"witness", matrix_to_json(r.witness)}, {"factor_in", r.factor_in},
          {"factor_out", r.factor_out}, {"converged", r.converged},            {"starts_used", r.starts_used}};
}

std::string sample_filename(double lambda) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "body_%.6f.json", lambda);
  return buf;
}

std::string render_svg(const Body& body, const PositionedPair& pair) {
  if (body.dim() != 2) throw InputError("SVG snapshots are planar only");
  const double h = pair.d + 0.1;
  const double stroke = h / 200.0;
  std::ostringstream out;
  out.precision(9);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"512\" height=\"512\" viewBox=\"" << -h << ' '
      << -h << ' ' << 2 * h << ' ' << 2 * h << "\">\n"
      << "<g transform=\"scale(1,-1)\">\n"
      << "<path d=\"" << svg_path(body) << "\" fill=\"#7aa6d6\" fill-opacity=\"0.6\" stroke=\"#1f4e79\" stroke-width=\""
      << stroke << "\"/>\n"
      << "<path d=\"" << svg_path(pair.ball_e) << "\" fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"" << stroke
      << "\" stroke-dasharray=\"" << 4 * stroke << "\"/>\n"
      << "<path d=\"" << svg_path(pair.ball_f) << "\" fill=\"none\" stroke=\"#b22222\" stroke-width=\"" << stroke
      << "\" stroke-dasharray=\"" << 4 * stroke << "\"/>\n"
      << "</g>\n</svg>\n";
  return out.str();
}

Json export_path(const GeodesicPath& path, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string());
  Json lambdas = Json::array();
  Json files = Json::array();
  for (const auto& s : path.samples()) {
    const std::string name = sample_filename(s.lambda);
    write_atomic(dir / name, body_to_json(s.body).dump(1) + "\n");
    if (s.body.dim() == 2) {
      const std::string svg = name.substr(0, name.size() - 5) + ".svg";
      write_atomic(dir / svg, render_svg(s.body, path.pair()));
    }
    lambdas.push_back(s.lambda);
    files.push_back(name);
  }
  Json manifest = {{"kind", to_string(path.kind())}, {"d", path.d()}, {"lambdas", lambdas}, {"files", files}};
  write_atomic(dir / "manifest.json", manifest.dump(1) + "\n");
  return manifest;
}

GeodesicPath load_manifest(const fs::path& manifest) {
  const Json m = load_json(manifest);
  try {
    const double d = m.at("d").get<double>();
    if (!(d >= 1.0) || !std::isfinite(d)) throw InputError("manifest distance must be >= 1");
    const auto& lambdas = m.at("lambdas");
    if (!lambdas.is_array() || lambdas.size() < 2) throw InputError("manifest needs at least two samples");
    std::vector<std::string> files;
    if (m.contains("files")) {
      files = m.at("files").get<std::vector<std::string>>();
      if (files.size() != lambdas.size()) throw InputError("manifest files and lambdas differ in length");
    }
    const fs::path dir = manifest.parent_path();
    std::vector<PathSample> samples;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double lambda = lambdas[i].get<double>();
      const std::string name = files.empty() ? sample_filename(lambda) : files[i];
      samples.push_back({lambda, load_body(dir / name)});
    }
    const PathKind kind = path_kind_from_string(m.at("kind").get<std::string>());
    PositionedPair pair{samples.front().body, samples.back().body, d, true};
    return GeodesicPath::from_samples(std::move(pair), kind, std::move(samples));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
}

Json VerifyReport::to_json() const {
  Json fails = Json::array();
  for (const auto& f : failures) {
    Json item = {{"partition", f.partition}, {"product", f.product}, {"target", f.target}, {"message", f.describe()}};
    if (f.offending) {
      const std::size_t i = *f.offending;
      item["interval"] = {f.partition[i], f.partition[i + 1]};
      item["factor"] = f.pairwise[i];
      item["expected"] = f.expected[i];
    }
    fails.push_back(item);
  }
  return {{"ok", ok}, {"partitions_checked", checked}, {"failures", fails}};
}

VerifyReport verify_path(const GeodesicPath& path, int partitions, std::uint64_t seed) {
  if (partitions < 0) throw InputError("partition count must be >= 0");
  VerifyReport report;
  std::vector<double> grid;
  for (const auto& s : path.samples()) grid.push_back(s.lambda);
  std::vector<std::vector<double>> parts{grid};
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(0.5);
  for (int k = 0; k < partitions; ++k) {
    std::vector<double> p{grid.front()};
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
      if (keep(rng)) p.push_back(grid[i]);
    p.push_back(grid.back());
    parts.push_back(std::move(p));
  }
  for (const auto& p : parts) {
    PartitionCheck c = evaluate_product_law(path, p);
    ++report.checked;
    if (!c.ok) {
      report.ok = false;
      report.failures.push_back(std::move(c));
    }
  }
  return report;
}

Json invariant_to_json(const Polygon2& poly) {
  const dim2::AreaRatioInvariant inv = dim2::area_ratios(poly);
  Json ratios = Json::array();
  double last = 0;
  for (double r : inv.ratios) {
    const double v = round_sig(r, 10);
    if (v != last) ratios.push_back(v);
    last = v;
  }
  return {{"ratios", ratios}, {"edges", dim2::faces_1d(poly).size()}, {"triangles", inv.triangles},
          {"vertices", poly.size()}};
}

Json family_to_json(const dim2::Family& fam) {
  Json out = Json::array();
  for (const auto& m : fam.members) {
    Json faces = Json::array();
    for (const auto& f : m.new_faces) faces.push_back({point_json(f.p), point_json(f.q)});
    Json sample = Json::array();
    const auto& r = m.invariant.ratios;
    const std::size_t step = std::max<std::size_t>(1, r.size() / 16);
    for (std::size_t i = 0; i < r.size(); i += step) sample.push_back(r[i]);
    sample.push_back(m.ratio);
    Json cert = {{"lambda", fam.lambda},
                 {"sandwich_ok", m.sandwich.ok()},
                 {"new_faces", faces},
                 {"ratio", m.ratio},
                 {"invariant_sample", sample}};
    out.push_back({{"body", body_to_json(m.body)}, {"certificate", cert}});
  }
  return out;
}

Json attachments_to_json(const std::vector<dim2::Attachment>& list, double lambda) {
  Json out = Json::array();
  for (const auto& a : list) {
    Json face = Json::array();
    for (const auto& v : a.facet_vertices) face.push_back(point_json(v));
    Json cert = {{"lambda", lambda},
                 {"sandwich_ok", a.sandwich.ok()},
                 {"new_faces", Json::array({face})},
                 {"ratio", nullptr},
                 {"invariant_sample", a.census},
                 {"facet_census", a.census}};
    out.push_back({{"body", body_to_json(a.body)}, {"certificate", cert}});
  }
  return out;
}

std::vector<std::vector<Vector>> faces_from_json(const Json& j, const PositionedPair& pair, double lambda) {
  std::vector<std::vector<Vector>> faces;
  std::optional<dim2::FacePlacement> placement;
  auto one = [&](const Json& item) {
    if (item.is_object() && item.contains("vertices")) {
      faces.push_back(point_list(item.at("vertices"), 3));
    } else if (item.is_object() && item.contains("shape")) {
      if (!placement) placement = dim2::face_placement(pair, lambda);
      faces.push_back(dim2::place_face(*placement, point_list(item.at("shape"), 2)));
    } else {
      throw InputError("face descriptor needs \"vertices\" or \"shape\"");
    }
  };
  try {
    if (j.is_array()) {
      for (const auto& item : j) one(item);
    } else {
      one(j);
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed face descriptor: ") + e.what());
  }
  if (faces.empty()) throw InputError("no attachment faces given");
  return faces;
}

}  // namespace bmgeo::io

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

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace bmgeo;
using namespace bmgeo::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bmgeo_io_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(BodyJson, ParsesAllKinds) {
  const Body sq = io::body_from_json(io::Json::parse(R"({"kind":"polygon","vertices":[[1,1],[-1,1]]})"));
  EXPECT_EQ(sq.polygon()->size(), 4u);
  const Body cube = io::body_from_json(io::Json::parse(R"({"kind":"polytope3","vertices":[[1,1,1],[1,1,-1],[1,-1,1],[-1,1,1]]})"));
  EXPECT_EQ(cube.polytope()->facets().size(), 6u);
  const Body inf = io::body_from_json(io::Json::parse(R"({"kind":"lp","p":"inf","dim":2})"));
  EXPECT_TRUE(gauge_equal(inf, square()));
  const Body s = io::body_from_json(io::Json::parse(R"({"kind":"scaled","t":2,"of":{"kind":"lp","p":2,"dim":2}})"));
  EXPECT_NEAR(gauge(s, vec2(1, 0)), 0.5, 1e-15);
  const Body m = io::body_from_json(
      io::Json::parse(R"({"kind":"linear_image","matrix":[[2,0],[0,1]],"of":{"kind":"lp","p":2,"dim":2}})"));
  EXPECT_NEAR(gauge(m, vec2(2, 0)), 1.0, 1e-15);
  const Body h = io::body_from_json(io::Json::parse(
      R"({"kind":"hull","of":[{"kind":"lp","p":1,"dim":2},{"kind":"scaled","t":0.8,"of":{"kind":"lp","p":"inf","dim":2}}]})"));
  EXPECT_EQ(h.kind(), Body::Kind::Polygon);
  EXPECT_EQ(h.polygon()->size(), 8u);
}

TEST(BodyJson, MalformedInputIsInputError) {
  for (const char* text : {R"({"vertices":[[1,1]]})", R"({"kind":"polygon","vertices":[[1,1,1]]})",
                           R"({"kind":"lp","p":"two","dim":2})", R"({"kind":"lp","p":2})",
                           R"({"kind":"scaled","t":-1,"of":{"kind":"lp","p":2,"dim":2}})",
                           R"({"kind":"blob"})", R"({"kind":"polygon","vertices":"none"})"}) {
    EXPECT_THROW(io::body_from_json(io::Json::parse(text)), InputError) << text;
  }
  EXPECT_THROW(io::parse_json("{not json"), InputError);
}

TEST(BodyJson, RoundTripIsGaugeIdentical) {
  std::mt19937_64 rng(2);
  std::vector<Body> bodies{random_polygon(rng), disk(), scale(lp_ball(LpExponent::of(4), 2), 1.3),
                           linear_image(disk(), random_map(rng)), lp_ball(LpExponent::of(1), 3),
                           hull_union(disk(), scale(square(), 0.9))};
  for (const Body& b : bodies) {
    const Body back = io::body_from_json(io::Json::parse(io::body_to_json(b).dump()));
    EXPECT_TRUE(gauge_equal(b, back, 1e-12));
    if (b.polygon()) EXPECT_EQ(b.polygon()->grid_vertices(), back.polygon()->grid_vertices());
  }
}

TEST(BodyJson, ReportKeys) {
  DistanceReport r;
  r.estimate = 1.5;
  r.witness = Matrix::Identity(2, 2);
  const io::Json j = io::report_to_json(r);
  for (const char* k : {"estimate", "witness", "factor_in", "factor_out", "converged", "starts_used"})
    EXPECT_TRUE(j.contains(k)) << k;
}

TEST(PathExport, ManifestFilesAndSvgs) {
  const fs::path dir = scratch("export");
  const PositionedPair p = PositionedPair::by_scaling(disk(), square());
  const auto path = GeodesicPath::build(p, PathKind::Intersection, uniform_grid(11));
  const io::Json m = io::export_path(path, dir);
  EXPECT_EQ(m["lambdas"].size(), 11u);
  EXPECT_NEAR(m["d"].get<double>(), std::sqrt(2.0), 1e-12);
  EXPECT_EQ(m["kind"], "intersection");
  EXPECT_TRUE(fs::exists(dir / "body_0.000000.json"));
  EXPECT_TRUE(fs::exists(dir / "body_0.500000.json"));
  EXPECT_TRUE(fs::exists(dir / "body_0.500000.svg"));
  const std::string svg = slurp(dir / "body_0.500000.svg");
  EXPECT_NE(svg.find("viewBox=\"-1.51421356"), std::string::npos);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  for (const auto& e : fs::directory_iterator(dir)) EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos);
}

TEST(PathExport, VerifyPassesAndLocatesCorruption) {
  const fs::path dir = scratch("verify");
  std::mt19937_64 rng(4);
  const PositionedPair p = PositionedPair::by_scaling(random_polygon(rng), random_polygon(rng));
  io::export_path(GeodesicPath::build(p, PathKind::Hull, uniform_grid(6)), dir);
  const auto loaded = io::load_manifest(dir / "manifest.json");
  EXPECT_TRUE(io::verify_path(loaded, 8, 1).ok);
  EXPECT_EQ(io::verify_path(loaded, 0, 1).checked, 1u);

  // Replace one interior body by ball_F.
  fs::copy_file(dir / "body_1.000000.json", dir / "body_0.400000.json", fs::copy_options::overwrite_existing);
  const io::VerifyReport bad = io::verify_path(io::load_manifest(dir / "manifest.json"), 0, 1);
  ASSERT_FALSE(bad.ok);
  ASSERT_TRUE(bad.failures[0].offending.has_value());
  const io::Json j = bad.to_json();
  EXPECT_DOUBLE_EQ(j["failures"][0]["interval"][1].get<double>(), 0.4);
}

TEST(PathExport, DeterministicBytes) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const PositionedPair p = PositionedPair::by_scaling(disk(), square());
  io::export_path(GeodesicPath::build(p, PathKind::Hull, uniform_grid(3)), a);
  io::export_path(GeodesicPath::build(p, PathKind::Hull, uniform_grid(3)), b);
  EXPECT_EQ(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
  EXPECT_EQ(slurp(a / "body_0.500000.json"), slurp(b / "body_0.500000.json"));
}

TEST(InvariantJson, MapGivesIdenticalOutput) {
  const Polygon2 h = Polygon2::from_points(std::vector<Vector>{vec2(1, 0), vec2(0.6, 0.8), vec2(-0.4, 0.9)});
  Matrix m(2, 2);
  m << 1.3, 0.4, -0.2, 0.9;
  EXPECT_EQ(io::invariant_to_json(h).dump(), io::invariant_to_json(h.mapped(m)).dump());
}

TEST(FaceJson, ShapesAndVertices) {
  const PositionedPair p =
      PositionedPair::by_scaling(lp_ball(LpExponent::of(1), 3), lp_ball(LpExponent::inf(), 3));
  const auto faces = io::faces_from_json(
      io::Json::parse(R"([{"shape":[[1,0],[0,1],[-1,0]]},{"vertices":[[1,1,1.2],[1.1,1,1],[1,1.1,1]]}])"), p, 0.5);
  ASSERT_EQ(faces.size(), 2u);
  EXPECT_EQ(faces[0].size(), 3u);
  EXPECT_THROW(io::faces_from_json(io::Json::parse(R"({"edges":[]})"), p, 0.5), InputError);
}

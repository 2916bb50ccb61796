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

// Drives the installed command-line tool end to end.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bmgeo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "_" +
            std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("disk.json", R"({"kind":"lp","p":2,"dim":2})");
    write("square.json", R"({"kind":"lp","p":"inf","dim":2})");
    write("diamond.json", R"({"kind":"lp","p":1,"dim":2})");
    write("hexagon.json", R"({"kind":"polygon","vertices":[[1,0],[0.6,0.8],[-0.4,0.9]]})");
    write("octahedron.json", R"({"kind":"lp","p":1,"dim":3})");
    write("cube.json", R"({"kind":"lp","p":"inf","dim":3})");
    write("bad.json", R"({"kind":"polygon","vertices":[[1]]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }

  std::string read(const fs::path& p) const {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Runs the tool with the arguments; stdout lands in out_.
  int run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const std::string cmd = "cd " + dir_.string() + " && " + BMGEO_CLI + std::string(" ") + args + " > " +
                            out.string() + " 2> " + (dir_ / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    out_ = read(out);
    err_ = read(dir_ / "stderr.txt");
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }

  double number(const std::string& key) const {
    const std::regex re("\"" + key + "\": ([-0-9.eE+]+)");
    std::smatch m;
    if (!std::regex_search(out_, m, re)) return NAN;
    return std::stod(m[1]);
  }

  fs::path dir_;
  std::string out_;
  std::string err_;
};

}  // namespace

TEST_F(Cli, DistDiskSquare) {
  ASSERT_EQ(run("dist disk.json square.json --starts 8"), 0) << err_;
  EXPECT_NEAR(number("estimate"), 1.41421, 1e-4);
}

TEST_F(Cli, DistSelfIsOne) {
  ASSERT_EQ(run("dist hexagon.json hexagon.json --starts 4"), 0) << err_;
  EXPECT_NEAR(number("estimate"), 1.0, 1e-9);
}

TEST_F(Cli, DistDiamondSquareIsometric) {
  ASSERT_EQ(run("dist diamond.json square.json --starts 8"), 0) << err_;
  EXPECT_NEAR(number("estimate"), 1.0, 1e-3);
}

TEST_F(Cli, DistFixedPosition) {
  ASSERT_EQ(run("dist diamond.json square.json --fixed-position"), 0) << err_;
  EXPECT_NEAR(number("estimate"), 2.0, 1e-12);
}

TEST_F(Cli, MalformedInputExitsTwo) {
  EXPECT_EQ(run("dist bad.json square.json"), 2);
  EXPECT_NE(err_.find("error"), std::string::npos);
  EXPECT_EQ(run("dist missing.json square.json"), 2);
  EXPECT_EQ(run("geodesic disk.json square.json --kind spiral --out g"), 2);
  EXPECT_EQ(run("geodesic disk.json square.json --grid 0:1:0.3 --out g"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, NonConvergenceExitsFour) {
  EXPECT_EQ(run("dist hexagon.json square.json --starts 1 --tol 1e-300"), 4);
  EXPECT_NE(out_.find("\"converged\": false"), std::string::npos);
}

TEST_F(Cli, GeodesicElevenPoints) {
  ASSERT_EQ(run("geodesic disk.json square.json --kind intersection --grid 0:1:0.1 --out g"), 0) << err_;
  int json = 0, svg = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "g")) {
    const std::string n = e.path().filename().string();
    if (n.rfind("body_", 0) == 0 && e.path().extension() == ".json") ++json;
    if (e.path().extension() == ".svg") ++svg;
  }
  EXPECT_EQ(json, 11);
  EXPECT_EQ(svg, 11);
  EXPECT_TRUE(fs::exists(dir_ / "g" / "manifest.json"));
  EXPECT_NEAR(number("d"), std::sqrt(2.0), 1e-6);
}

TEST_F(Cli, GeodesicEndpointsOnly) {
  ASSERT_EQ(run("geodesic disk.json square.json --grid-list 0,1 --out g"), 0) << err_;
  EXPECT_TRUE(fs::exists(dir_ / "g" / "body_0.000000.json"));
  EXPECT_TRUE(fs::exists(dir_ / "g" / "body_1.000000.json"));
  EXPECT_FALSE(fs::exists(dir_ / "g" / "body_0.500000.json"));
}

TEST_F(Cli, HullAndIntersectionShareEndpoints) {
  ASSERT_EQ(run("geodesic disk.json square.json --kind hull --grid-list 0,0.5,1 --out h"), 0) << err_;
  ASSERT_EQ(run("geodesic disk.json square.json --kind intersection --grid-list 0,0.5,1 --out i"), 0) << err_;
  EXPECT_EQ(read(dir_ / "h" / "body_0.000000.json"), read(dir_ / "i" / "body_0.000000.json"));
  EXPECT_EQ(read(dir_ / "h" / "body_1.000000.json"), read(dir_ / "i" / "body_1.000000.json"));
  EXPECT_NE(read(dir_ / "h" / "body_0.500000.json"), read(dir_ / "i" / "body_0.500000.json"));
}

TEST_F(Cli, GeodesicIsDeterministic) {
  ASSERT_EQ(run("geodesic hexagon.json square.json --grid 0:1:0.25 --seed 3 --starts 4 --out a"), 0) << err_;
  ASSERT_EQ(run("geodesic hexagon.json square.json --grid 0:1:0.25 --seed 3 --starts 4 --out b"), 0) << err_;
  for (const char* f : {"manifest.json", "body_0.250000.json", "body_0.750000.json"})
    EXPECT_EQ(read(dir_ / "a" / f), read(dir_ / "b" / f)) << f;
}

TEST_F(Cli, VerifyPassesOnExport) {
  ASSERT_EQ(run("geodesic hexagon.json square.json --kind hull --grid 0:1:0.125 --starts 4 --out g"), 0) << err_;
  EXPECT_EQ(run("verify g/manifest.json --partitions 16"), 0) << out_;
  EXPECT_EQ(run("verify g/manifest.json --partitions 0"), 0);
  EXPECT_NE(out_.find("\"partitions_checked\": 1"), std::string::npos);
}

TEST_F(Cli, VerifyLocatesCorruptedBody) {
  ASSERT_EQ(run("geodesic hexagon.json square.json --grid 0:1:0.25 --starts 4 --out g"), 0) << err_;
  fs::copy_file(dir_ / "g" / "body_1.000000.json", dir_ / "g" / "body_0.500000.json",
                fs::copy_options::overwrite_existing);
  EXPECT_EQ(run("verify g/manifest.json --partitions 4"), 3);
  EXPECT_NE(out_.find("\"interval\""), std::string::npos);
  EXPECT_NE(err_.find("interval [0.25, 0.5]"), std::string::npos) << err_;
}

TEST_F(Cli, InvariantSquareAndHexagon) {
  write("sq_poly.json", R"({"kind":"polygon","vertices":[[1,1],[-1,1]]})");
  ASSERT_EQ(run("invariant sq_poly.json"), 0) << err_;
  EXPECT_NE(out_.find("\"ratios\": [\n  1.0\n ]"), std::string::npos) << out_;
  ASSERT_EQ(run("invariant hexagon.json"), 0) << err_;
  EXPECT_NE(out_.find("0.8888888889"), std::string::npos) << out_;
  const std::string plain = out_;
  write("map.json", R"([[1.7,0.3],[-0.4,0.8]])");
  ASSERT_EQ(run("invariant hexagon.json --map map.json"), 0) << err_;
  EXPECT_EQ(out_, plain);
  EXPECT_EQ(run("invariant disk.json"), 2);
}

TEST_F(Cli, FamilySingleMember) {
  ASSERT_EQ(run("family disk.json square.json --lambda 0.5 --count 1 --out f"), 0) << err_;
  const std::string fam = read(dir_ / "f" / "family.json");
  EXPECT_NE(fam.find("\"sandwich_ok\": true"), std::string::npos);
  EXPECT_NE(fam.find("\"new_faces\""), std::string::npos);
}

TEST_F(Cli, FamilyNearBoundaryLambdaFails) {
  EXPECT_EQ(run("family disk.json square.json --lambda 0.999 --count 10 --out f"), 3) << err_;
  EXPECT_FALSE(err_.empty());
}

TEST_F(Cli, FamilyAttachFaces3d) {
  write("tri.json", R"({"shape":[[1,0],[-0.5,0.866],[-0.5,-0.866]]})");
  write("sq.json", R"({"shape":[[1,0],[0,1],[-1,0],[0,-1]]})");
  ASSERT_EQ(run("family octahedron.json cube.json --lambda 0.5 --fixed-position --attach-face tri.json "
                "--attach-face sq.json --out f"),
            0)
      << err_;
  EXPECT_NE(read(dir_ / "f" / "family.json").find("facet_census"), std::string::npos);
  EXPECT_EQ(run("family octahedron.json cube.json --lambda 0.5 --out f"), 2);
}

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

#pragma once

#include "core/dim2.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bmgeo::io {

using Json = nlohmann::json;

/// Body descriptors: polygon, polytope3, lp, scaled, linear_image, plus the
/// composite intersection / hull with an "of" array. Throws InputError.
Body body_from_json(const Json& j);
Json body_to_json(const Body& body);
Body load_body(const std::filesystem::path& path);
Json load_json(const std::filesystem::path& path);
Json parse_json(const std::string& text);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

Json report_to_json(const DistanceReport& r);

/// "body_0.250000.json" style name for a path sample.
std::string sample_filename(double lambda);

/// Snapshot of a planar body on the fixed viewport [-(d+0.1), d+0.1]^2 with
/// both balls of the pair outlined.
std::string render_svg(const Body& body, const PositionedPair& pair);

/// Writes one body file (plus an SVG in 2D) per sample and the manifest;
/// returns the manifest.
Json export_path(const GeodesicPath& path, const std::filesystem::path& dir);

/// Reads a manifest and its body files back as a sample-only path.
GeodesicPath load_manifest(const std::filesystem::path& manifest);

struct VerifyReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<PartitionCheck> failures;
  Json to_json() const;
};

/// Product law on the full grid plus `partitions` seeded random sub-grids
/// (each keeps both endpoints).
VerifyReport verify_path(const GeodesicPath& path, int partitions, std::uint64_t seed);

/// Ratios rounded to 10 significant digits so that linear images of the
/// same polygon print identically.
Json invariant_to_json(const Polygon2& poly);

Json family_to_json(const dim2::Family& fam);
Json attachments_to_json(const std::vector<dim2::Attachment>& list, double lambda);

/// Faces given either as "vertices" (3D points) or as a planar "shape"
/// placed automatically; a top-level array holds several faces.
std::vector<std::vector<Vector>> faces_from_json(const Json& j, const PositionedPair& pair, double lambda);

}  // namespace bmgeo::io

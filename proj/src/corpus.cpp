// Copyright 2026 The simpeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simpeval/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "simpeval/error.hpp"

namespace simpeval {
namespace {

using nlohmann::json;

CorpusEntry parse_entry(const json& j, const std::filesystem::path& base) {
  CorpusEntry e;
  e.name = j.at("name").get<std::string>();
  e.file = base / j.at("file").get<std::string>();
  auto type = parse_object_type(j.at("type").get<std::string>());
  if (!type) throw ParseError("object '" + e.name + "': type must be animal or artifact", 0);
  e.type = *type;
  if (auto it = j.find("camera"); it != j.end()) {
    const json& c = *it;
    if (c.contains("fov_deg")) e.camera.fov_deg = c["fov_deg"].get<double>();
    if (c.contains("distance_factor")) e.camera.distance_factor = c["distance_factor"].get<double>();
    if (c.contains("azimuth_deg")) e.camera.azimuth_deg = c["azimuth_deg"].get<double>();
    if (c.contains("elevation_deg")) e.camera.elevation_deg = c["elevation_deg"].get<double>();
    if (c.contains("look_at")) {
      auto v = c["look_at"].get<std::vector<double>>();
      if (v.size() != 3) throw ParseError("object '" + e.name + "': look_at needs 3 values", 0);
      e.camera.look_at = Vec3(v[0], v[1], v[2]);
    }
  }
  return e;
}

}  // namespace

std::string_view to_string(ObjectType t) {
  return t == ObjectType::kAnimal ? "animal" : "artifact";
}

std::optional<ObjectType> parse_object_type(std::string_view s) {
  if (s == "animal") return ObjectType::kAnimal;
  if (s == "artifact") return ObjectType::kArtifact;
  return std::nullopt;
}

const CorpusEntry* Manifest::find(std::string_view name) const {
  for (const auto& e : objects) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Manifest parse_manifest(std::string_view json_text,
                        const std::filesystem::path& base_dir) {
  Manifest m;
  m.base_dir = base_dir;
  try {
    const auto doc = json::parse(json_text);
    for (const auto& j : doc.at("objects")) m.objects.push_back(parse_entry(j, base_dir));
    if (auto it = doc.find("practice"); it != doc.end()) {
      for (const auto& j : *it) m.practice.push_back(parse_entry(j, base_dir));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0);
  }
  std::set<std::string> seen;
  for (const auto& e : m.objects) {
    if (e.name.empty()) throw ParseError("manifest: empty object name", 0);
    if (!seen.insert(e.name).second) throw ParseError("manifest: duplicate object '" + e.name + "'", 0);
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

}  // namespace simpeval

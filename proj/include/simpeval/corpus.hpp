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

#ifndef SIMPEVAL_CORPUS_HPP_
#define SIMPEVAL_CORPUS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simpeval/mesh.hpp"

namespace simpeval {

enum class ObjectType { kAnimal, kArtifact };

std::string_view to_string(ObjectType t);
std::optional<ObjectType> parse_object_type(std::string_view s);

// Per-model camera adjustments; unset fields keep the canonical defaults.
struct CameraOverrides {
  std::optional<double> fov_deg;
  std::optional<double> distance_factor;
  std::optional<double> azimuth_deg;
  std::optional<double> elevation_deg;
  // Replaces the vertex centroid as the look-at point.
  std::optional<Vec3> look_at;
};

struct CorpusEntry {
  std::string name;
  std::filesystem::path file;  // resolved against the manifest directory
  ObjectType type = ObjectType::kAnimal;
  CameraOverrides camera;
};

// Corpus manifest (JSON):
//
//   {
//     "objects":  [ {"name": "cow", "file": "cow.off", "type": "animal",
//                    "camera": {"azimuth_deg": 30, "look_at": [0, 0.1, 0]}} ],
//     "practice": [ ...same shape, optional... ]
//   }
struct Manifest {
  std::filesystem::path base_dir;
  std::vector<CorpusEntry> objects;
  std::vector<CorpusEntry> practice;

  const CorpusEntry* find(std::string_view name) const;
};

Manifest parse_manifest(std::string_view json_text,
                        const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace simpeval

#endif  // SIMPEVAL_CORPUS_HPP_

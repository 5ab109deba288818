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

#ifndef SIMPEVAL_MESH_IO_HPP_
#define SIMPEVAL_MESH_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "simpeval/mesh.hpp"

namespace simpeval {

enum class MeshFormat { kOff, kObj, kPly };

// From a file extension (.off/.obj/.ply, case-insensitive).
std::optional<MeshFormat> format_from_path(const std::filesystem::path& path);
std::optional<MeshFormat> parse_mesh_format(std::string_view name);

// Readers fan-triangulate polygons with more than three corners. They throw
// ParseError (with line number) on malformed input or an empty mesh, and
// InvalidArgument when the result violates TriMesh invariants.
TriMesh read_off(std::istream& in, std::string label = {});
TriMesh read_obj(std::istream& in, std::string label = {});
TriMesh read_ply(std::istream& in, std::string label = {});

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
// Format inferred from the extension.
TriMesh load_mesh(const std::filesystem::path& path);

// Coordinates are written in shortest round-trip form, so a save/load cycle
// reproduces them bit-exactly.
void write_off(std::ostream& out, const TriMesh& mesh);
void save_off(const std::filesystem::path& path, const TriMesh& mesh);

}  // namespace simpeval

#endif  // SIMPEVAL_MESH_IO_HPP_

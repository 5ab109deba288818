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

#include "simpeval/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "simpeval/error.hpp"

namespace simpeval {

void validate(const TriMesh& mesh) {
  const auto n = mesh.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!mesh.vertices[i].allFinite()) {
      throw InvalidArgument("vertex " + std::to_string(i) +
                            " has a non-finite coordinate");
    }
  }
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (auto idx : mesh.faces[f]) {
      if (idx >= n) {
        throw InvalidArgument("face " + std::to_string(f) + " index " +
                              std::to_string(idx) + " out of range (" +
                              std::to_string(n) + " vertices)");
      }
    }
  }
}

bool is_degenerate(const TriMesh& mesh, const Face& f) {
  if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) return true;
  return !(triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]],
                         mesh.vertices[f[2]]) > 0.0);
}

std::size_t degenerate_face_count(const TriMesh& mesh) {
  return static_cast<std::size_t>(
      std::count_if(mesh.faces.begin(), mesh.faces.end(),
                    [&](const Face& f) { return is_degenerate(mesh, f); }));
}

bool Aabb::contains(const Vec3& p, double tol) const {
  for (int k = 0; k < 3; ++k) {
    if (p[k] < min[k] - tol || p[k] > max[k] + tol) return false;
  }
  return true;
}

Aabb bounding_box(const TriMesh& mesh) {
  if (mesh.vertices.empty()) throw InvalidArgument("bounding_box: empty mesh");
  Aabb box{mesh.vertices.front(), mesh.vertices.front()};
  for (const auto& v : mesh.vertices) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

double surface_area(const TriMesh& mesh) {
  double area = 0.0;
  for (const auto& f : mesh.faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) continue;
    area += triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]],
                          mesh.vertices[f[2]]);
  }
  return area;
}

double signed_volume(const TriMesh& mesh) {
  double six_v = 0.0;
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    six_v += a.dot(b.cross(c));
  }
  return six_v / 6.0;
}

bool is_closed(const TriMesh& mesh) {
  // directed edge -> use count
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& f : mesh.faces) {
    if (is_degenerate(mesh, f)) continue;
    for (int k = 0; k < 3; ++k) ++directed[{f[k], f[(k + 1) % 3]}];
  }
  for (const auto& [edge, count] : directed) {
    if (count != 1) return false;
    auto it = directed.find({edge.second, edge.first});
    if (it == directed.end() || it->second != 1) return false;
  }
  return true;
}

Vec3 vertex_centroid(const TriMesh& mesh) {
  if (mesh.vertices.empty()) throw InvalidArgument("vertex_centroid: empty mesh");
  Vec3 sum = Vec3::Zero();
  for (const auto& v : mesh.vertices) sum += v;
  return sum / static_cast<double>(mesh.vertices.size());
}

TriMesh transformed(const TriMesh& mesh, const Eigen::Affine3d& xf) {
  TriMesh out = mesh;
  for (auto& v : out.vertices) v = xf * v;
  // A reflection flips orientation; keep the outward normals outward.
  if (xf.linear().determinant() < 0.0) {
    for (auto& f : out.faces) std::swap(f[1], f[2]);
  }
  return out;
}

TriMesh merge(const std::vector<TriMesh>& parts, std::string label) {
  TriMesh out;
  out.label = std::move(label);
  for (const auto& part : parts) {
    const auto base = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), part.vertices.begin(),
                        part.vertices.end());
    for (const auto& f : part.faces) {
      out.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
    }
  }
  return out;
}

TriMesh compacted(const TriMesh& mesh) {
  constexpr auto kUnused = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> remap(mesh.vertices.size(), kUnused);
  TriMesh out;
  out.label = mesh.label;
  out.faces.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    Face g{};
    for (int k = 0; k < 3; ++k) {
      auto& slot = remap[f[k]];
      if (slot == kUnused) {
        slot = static_cast<std::uint32_t>(out.vertices.size());
        out.vertices.push_back(mesh.vertices[f[k]]);
      }
      g[k] = slot;
    }
    out.faces.push_back(g);
  }
  return out;
}

}  // namespace simpeval

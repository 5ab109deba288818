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

#ifndef SIMPEVAL_DISTANCE_HPP_
#define SIMPEVAL_DISTANCE_HPP_

#include <cstdint>
#include <vector>

#include "simpeval/mesh.hpp"

namespace simpeval {

// Closest point on triangle (a, b, c) to p. Degenerate triangles reduce to
// their edges.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c);

// Bounding-volume hierarchy over the faces of a mesh for exact nearest
// surface queries. Holds a copy of the geometry it indexes.
class TriangleIndex {
 public:
  explicit TriangleIndex(const TriMesh& mesh);

  // Exact minimum Euclidean distance from p to the surface.
  double distance(const Vec3& p) const;
  double squared_distance(const Vec3& p) const;

  std::size_t triangle_count() const { return tris_.size(); }

 private:
  struct Tri {
    Vec3 a, b, c;
  };
  struct Node {
    Aabb box;
    std::uint32_t first = 0;  // leaf: first triangle; inner: left child
    std::uint32_t count = 0;  // 0 for inner nodes
    std::uint32_t right = 0;
  };

  std::uint32_t build(std::uint32_t first, std::uint32_t count,
                      std::vector<Vec3>& centroids);

  std::vector<Tri> tris_;
  std::vector<Node> nodes_;
};

// Throws InvalidArgument when the mesh has no faces.
double point_to_mesh_distance(const Vec3& p, const TriMesh& mesh);

}  // namespace simpeval

#endif  // SIMPEVAL_DISTANCE_HPP_

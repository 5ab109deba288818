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

#ifndef SIMPEVAL_MESH_HPP_
#define SIMPEVAL_MESH_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace simpeval {

using Vec3 = Eigen::Vector3d;
using Face = std::array<std::uint32_t, 3>;

// Indexed triangle mesh. Faces may be degenerate (repeated indices or zero
// area); vertex clustering produces such faces and they are measured as-is.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::string label;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t face_count() const { return faces.size(); }
  bool empty() const { return vertices.empty(); }
};

// Throws InvalidArgument if a face index is out of range or a coordinate is
// not finite.
void validate(const TriMesh& mesh);

bool is_degenerate(const TriMesh& mesh, const Face& f);
std::size_t degenerate_face_count(const TriMesh& mesh);

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
  double diagonal() const { return (max - min).norm(); }
  bool degenerate() const { return !(diagonal() > 0.0); }
  bool contains(const Vec3& p, double tol = 0.0) const;
};

// Tight box over all vertices. Throws InvalidArgument on an empty mesh.
Aabb bounding_box(const TriMesh& mesh);
inline double diagonal(const Aabb& box) { return box.diagonal(); }

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);
double surface_area(const TriMesh& mesh);

// Sum of origin-anchored tetrahedra. Equals the enclosed volume (positive for
// outward orientation) when the mesh is closed and consistently oriented.
double signed_volume(const TriMesh& mesh);

// Every undirected edge is shared by exactly two faces, used once in each
// direction. Degenerate faces are ignored.
bool is_closed(const TriMesh& mesh);

// Unweighted mean of the vertices.
Vec3 vertex_centroid(const TriMesh& mesh);

TriMesh transformed(const TriMesh& mesh, const Eigen::Affine3d& xf);

// Concatenate meshes into one (disjoint components).
TriMesh merge(const std::vector<TriMesh>& parts, std::string label = {});

// Drop vertices no face references and renumber, preserving first-use order.
TriMesh compacted(const TriMesh& mesh);

}  // namespace simpeval

#endif  // SIMPEVAL_MESH_HPP_

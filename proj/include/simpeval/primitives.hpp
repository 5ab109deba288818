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

#ifndef SIMPEVAL_PRIMITIVES_HPP_
#define SIMPEVAL_PRIMITIVES_HPP_

#include <utility>
#include <vector>

#include "simpeval/mesh.hpp"

// Closed, outward-oriented procedural meshes used by tests and the bundled
// corpus generator.
namespace simpeval::primitives {

// Axis-aligned box with each face split into n x n quads (2 n^2 triangles).
TriMesh box(const Vec3& min, const Vec3& max, int n = 1);
// [0,1]^3, 12 triangles.
TriMesh unit_cube();
// Cube of side `side` centered at the origin, 12 triangles.
TriMesh centered_cube(double side);
TriMesh tetrahedron();

// Subdivided icosahedron projected to a sphere: 20 * 4^level triangles.
TriMesh icosphere(int level, double radius = 1.0);

// Open flat square [0,1]^2 at z = 0 split into n x n quads (2 n^2 triangles).
TriMesh grid_plane(int n);

// Capped cylinder along +z from z = 0 to z = height.
TriMesh cylinder(double radius, double height, int segments, int rings);
// Surface of revolution about +z. `profile` holds (radius, z) points from
// the bottom pole to the top pole; the first and last radii must be 0.
TriMesh lathe(const std::vector<std::pair<double, double>>& profile, int segments);
TriMesh torus(double major, double minor, int major_segments, int minor_segments);

}  // namespace simpeval::primitives

#endif  // SIMPEVAL_PRIMITIVES_HPP_

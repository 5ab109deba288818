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

#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

#include "doctest.h"
#include "simpeval/error.hpp"
#include "simpeval/mesh.hpp"
#include "simpeval/mesh_io.hpp"
#include "simpeval/primitives.hpp"
#include "simpeval/shapes.hpp"

using namespace simpeval;

namespace {

const char* kCubeOff = R"(OFF
8 12 0
0 0 0
1 0 0
1 1 0
0 1 0
0 0 1
1 0 1
1 1 1
0 1 1
3 0 2 1
3 0 3 2
3 4 5 6
3 4 6 7
3 0 1 5
3 0 5 4
3 1 2 6
3 1 6 5
3 2 3 7
3 2 7 6
3 3 0 4
3 3 4 7
)";

Eigen::Affine3d some_rigid() {
  return Eigen::Translation3d(0.3, -2.0, 5.0) *
         Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized());
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("unit cube OFF loads as 8 vertices and 12 faces") {
  std::istringstream in(kCubeOff);
  const auto m = read_off(in);
  CHECK(m.vertex_count() == 8);
  CHECK(m.face_count() == 12);
  CHECK(is_closed(m));
  CHECK(signed_volume(m) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("out-of-range face index is rejected with its line") {
  std::string text = kCubeOff;
  text.replace(text.find("3 0 2 1"), 7, "3 0 2 99");
  std::istringstream in(text);
  try {
    read_off(in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 11);
  }
}

TEST_CASE("quads are fan split") {
  std::istringstream in(R"(v 0 0 0
v 1 0 0
v 1 1 0
v 0 1 0
v 0 0 1
v 1 0 1
v 1 1 1
v 0 1 1
f 1 4 3 2
f 5 6 7 8
f 1 2 6 5
f 2 3 7 6
f 3/1 4/1 8/1 7/1
f -1 -5 -8 -4
)");
  const auto m = read_obj(in);
  CHECK(m.face_count() == 12);
  CHECK(is_closed(m));
  CHECK(std::abs(signed_volume(m)) == doctest::Approx(1.0));
}

TEST_CASE("ascii PLY") {
  std::istringstream in(R"(ply
format ascii 1.0
element vertex 4
property float x
property float y
property float z
element face 1
property list uchar int vertex_indices
end_header
0 0 0
1 0 0
1 1 0
0 1 0
4 0 1 2 3
)");
  const auto m = read_ply(in);
  CHECK(m.face_count() == 2);
  CHECK(surface_area(m) == doctest::Approx(1.0));
}

TEST_CASE("empty and non-finite meshes are errors") {
  std::istringstream empty("OFF\n0 0 0\n");
  CHECK_THROWS_AS(read_off(empty), ParseError);
  TriMesh m = primitives::unit_cube();
  m.vertices[0].x() = std::nan("");
  CHECK_THROWS_AS(validate(m), InvalidArgument);
}

TEST_CASE("bounding box and diagonal") {
  CHECK(diagonal(bounding_box(primitives::unit_cube())) == doctest::Approx(std::sqrt(3.0)));
  TriMesh point;
  point.vertices = {Vec3(1, 2, 3)};
  const auto b = bounding_box(point);
  CHECK(b.degenerate());
  CHECK(b.diagonal() == 0.0);
  const auto moved = transformed(primitives::unit_cube(),
                                 Eigen::Affine3d(Eigen::Translation3d(10, -4, 7)));
  CHECK(diagonal(bounding_box(moved)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("surface area") {
  CHECK(surface_area(primitives::unit_cube()) == doctest::Approx(6.0));
  TriMesh tri;
  tri.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  tri.faces = {{0, 1, 2}};
  CHECK(surface_area(tri) == 0.5);
  auto cube = primitives::unit_cube();
  cube.faces.push_back({0, 0, 1});
  CHECK(surface_area(cube) == doctest::Approx(6.0));
  CHECK(degenerate_face_count(cube) == 1);
}

TEST_CASE("signed volume") {
  CHECK(signed_volume(primitives::unit_cube()) == doctest::Approx(1.0));
  CHECK(signed_volume(primitives::tetrahedron()) == doctest::Approx(1.0 / 6.0));
  const auto big = transformed(primitives::unit_cube(), Eigen::Affine3d(Eigen::Scaling(2.0)));
  CHECK(signed_volume(big) == doctest::Approx(8.0));
  const auto mirrored =
      transformed(primitives::unit_cube(), Eigen::Affine3d(Eigen::Scaling(Vec3(-1, 1, 1))));
  CHECK(signed_volume(mirrored) == doctest::Approx(1.0));
}

TEST_CASE("rigid and scale behaviour of the basic measures") {
  const auto m = primitives::icosphere(2, 1.3);
  const auto r = transformed(m, some_rigid());
  CHECK(diagonal(bounding_box(r)) > 0);
  CHECK(surface_area(r) == doctest::Approx(surface_area(m)).epsilon(1e-9));
  CHECK(std::abs(signed_volume(r)) == doctest::Approx(std::abs(signed_volume(m))).epsilon(1e-9));
  const auto s = transformed(m, Eigen::Affine3d(Eigen::Scaling(1.7)));
  CHECK(signed_volume(s) == doctest::Approx(signed_volume(m) * 1.7 * 1.7 * 1.7).epsilon(1e-9));
}

TEST_CASE("OFF round trip is bit-exact") {
  auto m = primitives::icosphere(2, 0.1);
  m = transformed(m, some_rigid());
  std::stringstream ss;
  write_off(ss, m);
  const auto back = read_off(ss);
  REQUIRE(back.vertex_count() == m.vertex_count());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    CHECK(back.vertices[i].x() == m.vertices[i].x());
    CHECK(back.vertices[i].y() == m.vertices[i].y());
    CHECK(back.vertices[i].z() == m.vertices[i].z());
  }
  CHECK(back.faces == m.faces);
}

TEST_CASE("primitives are closed and outward") {
  for (const auto& m : {primitives::box(Vec3(0, 0, 0), Vec3(1, 2, 3), 4), primitives::icosphere(3),
                        primitives::cylinder(0.5, 2.0, 16, 4), primitives::torus(1.0, 0.3, 24, 12),
                        primitives::lathe({{0, 0}, {1, 0.2}, {0.5, 1}, {0, 1.2}}, 20)}) {
    CHECK(is_closed(m));
    CHECK(signed_volume(m) > 0);
    CHECK(degenerate_face_count(m) == 0);
  }
  CHECK(primitives::icosphere(3).face_count() == 1280);
  CHECK(primitives::grid_plane(16).face_count() == 512);
  CHECK(primitives::box(Vec3(0, 0, 0), Vec3(1, 2, 3), 4).face_count() == 192);
}

TEST_CASE("bundled shapes exceed the default budget and are outward") {
  for (const auto& list : {shapes::bundled(), shapes::practice()}) {
    for (const auto& s : list) {
      CAPTURE(s.name);
      const auto m = shapes::make(s.name);
      CHECK(m.face_count() > 3700);
      CHECK(signed_volume(m) > 0);
      validate(m);
    }
  }
  CHECK_THROWS_AS(shapes::make("unicorn"), InvalidArgument);
}

}  // TEST_SUITE

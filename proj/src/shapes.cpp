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

#include "simpeval/shapes.hpp"

#include <cmath>
#include <functional>
#include <map>

#include <Eigen/Geometry>

#include "simpeval/error.hpp"
#include "simpeval/primitives.hpp"
#include "simpeval/rng.hpp"

namespace simpeval::shapes {
namespace {

using primitives::box;
using Parts = std::vector<TriMesh>;

// Ellipsoid with a little smooth radial noise so surfaces are not trivially
// simplifiable.
TriMesh blob(int level, const Vec3& radii, const Vec3& center, std::uint64_t seed,
             double amplitude = 0.04) {
  TriMesh m = primitives::icosphere(level);
  Rng rng(seed);
  std::array<Vec3, 3> dirs;
  std::array<double, 3> phase{};
  for (int k = 0; k < 3; ++k) {
    dirs[k] = Vec3(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5).normalized() *
              (3.0 + 4.0 * rng.uniform());
    phase[k] = 6.283185307179586 * rng.uniform();
  }
  for (auto& v : m.vertices) {
    double d = 0.0;
    for (int k = 0; k < 3; ++k) d += std::sin(dirs[k].dot(v) + phase[k]);
    v = center + radii.cwiseProduct(v) * (1.0 + amplitude * d / 3.0);
  }
  return m;
}

// Capped cylinder between two points.
TriMesh limb(const Vec3& from, const Vec3& to, double radius, int segments = 16, int rings = 6) {
  const Vec3 d = to - from;
  TriMesh c = primitives::cylinder(radius, d.norm(), segments, rings);
  Eigen::Affine3d xf = Eigen::Translation3d(from) *
                       Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), d.normalized());
  return transformed(c, xf);
}

TriMesh slab(const Vec3& lo, const Vec3& hi, int n) { return box(lo, hi, n); }

// Turned shape standing on y = y0 (lathe axis rotated from z to y).
TriMesh turned(const std::vector<std::pair<double, double>>& profile, int segments,
               const Vec3& base = Vec3::Zero()) {
  Eigen::Affine3d xf = Eigen::Translation3d(base) *
                       Eigen::AngleAxisd(-M_PI / 2, Vec3::UnitX());
  return transformed(primitives::lathe(profile, segments), xf);
}

void legs4(Parts& p, double x, double z, double top, double r, int segments = 16) {
  for (double sx : {-1.0, 1.0}) {
    for (double sz : {-1.0, 1.0}) {
      p.push_back(limb(Vec3(sx * x, top, sz * z), Vec3(sx * x, 0.0, sz * z), r, segments));
    }
  }
}

TriMesh dog() {
  Parts p;
  p.push_back(blob(4, {0.9, 0.38, 0.34}, {0, 0.95, 0}, 11));
  p.push_back(blob(3, {0.3, 0.27, 0.25}, {1.0, 1.3, 0}, 12));
  p.push_back(blob(2, {0.2, 0.1, 0.11}, {1.32, 1.2, 0}, 13, 0.02));
  p.push_back(blob(1, {0.07, 0.16, 0.05}, {0.95, 1.58, 0.15}, 14, 0.0));
  p.push_back(blob(1, {0.07, 0.16, 0.05}, {0.95, 1.58, -0.15}, 15, 0.0));
  legs4(p, 0.55, 0.18, 0.8, 0.09);
  p.push_back(limb({-0.85, 1.05, 0}, {-1.3, 1.45, 0}, 0.05));
  return merge(p, "dog");
}

TriMesh horse() {
  Parts p;
  p.push_back(blob(4, {1.1, 0.42, 0.36}, {0, 1.45, 0}, 21));
  p.push_back(limb({0.9, 1.6, 0}, {1.3, 2.2, 0}, 0.18, 20, 8));
  p.push_back(blob(3, {0.42, 0.17, 0.16}, {1.5, 2.25, 0}, 22));
  p.push_back(blob(1, {0.05, 0.13, 0.04}, {1.32, 2.45, 0.09}, 23, 0.0));
  p.push_back(blob(1, {0.05, 0.13, 0.04}, {1.32, 2.45, -0.09}, 24, 0.0));
  legs4(p, 0.75, 0.2, 1.3, 0.08);
  p.push_back(limb({-1.05, 1.55, 0}, {-1.45, 0.85, 0}, 0.07));
  return merge(p, "horse");
}

TriMesh cow() {
  Parts p;
  p.push_back(blob(4, {1.15, 0.55, 0.5}, {0, 1.25, 0}, 31));
  p.push_back(blob(3, {0.36, 0.3, 0.27}, {1.3, 1.35, 0}, 32));
  p.push_back(limb({1.3, 1.6, 0.12}, {1.35, 1.85, 0.35}, 0.04, 12, 4));
  p.push_back(limb({1.3, 1.6, -0.12}, {1.35, 1.85, -0.35}, 0.04, 12, 4));
  legs4(p, 0.75, 0.3, 0.9, 0.11);
  p.push_back(blob(2, {0.25, 0.1, 0.2}, {0.2, 0.7, 0}, 33, 0.0));
  p.push_back(limb({-1.1, 1.5, 0}, {-1.3, 0.7, 0}, 0.04));
  return merge(p, "cow");
}

TriMesh pig() {
  Parts p;
  p.push_back(blob(4, {0.9, 0.55, 0.55}, {0, 0.85, 0}, 41));
  p.push_back(blob(3, {0.35, 0.36, 0.36}, {0.9, 0.95, 0}, 42));
  p.push_back(limb({1.15, 0.9, 0}, {1.35, 0.88, 0}, 0.13, 20, 4));
  p.push_back(blob(1, {0.1, 0.12, 0.05}, {0.95, 1.3, 0.18}, 43, 0.0));
  p.push_back(blob(1, {0.1, 0.12, 0.05}, {0.95, 1.3, -0.18}, 44, 0.0));
  legs4(p, 0.5, 0.28, 0.5, 0.1);
  p.push_back(primitives::torus(0.08, 0.025, 24, 8));
  auto& tail = p.back();
  tail = transformed(tail, Eigen::Affine3d(Eigen::Translation3d(-0.95, 1.0, 0)));
  return merge(p, "pig");
}

TriMesh cat() {
  Parts p;
  p.push_back(blob(4, {0.7, 0.26, 0.24}, {0, 0.7, 0}, 51));
  p.push_back(blob(3, {0.24, 0.22, 0.22}, {0.8, 0.95, 0}, 52));
  for (double s : {-1.0, 1.0}) {
    Eigen::Affine3d xf = Eigen::Translation3d(0.78, 1.1, s * 0.13) * Eigen::Scaling(0.14);
    p.push_back(transformed(primitives::tetrahedron(), xf));
  }
  legs4(p, 0.45, 0.14, 0.6, 0.06);
  p.push_back(limb({-0.65, 0.8, 0}, {-1.0, 1.3, 0.1}, 0.045, 12, 10));
  p.push_back(limb({-1.0, 1.3, 0.1}, {-0.95, 1.6, 0.15}, 0.045, 12, 6));
  return merge(p, "cat");
}

TriMesh bird() {
  Parts p;
  p.push_back(blob(4, {0.5, 0.36, 0.34}, {0, 0.85, 0}, 61));
  p.push_back(blob(3, {0.22, 0.2, 0.2}, {0.45, 1.25, 0}, 62));
  p.push_back(limb({0.62, 1.25, 0}, {0.85, 1.2, 0}, 0.05, 12, 3));
  for (double s : {-1.0, 1.0}) {
    p.push_back(blob(3, {0.5, 0.05, 0.22}, {-0.1, 0.95, s * 0.42}, 63 + int(s > 0), 0.1));
    p.push_back(limb({0.05, 0.55, s * 0.12}, {0.05, 0.0, s * 0.12}, 0.03, 12, 6));
  }
  p.push_back(blob(2, {0.35, 0.04, 0.16}, {-0.6, 0.85, 0}, 65, 0.0));
  return merge(p, "bird");
}

TriMesh chair() {
  Parts p;
  p.push_back(slab({-0.5, 0.9, -0.5}, {0.5, 1.0, 0.5}, 12));
  p.push_back(slab({-0.5, 1.0, -0.5}, {-0.4, 2.0, 0.5}, 12));
  for (double x : {-0.45, 0.45}) {
    for (double z : {-0.45, 0.45}) {
      p.push_back(slab({x - 0.05, 0.0, z - 0.05}, {x + 0.05, 0.9, z + 0.05}, 6));
    }
  }
  return merge(p, "chair");
}

TriMesh table() {
  Parts p;
  p.push_back(slab({-1.0, 1.4, -0.6}, {1.0, 1.5, 0.6}, 16));
  for (double x : {-0.9, 0.9}) {
    for (double z : {-0.5, 0.5}) {
      p.push_back(limb({x, 0.0, z}, {x, 1.4, z}, 0.06, 20, 12));
    }
  }
  p.push_back(slab({-0.9, 0.4, -0.03}, {0.9, 0.48, 0.03}, 8));
  return merge(p, "table");
}

TriMesh mug() {
  Parts p;
  std::vector<std::pair<double, double>> prof = {{0, 0}};
  for (int i = 0; i <= 24; ++i) prof.push_back({0.5 + 0.04 * std::sin(i * 0.26), 0.05 * i});
  prof.push_back({0, 1.2});
  p.push_back(turned(prof, 64));
  auto handle = primitives::torus(0.3, 0.06, 48, 16);
  p.push_back(transformed(handle, Eigen::Affine3d(Eigen::Translation3d(0.62, 0.6, 0))));
  return merge(p, "mug");
}

TriMesh lamp() {
  Parts p;
  p.push_back(turned({{0, 0}, {0.5, 0}, {0.5, 0.08}, {0.3, 0.14}, {0, 0.16}}, 64));
  p.push_back(limb({0, 0.1, 0}, {0, 1.6, 0}, 0.04, 20, 16));
  std::vector<std::pair<double, double>> shade = {{0, 1.3}};
  for (int i = 0; i <= 20; ++i) shade.push_back({0.55 - 0.3 * i / 20.0, 1.3 + 0.03 * i});
  shade.push_back({0, 1.9});
  p.push_back(turned(shade, 64));
  return merge(p, "lamp");
}

TriMesh bottle() {
  std::vector<std::pair<double, double>> prof = {{0, 0}};
  for (int i = 0; i <= 60; ++i) {
    const double z = 2.0 * i / 60.0;
    double r = 0.4;
    if (z > 1.1) r = 0.4 - 0.28 * std::sin(std::min(1.0, (z - 1.1) / 0.5) * M_PI / 2);
    if (z > 1.9) r = 0.14;
    prof.push_back({r, z});
  }
  prof.push_back({0, 2.0});
  return turned(prof, 40);
}

TriMesh hammer() {
  Parts p;
  p.push_back(limb({0, 0, 0}, {0, 1.8, 0}, 0.07, 24, 30));
  p.push_back(slab({-0.45, 1.7, -0.1}, {0.45, 1.95, 0.1}, 14));
  p.push_back(limb({0.45, 1.825, 0}, {0.55, 1.825, 0}, 0.1, 24, 2));
  return merge(p, "hammer");
}

TriMesh duck() {
  Parts p;
  p.push_back(blob(4, {0.6, 0.32, 0.36}, {0, 0.4, 0}, 71));
  p.push_back(blob(3, {0.2, 0.2, 0.2}, {0.45, 0.85, 0}, 72));
  p.push_back(blob(2, {0.16, 0.04, 0.09}, {0.7, 0.82, 0}, 73, 0.0));
  return merge(p, "duck");
}

TriMesh vase() {
  std::vector<std::pair<double, double>> prof = {{0, 0}};
  for (int i = 0; i <= 50; ++i) {
    const double z = 1.5 * i / 50.0;
    prof.push_back({0.3 + 0.18 * std::sin(z * 3.0), z});
  }
  prof.push_back({0, 1.5});
  return turned(prof, 48);
}

const std::map<std::string_view, std::function<TriMesh()>>& registry() {
  static const std::map<std::string_view, std::function<TriMesh()>> r = {
      {"dog", dog},     {"horse", horse}, {"cow", cow},       {"pig", pig},
      {"cat", cat},     {"bird", bird},   {"chair", chair},   {"table", table},
      {"mug", mug},     {"lamp", lamp},   {"bottle", bottle}, {"hammer", hammer},
      {"duck", duck},   {"vase", vase}};
  return r;
}

}  // namespace

const std::vector<ShapeInfo>& bundled() {
  static const std::vector<ShapeInfo> v = {
      {"dog", ObjectType::kAnimal},      {"horse", ObjectType::kAnimal},
      {"cow", ObjectType::kAnimal},      {"pig", ObjectType::kAnimal},
      {"cat", ObjectType::kAnimal},      {"bird", ObjectType::kAnimal},
      {"chair", ObjectType::kArtifact},  {"table", ObjectType::kArtifact},
      {"mug", ObjectType::kArtifact},    {"lamp", ObjectType::kArtifact},
      {"bottle", ObjectType::kArtifact}, {"hammer", ObjectType::kArtifact}};
  return v;
}

const std::vector<ShapeInfo>& practice() {
  static const std::vector<ShapeInfo> v = {{"duck", ObjectType::kAnimal},
                                           {"vase", ObjectType::kArtifact}};
  return v;
}

TriMesh make(std::string_view name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw InvalidArgument("unknown shape '" + std::string(name) + "'");
  TriMesh m = it->second();
  m.label = std::string(name);
  return m;
}

}  // namespace simpeval::shapes

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

#include "simpeval/primitives.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "simpeval/error.hpp"

namespace simpeval::primitives {
namespace {

using std::uint32_t;

void add_quad(TriMesh& m, uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
  m.faces.push_back({a, b, c});
  m.faces.push_back({a, c, d});
}

// One box side: origin corner plus two edge vectors whose cross product
// points outward.
void add_patch(TriMesh& m, const Vec3& origin, const Vec3& du, const Vec3& dv,
               int n) {
  const auto base = static_cast<uint32_t>(m.vertices.size());
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      m.vertices.push_back(origin + du * (double(i) / n) + dv * (double(j) / n));
    }
  }
  const auto row = static_cast<uint32_t>(n + 1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const uint32_t a = base + j * row + i;
      add_quad(m, a, a + 1, a + 1 + row, a + row);
    }
  }
}

// Weld coincident vertices (exact equality) produced by patch seams.
TriMesh weld(const TriMesh& in) {
  std::map<std::array<double, 3>, uint32_t> index;
  std::vector<uint32_t> remap(in.vertices.size());
  TriMesh out;
  out.label = in.label;
  for (std::size_t i = 0; i < in.vertices.size(); ++i) {
    const auto& v = in.vertices[i];
    auto [it, fresh] = index.try_emplace({v.x(), v.y(), v.z()},
                                         static_cast<uint32_t>(out.vertices.size()));
    if (fresh) out.vertices.push_back(v);
    remap[i] = it->second;
  }
  out.faces.reserve(in.faces.size());
  for (const auto& f : in.faces) out.faces.push_back({remap[f[0]], remap[f[1]], remap[f[2]]});
  return out;
}

}  // namespace

TriMesh box(const Vec3& lo, const Vec3& hi, int n) {
  if (n < 1) throw InvalidArgument("box: subdivision must be >= 1");
  const Vec3 dx(hi.x() - lo.x(), 0, 0), dy(0, hi.y() - lo.y(), 0),
      dz(0, 0, hi.z() - lo.z());
  TriMesh m;
  add_patch(m, lo, dy, dx, n);                 // z = lo (normal -z)
  add_patch(m, lo + dz, dx, dy, n);            // z = hi
  add_patch(m, lo, dx, dz, n);                 // y = lo
  add_patch(m, lo + dy, dz, dx, n);            // y = hi
  add_patch(m, lo, dz, dy, n);                 // x = lo
  add_patch(m, lo + dx, dy, dz, n);            // x = hi
  auto out = weld(m);
  out.label = "box";
  return out;
}

TriMesh unit_cube() {
  auto m = box(Vec3::Zero(), Vec3::Ones(), 1);
  m.label = "cube";
  return m;
}

TriMesh centered_cube(double side) {
  const double h = side / 2;
  auto m = box(Vec3(-h, -h, -h), Vec3(h, h, h), 1);
  m.label = "cube";
  return m;
}

TriMesh tetrahedron() {
  TriMesh m;
  m.label = "tetrahedron";
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  m.faces = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  return m;
}

TriMesh icosphere(int level, double radius) {
  if (level < 0) throw InvalidArgument("icosphere: level must be >= 0");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriMesh m;
  m.label = "icosphere";
  m.vertices = {Vec3(-1, t, 0),  Vec3(1, t, 0),  Vec3(-1, -t, 0), Vec3(1, -t, 0),
                Vec3(0, -1, t),  Vec3(0, 1, t),  Vec3(0, -1, -t), Vec3(0, 1, -t),
                Vec3(t, 0, -1),  Vec3(t, 0, 1),  Vec3(-t, 0, -1), Vec3(-t, 0, 1)};
  for (auto& v : m.vertices) v.normalize();
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> mid;
    auto midpoint = [&](uint32_t a, uint32_t b) {
      auto key = std::minmax(a, b);
      auto [it, fresh] = mid.try_emplace({key.first, key.second}, 0u);
      if (fresh) {
        it->second = static_cast<uint32_t>(m.vertices.size());
        m.vertices.push_back((m.vertices[a] + m.vertices[b]).normalized());
      }
      return it->second;
    };
    std::vector<Face> next;
    next.reserve(m.faces.size() * 4);
    for (const auto& f : m.faces) {
      const auto a = midpoint(f[0], f[1]);
      const auto b = midpoint(f[1], f[2]);
      const auto c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    m.faces = std::move(next);
  }
  for (auto& v : m.vertices) v *= radius;
  return m;
}

TriMesh grid_plane(int n) {
  if (n < 1) throw InvalidArgument("grid_plane: n must be >= 1");
  TriMesh m;
  add_patch(m, Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), n);
  m.label = "grid";
  return m;
}

TriMesh cylinder(double radius, double height, int segments, int rings) {
  if (segments < 3 || rings < 1) throw InvalidArgument("cylinder: too few segments");
  TriMesh m;
  m.label = "cylinder";
  for (int r = 0; r <= rings; ++r) {
    const double z = height * r / rings;
    for (int s = 0; s < segments; ++s) {
      const double a = 2.0 * std::numbers::pi * s / segments;
      m.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), z);
    }
  }
  const auto seg = static_cast<uint32_t>(segments);
  for (int r = 0; r < rings; ++r) {
    for (uint32_t s = 0; s < seg; ++s) {
      const uint32_t a = r * seg + s, b = r * seg + (s + 1) % seg;
      add_quad(m, a, b, b + seg, a + seg);
    }
  }
  const auto bottom = static_cast<uint32_t>(m.vertices.size());
  m.vertices.emplace_back(0, 0, 0);
  const auto top = bottom + 1;
  m.vertices.emplace_back(0, 0, height);
  const auto top_ring = static_cast<uint32_t>(rings) * seg;
  for (uint32_t s = 0; s < seg; ++s) {
    m.faces.push_back({bottom, (s + 1) % seg, s});
    m.faces.push_back({top, top_ring + s, top_ring + (s + 1) % seg});
  }
  return m;
}

TriMesh lathe(const std::vector<std::pair<double, double>>& profile, int segments) {
  if (segments < 3 || profile.size() < 3) throw InvalidArgument("lathe: too few points");
  if (profile.front().first != 0.0 || profile.back().first != 0.0) {
    throw InvalidArgument("lathe: profile must start and end on the axis");
  }
  TriMesh m;
  m.label = "lathe";
  const auto seg = static_cast<uint32_t>(segments);
  const auto rings = static_cast<uint32_t>(profile.size() - 2);
  for (uint32_t r = 0; r < rings; ++r) {
    const auto [rad, z] = profile[r + 1];
    for (uint32_t s = 0; s < seg; ++s) {
      const double a = 2.0 * std::numbers::pi * s / segments;
      m.vertices.emplace_back(rad * std::cos(a), rad * std::sin(a), z);
    }
  }
  for (uint32_t r = 0; r + 1 < rings; ++r) {
    for (uint32_t s = 0; s < seg; ++s) {
      const uint32_t a = r * seg + s, b = r * seg + (s + 1) % seg;
      add_quad(m, a, b, b + seg, a + seg);
    }
  }
  const auto bottom = static_cast<uint32_t>(m.vertices.size());
  m.vertices.emplace_back(0, 0, profile.front().second);
  const auto top = bottom + 1;
  m.vertices.emplace_back(0, 0, profile.back().second);
  const auto top_ring = (rings - 1) * seg;
  for (uint32_t s = 0; s < seg; ++s) {
    m.faces.push_back({bottom, (s + 1) % seg, s});
    m.faces.push_back({top, top_ring + s, top_ring + (s + 1) % seg});
  }
  return m;
}

TriMesh torus(double major, double minor, int major_segments, int minor_segments) {
  if (major_segments < 3 || minor_segments < 3) throw InvalidArgument("torus: too few segments");
  TriMesh m;
  m.label = "torus";
  for (int i = 0; i < major_segments; ++i) {
    const double u = 2.0 * std::numbers::pi * i / major_segments;
    for (int j = 0; j < minor_segments; ++j) {
      const double v = 2.0 * std::numbers::pi * j / minor_segments;
      const double r = major + minor * std::cos(v);
      m.vertices.emplace_back(r * std::cos(u), r * std::sin(u), minor * std::sin(v));
    }
  }
  const auto nu = static_cast<uint32_t>(major_segments);
  const auto nv = static_cast<uint32_t>(minor_segments);
  for (uint32_t i = 0; i < nu; ++i) {
    for (uint32_t j = 0; j < nv; ++j) {
      const uint32_t a = i * nv + j, b = ((i + 1) % nu) * nv + j;
      const uint32_t c = ((i + 1) % nu) * nv + (j + 1) % nv, d = i * nv + (j + 1) % nv;
      add_quad(m, a, b, c, d);
    }
  }
  return m;
}

}  // namespace simpeval::primitives

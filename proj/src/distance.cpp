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

#include "simpeval/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simpeval/error.hpp"

namespace simpeval {
namespace {

constexpr std::uint32_t kLeafSize = 4;

Vec3 closest_on_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (!(len2 > 0.0)) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

double box_squared_distance(const Aabb& box, const Vec3& p) {
  double d2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = std::max({box.min[k] - p[k], 0.0, p[k] - box.max[k]});
    d2 += d * d;
  }
  return d2;
}

}  // namespace

// Region classification after Ericson, "Real-Time Collision Detection" 5.1.5.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a;
  if (!(ab.cross(ac).squaredNorm() > 0.0)) {
    const Vec3 cand[3] = {closest_on_segment(p, a, b), closest_on_segment(p, b, c),
                          closest_on_segment(p, c, a)};
    const Vec3* best = &cand[0];
    for (const auto& q : cand) {
      if ((q - p).squaredNorm() < (*best - p).squaredNorm()) best = &q;
    }
    return *best;
  }
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

TriangleIndex::TriangleIndex(const TriMesh& mesh) {
  tris_.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    tris_.push_back({mesh.vertices.at(f[0]), mesh.vertices.at(f[1]), mesh.vertices.at(f[2])});
  }
  if (tris_.empty()) return;
  std::vector<Vec3> centroids(tris_.size());
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    centroids[i] = (tris_[i].a + tris_[i].b + tris_[i].c) / 3.0;
  }
  nodes_.reserve(2 * tris_.size() / kLeafSize + 1);
  build(0, static_cast<std::uint32_t>(tris_.size()), centroids);
}

std::uint32_t TriangleIndex::build(std::uint32_t first, std::uint32_t count,
                                   std::vector<Vec3>& centroids) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Aabb box{tris_[first].a, tris_[first].a};
  Aabb cbox{centroids[first], centroids[first]};
  for (std::uint32_t i = first; i < first + count; ++i) {
    for (const Vec3* v : {&tris_[i].a, &tris_[i].b, &tris_[i].c}) {
      box.min = box.min.cwiseMin(*v);
      box.max = box.max.cwiseMax(*v);
    }
    cbox.min = cbox.min.cwiseMin(centroids[i]);
    cbox.max = cbox.max.cwiseMax(centroids[i]);
  }
  nodes_[id].box = box;
  if (count <= kLeafSize) {
    nodes_[id].first = first;
    nodes_[id].count = count;
    return id;
  }
  int axis = 0;
  cbox.extent().maxCoeff(&axis);
  const std::uint32_t half = count / 2;
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), first);
  std::nth_element(order.begin(), order.begin() + half, order.end(),
                   [&](std::uint32_t x, std::uint32_t y) {
                     if (centroids[x][axis] != centroids[y][axis]) {
                       return centroids[x][axis] < centroids[y][axis];
                     }
                     return x < y;
                   });
  std::vector<Tri> tris(count);
  std::vector<Vec3> cents(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    tris[i] = tris_[order[i]];
    cents[i] = centroids[order[i]];
  }
  std::copy(tris.begin(), tris.end(), tris_.begin() + first);
  std::copy(cents.begin(), cents.end(), centroids.begin() + first);

  const auto left = build(first, half, centroids);
  const auto right = build(first + half, count - half, centroids);
  nodes_[id].first = left;
  nodes_[id].right = right;
  nodes_[id].count = 0;
  return id;
}

double TriangleIndex::squared_distance(const Vec3& p) const {
  if (nodes_.empty()) throw InvalidArgument("distance query on an empty mesh");
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (box_squared_distance(node.box, p) > best) continue;
    if (node.count > 0) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const Tri& t = tris_[i];
        best = std::min(best, (closest_point_on_triangle(p, t.a, t.b, t.c) - p).squaredNorm());
      }
      continue;
    }
    const double dl = box_squared_distance(nodes_[node.first].box, p);
    const double dr = box_squared_distance(nodes_[node.right].box, p);
    // Push the farther child first so the nearer one is searched first.
    if (dl <= dr) {
      stack[top++] = node.right;
      stack[top++] = node.first;
    } else {
      stack[top++] = node.first;
      stack[top++] = node.right;
    }
  }
  return best;
}

double TriangleIndex::distance(const Vec3& p) const { return std::sqrt(squared_distance(p)); }

double point_to_mesh_distance(const Vec3& p, const TriMesh& mesh) {
  if (mesh.faces.empty()) throw InvalidArgument("point_to_mesh_distance: empty mesh");
  return TriangleIndex(mesh).distance(p);
}

}  // namespace simpeval

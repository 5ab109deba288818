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

#include "simpeval/geom_fidelity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "simpeval/distance.hpp"
#include "simpeval/error.hpp"
#include "simpeval/rng.hpp"

namespace simpeval {
namespace {

using Corner = std::array<double, 3>;
using TriKey = std::array<Corner, 3>;

Corner corner(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

TriKey tri_key(const Vec3& a, const Vec3& b, const Vec3& c) {
  TriKey k{corner(a), corner(b), corner(c)};
  std::sort(k.begin(), k.end());
  return k;
}

// Triangles and vertices present bit-identically in a mesh. A point sampled
// on a shared triangle lies on the other surface, so its distance is exactly
// zero; evaluating it through the closest-point formula would leave rounding
// residue.
struct SharedGeometry {
  std::set<TriKey> triangles;
  std::set<Corner> vertices;

  explicit SharedGeometry(const TriMesh& m) {
    for (const auto& f : m.faces) {
      triangles.insert(tri_key(m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]));
    }
    for (const auto& v : m.vertices) vertices.insert(corner(v));
  }
};

}  // namespace

std::size_t SurfaceSampler::count_for(const TriMesh& pivot) const {
  if (samples_target > 0) return samples_target;
  return std::max<std::size_t>(100000, 50 * pivot.face_count());
}

std::vector<Vec3> SurfaceSampler::sample(const TriMesh& mesh,
                                         std::vector<std::uint32_t>* faces) const {
  std::vector<double> cumulative;
  std::vector<std::uint32_t> face_ids;
  double total = 0.0;
  for (std::uint32_t fi = 0; fi < mesh.faces.size(); ++fi) {
    const auto& f = mesh.faces[fi];
    const double a = triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
    if (!(a > 0.0)) continue;
    total += a;
    cumulative.push_back(total);
    face_ids.push_back(fi);
  }
  if (cumulative.empty()) throw InvalidArgument("cannot sample a surface with zero area");

  const auto n = count_for(mesh);
  std::vector<Vec3> pts;
  pts.reserve(n);
  if (faces) {
    faces->clear();
    faces->reserve(n);
  }
  Rng rng(mix_seed(seed));
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    if (it == cumulative.end()) --it;
    const auto fi = face_ids[static_cast<std::size_t>(it - cumulative.begin())];
    const auto& f = mesh.faces[fi];
    const double r1 = std::sqrt(rng.uniform());
    const double r2 = rng.uniform();
    pts.push_back((1.0 - r1) * mesh.vertices[f[0]] + r1 * (1.0 - r2) * mesh.vertices[f[1]] +
                  r1 * r2 * mesh.vertices[f[2]]);
    if (faces) faces->push_back(fi);
  }
  return pts;
}

DistanceSummary one_sided_distances(const TriMesh& pivot, const TriMesh& other,
                                    const SurfaceSampler& sampler) {
  if (pivot.faces.empty() || other.faces.empty()) {
    throw InvalidArgument("one_sided_distances: both meshes need faces");
  }
  const TriangleIndex index(other);
  const SharedGeometry shared(other);

  std::vector<std::uint32_t> src;
  const auto pts = sampler.sample(pivot, &src);
  // Per-face flag: the sampled triangle also exists in `other`.
  std::vector<signed char> face_shared(pivot.faces.size(), -1);

  DistanceSummary out;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto& flag = face_shared[src[i]];
    if (flag < 0) {
      const auto& f = pivot.faces[src[i]];
      flag = shared.triangles.count(
          tri_key(pivot.vertices[f[0]], pivot.vertices[f[1]], pivot.vertices[f[2]]));
    }
    const double d = flag ? 0.0 : index.distance(pts[i]);
    sum += d;
    sum_sq += d * d;
    out.max = std::max(out.max, d);
  }
  const double n = double(pts.size());
  out.samples = pts.size();
  out.mean = sum / n;
  out.mean_sq = sum_sq / n;
  const double var = pts.size() > 1 ? std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1)) : 0.0;
  out.std_error = std::sqrt(var / n);

  // Vertices frequently realize the maximum; include them as candidates.
  for (const auto& v : pivot.vertices) {
    if (shared.vertices.count(corner(v))) continue;
    out.max = std::max(out.max, index.distance(v));
  }
  return out;
}

DistanceSummary normalized(const DistanceSummary& d, double diagonal) {
  if (!(diagonal > 0.0)) throw InvalidArgument("normalizing by a degenerate diagonal");
  DistanceSummary out = d;
  out.mean /= diagonal;
  out.mean_sq /= diagonal * diagonal;
  out.max /= diagonal;
  out.std_error /= diagonal;
  out.normalized = true;
  out.normalizer = diagonal;
  return out;
}

MetroMeasures metro_measures(const TriMesh& s, const TriMesh& approx,
                             const SurfaceSampler& sampler, const MetroOptions& options) {
  MetroMeasures m;
  m.forward = one_sided_distances(s, approx, sampler);
  SurfaceSampler reverse = sampler;
  reverse.seed = mix_seed(sampler.seed, 1);
  // The reverse pass samples as densely as the forward one.
  reverse.samples_target = sampler.count_for(s);
  m.backward = one_sided_distances(approx, s, reverse);

  const double diag = bounding_box(s).diagonal();
  const auto fwd = normalized(m.forward, diag);
  const auto bwd = normalized(m.backward, diag);
  if (options.symmetrize) {
    m.metro_mn = 0.5 * (fwd.mean + bwd.mean);
    m.metro_mse = 0.5 * (fwd.mean_sq + bwd.mean_sq);
  } else {
    m.metro_mn = fwd.mean;
    m.metro_mse = fwd.mean_sq;
  }
  m.metro_max = std::max(fwd.max, bwd.max);
  m.metro_vol = std::abs(std::abs(signed_volume(s)) - std::abs(signed_volume(approx)));
  m.volume_approximate = !is_closed(s) || !is_closed(approx);
  return m;
}

}  // namespace simpeval

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

#ifndef SIMPEVAL_GEOM_FIDELITY_HPP_
#define SIMPEVAL_GEOM_FIDELITY_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "simpeval/mesh.hpp"

namespace simpeval {

// Area-weighted uniform sampling of a surface with barycentric coordinates.
struct SurfaceSampler {
  // 0 selects max(100000, 50 * faces(pivot)).
  std::size_t samples_target = 0;
  std::uint64_t seed = 1;

  std::size_t count_for(const TriMesh& pivot) const;
  // Points on non-degenerate faces of `mesh`. Also reports the source face of
  // each point when `faces` is non-null.
  std::vector<Vec3> sample(const TriMesh& mesh,
                           std::vector<std::uint32_t>* faces = nullptr) const;
};

// Summary of sampled pivot-to-surface distances. `mean` and `mean_sq`
// estimate (1/area) * integral of d and d^2 over the pivot surface.
struct DistanceSummary {
  double mean = 0.0;
  double mean_sq = 0.0;
  double max = 0.0;
  std::size_t samples = 0;
  double std_error = 0.0;  // of `mean`
  bool normalized = false;
  double normalizer = 1.0;  // pivot bbox diagonal when normalized
};

DistanceSummary one_sided_distances(const TriMesh& pivot, const TriMesh& other,
                                    const SurfaceSampler& sampler);

// Divide distances by `diagonal` (mean_sq by its square).
DistanceSummary normalized(const DistanceSummary& d, double diagonal);

struct MetroOptions {
  // Average the mean and mean-squared summaries over both directions instead
  // of using the standard as the only pivot.
  bool symmetrize = false;
};

struct MetroMeasures {
  double metro_mn = 0.0;
  double metro_mse = 0.0;
  double metro_max = 0.0;
  double metro_vol = 0.0;
  // Volume difference is only meaningful for closed meshes.
  bool volume_approximate = false;
  DistanceSummary forward;   // s -> approx, unnormalized
  DistanceSummary backward;  // approx -> s, unnormalized
};

// Distances use s as the pivot and are normalized by diagonal(bbox(s));
// metro_max is the two-sided (Hausdorff) maximum; metro_vol is
// | |V(s)| - |V(approx)| | in model units.
MetroMeasures metro_measures(const TriMesh& s, const TriMesh& approx,
                             const SurfaceSampler& sampler,
                             const MetroOptions& options = {});

}  // namespace simpeval

#endif  // SIMPEVAL_GEOM_FIDELITY_HPP_

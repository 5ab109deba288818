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

#ifndef SIMPEVAL_SIMPLIFY_HPP_
#define SIMPEVAL_SIMPLIFY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "simpeval/corpus.hpp"
#include "simpeval/mesh.hpp"

namespace simpeval {

enum class Algorithm { kQem, kVclust };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct SimplifySpec {
  Algorithm algorithm = Algorithm::kQem;
  std::size_t target_faces = 1;
  // Accepted for interface stability. Ties are fully ordered by
  // (cost, lower vertex index, higher vertex index), so results do not
  // depend on it.
  std::uint64_t seed = 0;
};

struct SimplifyResult {
  TriMesh mesh;
  std::size_t achieved_faces = 0;
  // Set when the requested target could not be met; `warning` says why.
  bool target_missed = false;
  std::string warning;
  // Vertex clustering only: the grid resolution that produced `mesh`.
  int cells_per_axis = 0;
};

using Quadric = Eigen::Matrix4d;

// Edge-collapse simplifier driven by accumulated quadric error.
//
// Candidates are mesh edges only. Boundary edges carry an extra constraint
// plane through the edge, perpendicular to its face, weighted by 1000x the
// mean face area. The contraction target minimizes the summed quadric; when
// the 3x3 system is near singular the best of {midpoint, endpoints} is used.
// Collapses that would flip a face normal, create a zero-area face, break the
// link condition or duplicate a face are rejected.
class QemSimplifier {
 public:
  struct Collapse {
    std::uint32_t kept = 0;
    std::uint32_t removed = 0;
    double cost = 0.0;
  };

  struct Candidate {
    double cost = 0.0;
    std::uint32_t a = 0;  // a < b
    std::uint32_t b = 0;
    Vec3 target = Vec3::Zero();
  };

  explicit QemSimplifier(const TriMesh& mesh);

  // Perform the cheapest valid collapse. Returns nullopt when none is left.
  std::optional<Collapse> step();

  std::size_t face_count() const { return live_faces_; }

  // Result mesh: live faces only, surviving vertices in original order.
  TriMesh mesh() const;

  // Brute-force scan of every live edge, for auditing the queue. Only edges
  // that currently pass the topology and fold-over checks are returned.
  std::vector<Candidate> valid_candidates() const;

  const Quadric& quadric(std::uint32_t v) const { return quadrics_[v]; }

 private:
  struct Entry {
    Candidate cand;
    std::uint32_t stamp_a = 0;
    std::uint32_t stamp_b = 0;
  };
  struct EntryAfter {
    bool operator()(const Entry& x, const Entry& y) const;
  };

  Candidate evaluate(std::uint32_t a, std::uint32_t b) const;
  bool collapse_is_valid(std::uint32_t a, std::uint32_t b, const Vec3& target) const;
  std::vector<std::uint32_t> neighbors(std::uint32_t v) const;
  void push_edge(std::uint32_t a, std::uint32_t b);
  void apply(const Candidate& c);

  std::string label_;
  std::vector<Vec3> pos_;
  std::vector<Quadric> quadrics_;
  std::vector<Face> faces_;
  std::vector<char> face_alive_;
  std::vector<std::vector<std::uint32_t>> vertex_faces_;
  std::vector<char> vertex_alive_;
  std::vector<std::uint32_t> stamp_;
  std::vector<char> boundary_vertex_;
  std::size_t live_faces_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, EntryAfter> heap_;
};

// Requires target_faces <= faces(mesh). Stops at the first state with at most
// target_faces faces; if no valid collapse remains first, returns the best
// achieved mesh with target_missed set.
SimplifyResult qem_simplify(const TriMesh& mesh, const SimplifySpec& spec);

// Uniform grid of cells_per_axis^3 cells over the bounding box, anchored at
// its min corner. Each occupied cell is represented by the centroid of its
// vertices; faces with fewer than three distinct representatives are dropped
// and duplicate faces (same vertex set) are kept once.
TriMesh vertex_cluster(const TriMesh& mesh, int cells_per_axis);

// Searches cells_per_axis in [1, 1024] for the result whose face count is
// closest to target_faces without exceeding 1.02 * target_faces.
SimplifyResult vclust_to_target(const TriMesh& mesh, std::size_t target_faces);

// Dispatch on spec.algorithm.
SimplifyResult simplify(const TriMesh& mesh, const SimplifySpec& spec);

// QEM reduction to the common face budget. Requires faces(mesh) >= budget.
SimplifyResult standardize(const TriMesh& mesh, std::size_t budget,
                           std::uint64_t seed = 0);

// The five versions of one object: the standard and both algorithms at two
// simplification levels (percent of the standard's faces removed).
struct ModelFamily {
  std::string name;
  ObjectType object_type = ObjectType::kAnimal;
  std::array<int, 2> levels = {50, 80};
  TriMesh s, q5, q8, v5, v8;
  // Per version warnings, empty when every target was met.
  std::vector<std::string> warnings;

  const TriMesh& version(std::string_view tag) const;  // "s", "q5", ...
};

inline constexpr std::array<std::string_view, 5> kVersionTags = {"s", "q5", "q8",
                                                                 "v5", "v8"};

std::size_t level_target(std::size_t standard_faces, int level_percent);

ModelFamily build_family(const TriMesh& mesh, std::size_t budget,
                         std::string name, ObjectType type,
                         std::array<int, 2> levels = {50, 80},
                         std::uint64_t seed = 0);

}  // namespace simpeval

#endif  // SIMPEVAL_SIMPLIFY_HPP_

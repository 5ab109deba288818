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

#include "simpeval/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

#include <Eigen/Eigenvalues>

#include "simpeval/error.hpp"

namespace simpeval {
namespace {

using std::uint32_t;

constexpr double kBoundaryWeight = 1000.0;
// Smallest/largest eigenvalue ratio below which the quadric is treated as
// singular and the target is chosen among midpoint and endpoints.
constexpr double kSingularRatio = 1e-6;
// Minimum cosine between a face normal before and after a collapse.
constexpr double kMinNormalCos = 1e-3;

Quadric plane_quadric(const Vec3& n, double d, double weight) {
  Eigen::Vector4d p(n.x(), n.y(), n.z(), d);
  return weight * (p * p.transpose());
}

double quadric_error(const Quadric& q, const Vec3& x) {
  Eigen::Vector4d h(x.x(), x.y(), x.z(), 1.0);
  return std::max(0.0, h.dot(q * h));
}

bool has_repeated_index(const Face& f) {
  return f[0] == f[1] || f[1] == f[2] || f[0] == f[2];
}

uint64_t edge_key(uint32_t a, uint32_t b) {
  if (a > b) std::swap(a, b);
  return (uint64_t(a) << 32) | b;
}

}  // namespace

std::string_view to_string(Algorithm a) {
  return a == Algorithm::kQem ? "qem" : "vclust";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "qem" || s == "qslim" || s == "QEM" || s == "QSLIM") return Algorithm::kQem;
  if (s == "vclust" || s == "VCLUST" || s == "cluster") return Algorithm::kVclust;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// QemSimplifier

bool QemSimplifier::EntryAfter::operator()(const Entry& x, const Entry& y) const {
  // priority_queue pops the "largest"; order so the smallest key is on top.
  if (x.cand.cost != y.cand.cost) return x.cand.cost > y.cand.cost;
  if (x.cand.a != y.cand.a) return x.cand.a > y.cand.a;
  return x.cand.b > y.cand.b;
}

QemSimplifier::QemSimplifier(const TriMesh& mesh)
    : label_(mesh.label),
      pos_(mesh.vertices),
      quadrics_(mesh.vertices.size(), Quadric::Zero()),
      vertex_faces_(mesh.vertices.size()),
      vertex_alive_(mesh.vertices.size(), 1),
      stamp_(mesh.vertices.size(), 0),
      boundary_vertex_(mesh.vertices.size(), 0) {
  validate(mesh);
  for (const auto& f : mesh.faces) {
    if (!has_repeated_index(f)) faces_.push_back(f);
  }
  face_alive_.assign(faces_.size(), 1);
  live_faces_ = faces_.size();

  double total_area = 0.0;
  for (uint32_t fi = 0; fi < faces_.size(); ++fi) {
    const auto& f = faces_[fi];
    for (auto v : f) vertex_faces_[v].push_back(fi);
    const Vec3 n = (pos_[f[1]] - pos_[f[0]]).cross(pos_[f[2]] - pos_[f[0]]);
    const double len = n.norm();
    total_area += 0.5 * len;
    if (!(len > 0.0)) continue;
    const Vec3 unit = n / len;
    const Quadric q = plane_quadric(unit, -unit.dot(pos_[f[0]]), 0.5 * len);
    for (auto v : f) quadrics_[v] += q;
  }
  const double mean_area = faces_.empty() ? 0.0 : total_area / double(faces_.size());

  // Count face uses per undirected edge to find the boundary.
  std::unordered_map<uint64_t, std::pair<int, uint32_t>> edge_use;
  for (uint32_t fi = 0; fi < faces_.size(); ++fi) {
    const auto& f = faces_[fi];
    for (int k = 0; k < 3; ++k) {
      auto& slot = edge_use[edge_key(f[k], f[(k + 1) % 3])];
      ++slot.first;
      slot.second = fi;
    }
  }
  std::vector<uint64_t> keys;
  keys.reserve(edge_use.size());
  for (const auto& [key, use] : edge_use) keys.push_back(key);
  std::sort(keys.begin(), keys.end());

  for (auto key : keys) {
    const auto [count, fi] = edge_use[key];
    if (count != 1) continue;
    const uint32_t a = uint32_t(key >> 32), b = uint32_t(key & 0xffffffffu);
    boundary_vertex_[a] = boundary_vertex_[b] = 1;
    const auto& f = faces_[fi];
    const Vec3 fn = (pos_[f[1]] - pos_[f[0]]).cross(pos_[f[2]] - pos_[f[0]]);
    Vec3 cn = (pos_[b] - pos_[a]).cross(fn);
    const double len = cn.norm();
    if (!(len > 0.0)) continue;
    cn /= len;
    const Quadric q = plane_quadric(cn, -cn.dot(pos_[a]), kBoundaryWeight * mean_area);
    quadrics_[a] += q;
    quadrics_[b] += q;
  }

  for (auto key : keys) push_edge(uint32_t(key >> 32), uint32_t(key & 0xffffffffu));
}

QemSimplifier::Candidate QemSimplifier::evaluate(uint32_t a, uint32_t b) const {
  if (a > b) std::swap(a, b);
  const Quadric q = quadrics_[a] + quadrics_[b];
  Candidate c;
  c.a = a;
  c.b = b;

  const Eigen::Matrix3d A = q.topLeftCorner<3, 3>();
  const Vec3 rhs = -q.topRightCorner<3, 1>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig;
  eig.computeDirect(A);
  const auto& ev = eig.eigenvalues();  // ascending
  const double largest = std::abs(ev[2]);
  if (largest > 0.0 && ev[0] > kSingularRatio * largest) {
    const Vec3 x = eig.eigenvectors() *
                   (eig.eigenvectors().transpose() * rhs).cwiseQuotient(ev);
    if (x.allFinite()) {
      c.target = x;
      c.cost = quadric_error(q, x);
    } else {
      c.cost = std::numeric_limits<double>::infinity();
    }
  } else {
    c.cost = std::numeric_limits<double>::infinity();
  }
  const Vec3 options[3] = {0.5 * (pos_[a] + pos_[b]), pos_[a], pos_[b]};
  for (const auto& x : options) {
    const double e = quadric_error(q, x);
    if (e < c.cost) {
      c.cost = e;
      c.target = x;
    }
  }
  return c;
}

std::vector<uint32_t> QemSimplifier::neighbors(uint32_t v) const {
  std::vector<uint32_t> out;
  for (auto fi : vertex_faces_[v]) {
    for (auto w : faces_[fi]) {
      if (w != v) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool QemSimplifier::collapse_is_valid(uint32_t a, uint32_t b, const Vec3& target) const {
  // Link condition: shared neighbours are exactly the apexes of the faces on
  // the edge.
  std::vector<uint32_t> apex;
  for (auto fi : vertex_faces_[a]) {
    const auto& f = faces_[fi];
    if (f[0] == b || f[1] == b || f[2] == b) {
      for (auto w : f) {
        if (w != a && w != b) apex.push_back(w);
      }
    }
  }
  if (apex.empty()) return false;  // not an edge any more
  std::sort(apex.begin(), apex.end());
  const auto na = neighbors(a), nb = neighbors(b);
  std::vector<uint32_t> common;
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                        std::back_inserter(common));
  if (common != apex) return false;
  // Two boundary vertices joined by an interior edge would pinch the surface.
  if (boundary_vertex_[a] && boundary_vertex_[b] && apex.size() != 1) return false;

  // Fold-over, zero-area and duplicate checks on every face that survives.
  std::set<std::array<uint32_t, 3>> survivors;
  for (uint32_t v : {a, b}) {
    for (auto fi : vertex_faces_[v]) {
      const auto& f = faces_[fi];
      const bool has_a = f[0] == a || f[1] == a || f[2] == a;
      const bool has_b = f[0] == b || f[1] == b || f[2] == b;
      if (has_a && has_b) continue;
      Vec3 p[3];
      std::array<uint32_t, 3> key{};
      for (int k = 0; k < 3; ++k) {
        const bool moved = f[k] == a || f[k] == b;
        p[k] = moved ? target : pos_[f[k]];
        key[k] = moved ? a : f[k];
      }
      const Vec3 before = (pos_[f[1]] - pos_[f[0]]).cross(pos_[f[2]] - pos_[f[0]]);
      const Vec3 after = (p[1] - p[0]).cross(p[2] - p[0]);
      const double lb = before.norm(), la = after.norm();
      if (!(la > 0.0)) return false;
      if (lb > 0.0 && before.dot(after) < kMinNormalCos * lb * la) return false;
      std::sort(key.begin(), key.end());
      if (!survivors.insert(key).second) return false;
    }
  }
  return true;
}

void QemSimplifier::push_edge(uint32_t a, uint32_t b) {
  if (a > b) std::swap(a, b);
  heap_.push(Entry{evaluate(a, b), stamp_[a], stamp_[b]});
}

std::optional<QemSimplifier::Collapse> QemSimplifier::step() {
  while (!heap_.empty()) {
    const Entry top = heap_.top();
    heap_.pop();
    const auto a = top.cand.a, b = top.cand.b;
    if (!vertex_alive_[a] || !vertex_alive_[b]) continue;
    if (top.stamp_a != stamp_[a] || top.stamp_b != stamp_[b]) continue;
    if (!collapse_is_valid(a, b, top.cand.target)) continue;
    apply(top.cand);
    return Collapse{a, b, top.cand.cost};
  }
  return std::nullopt;
}

void QemSimplifier::apply(const Candidate& c) {
  const uint32_t a = c.a, b = c.b;
  pos_[a] = c.target;
  quadrics_[a] += quadrics_[b];
  boundary_vertex_[a] = boundary_vertex_[a] || boundary_vertex_[b];

  auto drop = [&](uint32_t v, uint32_t fi) {
    auto& list = vertex_faces_[v];
    list.erase(std::remove(list.begin(), list.end(), fi), list.end());
  };
  for (auto fi : std::vector<uint32_t>(vertex_faces_[b])) {
    auto& f = faces_[fi];
    const bool has_a = f[0] == a || f[1] == a || f[2] == a;
    if (has_a) {
      face_alive_[fi] = 0;
      --live_faces_;
      for (auto w : f) drop(w, fi);
    } else {
      for (auto& w : f) {
        if (w == b) w = a;
      }
      vertex_faces_[a].push_back(fi);
    }
  }
  vertex_faces_[b].clear();
  vertex_alive_[b] = 0;
  std::sort(vertex_faces_[a].begin(), vertex_faces_[a].end());

  // Costs changed on edges at `a`; validity may have changed on every edge
  // touching its one-ring. Re-queue them all.
  const auto ring = neighbors(a);
  ++stamp_[a];
  for (auto w : ring) ++stamp_[w];
  std::set<uint64_t> edges;
  for (auto w : ring) edges.insert(edge_key(a, w));
  for (auto w : ring) {
    for (auto x : neighbors(w)) edges.insert(edge_key(w, x));
  }
  for (auto key : edges) push_edge(uint32_t(key >> 32), uint32_t(key & 0xffffffffu));
}

std::vector<QemSimplifier::Candidate> QemSimplifier::valid_candidates() const {
  std::set<uint64_t> edges;
  for (uint32_t fi = 0; fi < faces_.size(); ++fi) {
    if (!face_alive_[fi]) continue;
    const auto& f = faces_[fi];
    for (int k = 0; k < 3; ++k) edges.insert(edge_key(f[k], f[(k + 1) % 3]));
  }
  std::vector<Candidate> out;
  for (auto key : edges) {
    const auto c = evaluate(uint32_t(key >> 32), uint32_t(key & 0xffffffffu));
    if (collapse_is_valid(c.a, c.b, c.target)) out.push_back(c);
  }
  return out;
}

TriMesh QemSimplifier::mesh() const {
  constexpr auto kUnused = static_cast<uint32_t>(-1);
  std::vector<uint32_t> remap(pos_.size(), kUnused);
  std::vector<char> used(pos_.size(), 0);
  for (uint32_t fi = 0; fi < faces_.size(); ++fi) {
    if (!face_alive_[fi]) continue;
    for (auto v : faces_[fi]) used[v] = 1;
  }
  TriMesh out;
  out.label = label_;
  for (uint32_t v = 0; v < pos_.size(); ++v) {
    if (!used[v]) continue;
    remap[v] = static_cast<uint32_t>(out.vertices.size());
    out.vertices.push_back(pos_[v]);
  }
  out.faces.reserve(live_faces_);
  for (uint32_t fi = 0; fi < faces_.size(); ++fi) {
    if (!face_alive_[fi]) continue;
    const auto& f = faces_[fi];
    out.faces.push_back({remap[f[0]], remap[f[1]], remap[f[2]]});
  }
  return out;
}

SimplifyResult qem_simplify(const TriMesh& mesh, const SimplifySpec& spec) {
  if (spec.target_faces < 1) throw InvalidArgument("target_faces must be >= 1");
  if (spec.target_faces > mesh.face_count()) {
    throw InvalidArgument("target_faces (" + std::to_string(spec.target_faces) +
                          ") exceeds the mesh face count (" +
                          std::to_string(mesh.face_count()) + ")");
  }
  QemSimplifier qem(mesh);
  while (qem.face_count() > spec.target_faces) {
    if (!qem.step()) break;
  }
  SimplifyResult r;
  r.mesh = qem.mesh();
  r.achieved_faces = r.mesh.face_count();
  if (r.achieved_faces > spec.target_faces) {
    r.target_missed = true;
    r.warning = "no valid collapse left at " + std::to_string(r.achieved_faces) +
                " faces (target " + std::to_string(spec.target_faces) + ")";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Vertex clustering

TriMesh vertex_cluster(const TriMesh& mesh, int cells_per_axis) {
  if (cells_per_axis < 1) throw InvalidArgument("cells_per_axis must be >= 1");
  TriMesh out;
  out.label = mesh.label;
  if (mesh.vertices.empty()) return out;
  validate(mesh);
  const Aabb box = bounding_box(mesh);
  const Vec3 extent = box.extent();
  const auto n = static_cast<std::int64_t>(cells_per_axis);

  auto cell_of = [&](const Vec3& p) {
    std::int64_t key = 0;
    for (int k = 0; k < 3; ++k) {
      std::int64_t i = 0;
      if (extent[k] > 0.0) {
        i = static_cast<std::int64_t>(std::floor((p[k] - box.min[k]) / extent[k] * double(n)));
        i = std::clamp<std::int64_t>(i, 0, n - 1);
      }
      key = key * n + i;
    }
    return key;
  };

  // Cell ids in order of first appearance keep the output deterministic.
  std::unordered_map<std::int64_t, uint32_t> cell_index;
  std::vector<Vec3> sums;
  std::vector<double> counts;
  std::vector<uint32_t> rep(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const auto [it, fresh] = cell_index.try_emplace(cell_of(mesh.vertices[v]),
                                                    static_cast<uint32_t>(sums.size()));
    if (fresh) {
      sums.push_back(Vec3::Zero());
      counts.push_back(0.0);
    }
    sums[it->second] += mesh.vertices[v];
    counts[it->second] += 1.0;
    rep[v] = it->second;
  }

  TriMesh clustered;
  clustered.label = mesh.label;
  clustered.vertices.resize(sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) clustered.vertices[c] = sums[c] / counts[c];
  std::set<std::array<uint32_t, 3>> seen;
  for (const auto& f : mesh.faces) {
    const Face g{rep[f[0]], rep[f[1]], rep[f[2]]};
    if (has_repeated_index(g)) continue;
    std::array<uint32_t, 3> key = g;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    clustered.faces.push_back(g);
  }
  return compacted(clustered);
}

SimplifyResult vclust_to_target(const TriMesh& mesh, std::size_t target_faces) {
  if (target_faces < 1) throw InvalidArgument("target_faces must be >= 1");
  if (target_faces >= mesh.face_count()) {
    throw InvalidArgument("vclust target must be below the mesh face count");
  }
  const double ceiling = 1.02 * double(target_faces);
  constexpr int kMaxCells = 1024;

  std::map<int, TriMesh> cache;
  auto run = [&](int n) -> const TriMesh& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, vertex_cluster(mesh, n)).first;
    return it->second;
  };
  auto fits = [&](int n) { return double(run(n).face_count()) <= ceiling; };

  // Largest resolution whose output fits, assuming face count grows with n.
  int lo = 1, hi = kMaxCells;
  if (!fits(lo)) {
    lo = 0;
  } else if (fits(hi)) {
    lo = hi;
  } else {
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      (fits(mid) ? lo : hi) = mid;
    }
  }
  // Face count is only roughly monotone; look around the boundary too.
  int best = -1;
  std::size_t best_faces = 0;
  for (int n = std::max(1, lo - 4); n <= std::min(kMaxCells, std::max(lo, 1) + 4); ++n) {
    const auto f = run(n).face_count();
    if (double(f) > ceiling) continue;
    if (best < 0 || f > best_faces) {
      best = n;
      best_faces = f;
    }
  }

  SimplifyResult r;
  if (best < 0) {
    // Nothing fits under the ceiling: fall back to the closest overall.
    best = 1;
    for (const auto& [n, m] : cache) {
      const auto d = std::abs(double(m.face_count()) - double(target_faces));
      if (d < std::abs(double(run(best).face_count()) - double(target_faces))) best = n;
    }
  }
  r.cells_per_axis = best;
  r.mesh = run(best);
  r.achieved_faces = r.mesh.face_count();
  const double ratio = double(r.achieved_faces) / double(target_faces);
  if (ratio < 0.8 || ratio > 1.2) {
    r.target_missed = true;
    r.warning = "vertex clustering reached " + std::to_string(r.achieved_faces) +
                " faces for target " + std::to_string(target_faces) +
                " (cells_per_axis " + std::to_string(best) + ")";
  }
  return r;
}

SimplifyResult simplify(const TriMesh& mesh, const SimplifySpec& spec) {
  if (spec.algorithm == Algorithm::kQem) return qem_simplify(mesh, spec);
  return vclust_to_target(mesh, spec.target_faces);
}

SimplifyResult standardize(const TriMesh& mesh, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw InvalidArgument("budget must be positive");
  if (mesh.face_count() < budget) {
    throw InvalidArgument("mesh '" + mesh.label + "' has " + std::to_string(mesh.face_count()) +
                          " faces, fewer than the budget " + std::to_string(budget));
  }
  return qem_simplify(mesh, SimplifySpec{Algorithm::kQem, budget, seed});
}

// ---------------------------------------------------------------------------
// Families

const TriMesh& ModelFamily::version(std::string_view tag) const {
  if (tag == "s") return s;
  if (tag == "q5") return q5;
  if (tag == "q8") return q8;
  if (tag == "v5") return v5;
  if (tag == "v8") return v8;
  throw InvalidArgument("unknown version tag '" + std::string(tag) + "'");
}

std::size_t level_target(std::size_t standard_faces, int level_percent) {
  if (level_percent <= 0 || level_percent >= 100) {
    throw InvalidArgument("simplification level must lie in (0, 100)");
  }
  const auto t = static_cast<std::size_t>(
      std::llround(double(standard_faces) * (100.0 - level_percent) / 100.0));
  return std::max<std::size_t>(1, t);
}

ModelFamily build_family(const TriMesh& mesh, std::size_t budget, std::string name,
                         ObjectType type, std::array<int, 2> levels, std::uint64_t seed) {
  ModelFamily fam;
  fam.name = std::move(name);
  fam.object_type = type;
  fam.levels = levels;

  auto note = [&](std::string_view tag, const SimplifyResult& r) {
    if (r.target_missed) fam.warnings.push_back(std::string(tag) + ": " + r.warning);
  };
  auto s = standardize(mesh, budget, seed);
  note("s", s);
  fam.s = std::move(s.mesh);
  fam.s.label = fam.name + "_s";

  const auto n = fam.s.face_count();
  TriMesh* q[2] = {&fam.q5, &fam.q8};
  TriMesh* v[2] = {&fam.v5, &fam.v8};
  for (int i = 0; i < 2; ++i) {
    const auto target = level_target(n, levels[i]);
    auto qr = qem_simplify(fam.s, SimplifySpec{Algorithm::kQem, target, seed});
    note(kVersionTags[1 + i], qr);
    *q[i] = std::move(qr.mesh);
    q[i]->label = fam.name + "_" + std::string(kVersionTags[1 + i]);
    auto vr = vclust_to_target(fam.s, target);
    note(kVersionTags[3 + i], vr);
    *v[i] = std::move(vr.mesh);
    v[i]->label = fam.name + "_" + std::string(kVersionTags[3 + i]);
  }
  return fam;
}

}  // namespace simpeval

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

// Synthetic participants for the statistics tests. Responses are driven by
// one automatic measure so the expected correlations are known in advance.
#ifndef SIMPEVAL_TESTS_SYNTH_HPP_
#define SIMPEVAL_TESTS_SYNTH_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "simpeval/predict.hpp"
#include "simpeval/stats.hpp"

namespace synth {

struct Options {
  int participants = 6;
  std::uint64_t seed = 1;
  simpeval::Measure driver = simpeval::Measure::kMetroMn;
  double rating_noise = 0.05;  // rating points
  double naming_noise = 10.0;  // ms
  // Rating = rating_offset - rating_slope * driver, when set; otherwise the
  // driver range is mapped linearly onto [1.5, 6.5].
  std::optional<std::pair<double, double>> rating_line;
  // Permute the driver values across objects before generating responses.
  bool shuffle = false;
};

inline std::vector<simpeval::HumanResponse> participants(
    const std::vector<simpeval::PairMeasures>& measures, const Options& o) {
  using namespace simpeval;
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> unit;

  struct Obj {
    ObjectType type;
    double q[2] = {0, 0}, v[2] = {0, 0};
  };
  std::map<std::string, Obj> objs;
  for (const auto& m : measures) {
    auto& ob = objs[m.object];
    ob.type = m.object_type;
    const int li = pair_level_index(m.pair);
    (pair_algorithm(m.pair) == Algorithm::kQem ? ob.q : ob.v)[li] = m.get(o.driver);
  }
  std::vector<std::string> names;
  for (const auto& [n, ob] : objs) names.push_back(n);

  if (o.shuffle) {
    std::vector<Obj> vals;
    for (const auto& n : names) vals.push_back(objs[n]);
    std::shuffle(vals.begin(), vals.end(), rng);
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto type = objs[names[i]].type;
      objs[names[i]] = vals[i];
      objs[names[i]].type = type;
    }
  }

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& [n, ob] : objs)
    for (int i = 0; i < 2; ++i) {
      lo = std::min({lo, ob.q[i], ob.v[i]});
      hi = std::max({hi, ob.q[i], ob.v[i]});
    }
  const double span = hi > lo ? hi - lo : 1.0;
  auto rating_of = [&](double d) {
    if (o.rating_line) return o.rating_line->first - o.rating_line->second * d;
    return 6.5 - 5.0 * (d - lo) / span;
  };
  auto naming_of = [&](double d) { return 650.0 + 300.0 * (d - lo) / span; };

  const int levels[2] = {50, 80};
  std::vector<HumanResponse> out;
  for (int p = 0; p < o.participants; ++p) {
    const std::string pid = "p" + std::to_string(p);
    std::map<ObjectType, int> index_in_type;
    for (const auto& n : names) {
      const auto& ob = objs[n];
      HumanResponse base;
      base.participant = pid;
      base.object = n;
      base.object_type = ob.type;

      // Naming: one condition per participant, rotating over six.
      const int c = (index_in_type[ob.type]++ + p) % 6;
      HumanResponse nm = base;
      nm.task = Task::kNaming;
      if (c % 3 == 0) {
        nm.simp_type = SimpType::kNone;
        nm.simp_level = 0;
        nm.value = 650.0 + o.naming_noise * unit(rng);
      } else {
        const int li = c % 3 - 1;
        nm.simp_type = c < 3 ? SimpType::kQslim : SimpType::kVclust;
        nm.simp_level = levels[li];
        nm.value = naming_of(c < 3 ? ob.q[li] : ob.v[li]) + o.naming_noise * unit(rng);
      }
      out.push_back(nm);

      for (int li = 0; li < 2; ++li) {
        for (auto st : {SimpType::kQslim, SimpType::kVclust}) {
          HumanResponse r = base;
          r.task = Task::kRating;
          r.simp_type = st;
          r.simp_level = levels[li];
          const double d = st == SimpType::kQslim ? ob.q[li] : ob.v[li];
          r.value = std::clamp(rating_of(d) + o.rating_noise * unit(rng), 1.0, 7.0);
          out.push_back(r);
        }
        HumanResponse pr = base;
        pr.task = Task::kPreference;
        pr.simp_type = SimpType::kQslim;
        pr.simp_level = levels[li];
        const double gap = (ob.q[li] - ob.v[li]) / span;
        pr.choice = gap + 0.2 * unit(rng) < 0 ? SimpType::kQslim : SimpType::kVclust;
        out.push_back(pr);
      }
    }
  }
  return out;
}

}  // namespace synth

#endif  // SIMPEVAL_TESTS_SYNTH_HPP_

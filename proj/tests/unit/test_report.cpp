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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "simpeval/report.hpp"
#include "support/synth.hpp"

using namespace simpeval;

namespace {

// Twelve objects with metro_mn spread over [0.03, 0.15] so 8 - 40 x stays in
// the rating range. Other measures are affine in metro_mn with varied slopes.
std::vector<PairMeasures> synthetic_measures() {
  std::vector<PairMeasures> rows;
  for (int o = 0; o < 12; ++o) {
    const std::string name = (o < 6 ? "animal" : "artifact") + std::to_string(o % 6);
    for (int i = 0; i < 4; ++i) {
      PairMeasures r;
      r.object = name;
      r.object_type = o < 6 ? ObjectType::kAnimal : ObjectType::kArtifact;
      r.pair = kPairs[i];
      const double base = 0.03 + 0.005 * ((o * 7) % 12);
      const double level = pair_level_index(r.pair) ? 0.05 : 0.0;
      const double algo = pair_algorithm(r.pair) == Algorithm::kQem ? 0.0 : 0.02 + 0.001 * o;
      const double mn = base + level + algo;
      for (auto m : kMeasures) r.set(m, mn * (1.0 + static_cast<int>(m)) + 0.001 * ((o * 5 + i) % 3));
      r.metro_mn = mn;
      rows.push_back(r);
    }
  }
  return rows;
}

std::vector<PreferencePrediction> predictions_for(const std::vector<PairMeasures>& rows) {
  std::vector<PreferencePrediction> out;
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    auto p = preference_predictors({rows.begin() + i, rows.begin() + i + 4});
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

const CorrelationRow& row(const std::vector<CorrelationRow>& rows, Measure m, Variable v, Subset s,
                          SimpType st) {
  for (const auto& r : rows)
    if (r.measure == m && r.variable == v && r.subset == s && r.simp_type == st) return r;
  FAIL("row missing");
  throw 0;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("noise-free linear ratings correlate perfectly and negatively") {
  const auto measures = synthetic_measures();
  synth::Options o;
  o.rating_line = {{8.0, 40.0}};
  o.rating_noise = 0.0;
  const auto human = synth::participants(measures, o);
  const auto rep = correlate_report(measures, predictions_for(measures), human);
  CHECK(rep.join_errors.empty());
  CHECK(rep.quality.size() == 72);
  CHECK(rep.comparison.size() == 54);
  for (auto s : {Subset::kAll, Subset::kAnimals, Subset::kArtifacts})
    for (auto st : {SimpType::kQslim, SimpType::kVclust}) {
      const auto& r = row(rep.quality, Measure::kMetroMn, Variable::kRating, s, st);
      CHECK(r.defined);
      CHECK(r.r == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(r.n == (s == Subset::kAll ? 24u : 12u));
    }
  // Rating differences are exact negatives of 40 x p, so also r = -1.
  const auto& d = row(rep.comparison, Measure::kMetroMn, Variable::kRatingDiff, Subset::kAll, SimpType::kNone);
  CHECK(d.r == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(d.n == 24);
  // Every grid cell lies in range.
  for (const auto* grid : {&rep.quality, &rep.comparison})
    for (const auto& r : *grid) {
      if (!r.defined) continue;
      CHECK(std::abs(r.r) <= 1.0);
      CHECK(r.p >= 0.0);
      CHECK(r.p <= 1.0);
    }
}

TEST_CASE("averaging levels halves the points") {
  const auto measures = synthetic_measures();
  const auto human = synth::participants(measures, {});
  ReportOptions opt;
  opt.average_levels = true;
  const auto rep = correlate_report(measures, predictions_for(measures), human, opt);
  CHECK(row(rep.quality, Measure::kBm, Variable::kRating, Subset::kAll, SimpType::kQslim).n == 12);
}

TEST_CASE("ANOVA sections cover both schemes") {
  const auto measures = synthetic_measures();
  const auto rep = correlate_report(measures, predictions_for(measures), synth::participants(measures, {}));
  int participant = 0, object = 0;
  for (const auto& s : rep.anovas) {
    if (!s.result) {
      MESSAGE(s.analysis << " " << s.design << " skipped: " << s.skipped);
      continue;
    }
    participant += s.scheme == AveragingScheme::kByParticipant;
    object += s.scheme == AveragingScheme::kByObject;
  }
  CHECK(participant >= 4);
  CHECK(object >= 4);
  std::ostringstream a, c, t;
  write_anova_csv(a, rep);
  write_correlations_csv(c, rep);
  write_report_text(t, rep);
  CHECK(a.str().rfind("analysis,design,scheme,effect", 0) == 0);
  const auto csv = c.str();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 127);
  CHECK(t.str().find("MetroMn") != std::string::npos);
}

TEST_CASE("join problems are listed") {
  auto measures = synthetic_measures();
  auto preds = predictions_for(measures);
  auto human = synth::participants(measures, {});
  measures.push_back(measures.front());             // duplicate row
  measures.erase(measures.begin() + 5);             // animal1 loses a pair
  preds.push_back({"ghost", Measure::kBm, 0.1, 0.2});  // prediction without measures
  auto extra = human.front();
  extra.object = "stranger";
  human.push_back(extra);                           // human row without measures
  const auto rep = correlate_report(measures, preds, human);
  auto has = [&](const std::string& needle) {
    return std::any_of(rep.join_errors.begin(), rep.join_errors.end(),
                       [&](const std::string& e) { return e.find(needle) != std::string::npos; });
  };
  CHECK(has("duplicate"));
  CHECK(has("animal1 lacks pair"));
  CHECK(has("ghost"));
  CHECK(has("stranger has human responses but no measures"));
}

TEST_CASE("significance marks") {
  const ReportOptions o;
  CHECK(significance_mark(0.2, o) == "");
  CHECK(significance_mark(0.07, o) == "*");
  CHECK(significance_mark(0.01, o) == "**");
  CHECK(significance_mark(0.05, o) == "*");
}

}  // TEST_SUITE

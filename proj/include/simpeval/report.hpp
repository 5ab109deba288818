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

#ifndef SIMPEVAL_REPORT_HPP_
#define SIMPEVAL_REPORT_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "simpeval/predict.hpp"
#include "simpeval/stats.hpp"

namespace simpeval {

// Experimental variables correlated against automatic measures.
enum class Variable { kNaming, kRating, kNamingDiff, kRatingDiff, kPreference };
std::string_view to_string(Variable v);  // naming, rating, naming_diff, ...

enum class Subset { kAll, kAnimals, kArtifacts };
std::string_view to_string(Subset s);  // all, animals, artifacts

struct CorrelationRow {
  Measure measure = Measure::kBm;
  Variable variable = Variable::kNaming;
  Subset subset = Subset::kAll;
  SimpType simp_type = SimpType::kNone;  // QSLIM/VCLUST for naming & rating
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
  bool defined = false;  // false when too few points or zero variance
};

// Per-object experimental summaries after cleaning.
struct HumanSummary {
  // (object, simp type, level) -> mean over participants
  std::map<std::tuple<std::string, SimpType, int>, double> naming;
  std::map<std::tuple<std::string, SimpType, int>, double> rating;
  // (object, level) -> percent of trials preferring the QEM version
  std::map<std::pair<std::string, int>, double> preference;
  std::map<std::string, ObjectType> object_types;
  NamingCleanReport cleaning;  // `kept` holds the surviving trials
};

struct ReportOptions {
  NamingCleanOptions cleaning;
  // Average the two levels per object instead of pooling them as two points.
  bool average_levels = false;
  double marginal = 0.1;
  double significant = 0.05;
};

HumanSummary summarize_human(const std::vector<HumanResponse>& human,
                             const NamingCleanOptions& cleaning = {});

struct AnovaSection {
  std::string analysis;  // "naming", "rating", "preference", "metro_mn", ...
  std::string design;    // "otype x level", "stype x level x otype"
  AveragingScheme scheme = AveragingScheme::kNone;
  std::optional<AnovaResult> result;
  std::string skipped;  // reason when result is empty
};

struct StatsReport {
  std::vector<CorrelationRow> quality;     // naming & rating vs measures
  std::vector<CorrelationRow> comparison;  // differences & preference vs p5/p8
  std::vector<AnovaSection> anovas;
  std::vector<std::string> join_errors;
  HumanSummary human;
  ReportOptions options;
};

// Joins on object name (and pair). Objects present on only one side, type
// disagreements and incomplete families are listed in join_errors and left
// out of the correlations.
StatsReport correlate_report(const std::vector<PairMeasures>& measures,
                             const std::vector<PreferencePrediction>& predictions,
                             const std::vector<HumanResponse>& human,
                             const ReportOptions& options = {});

// "" / "*" (p < marginal) / "**" (p < significant)
std::string significance_mark(double p, const ReportOptions& options);

// correlations.csv: grid,measure,variable,subset,simp_type,r,p,n,mark
void write_correlations_csv(std::ostream& out, const StatsReport& report);
// anova.csv: analysis,design,scheme,effect,ss,df_effect,df_error,f,p,mark
void write_anova_csv(std::ostream& out, const StatsReport& report);
void write_report_text(std::ostream& out, const StatsReport& report);

// Automatic measures as dependent variables: simp type x level x object type
// with objects as replicates. Incomplete families are skipped.
std::vector<AnovaSection> measure_anovas(const std::vector<PairMeasures>& measures);

// Per-pair means, QEM-vs-clustering win counts and measure ANOVAs; the
// report written when no human data is available.
void write_measure_summary(std::ostream& out, const std::vector<PairMeasures>& measures);

// Writes correlations.csv, anova.csv and report.txt into `dir`.
void save_report(const std::filesystem::path& dir, const StatsReport& report);

}  // namespace simpeval

#endif  // SIMPEVAL_REPORT_HPP_

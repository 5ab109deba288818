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

#ifndef SIMPEVAL_STATS_HPP_
#define SIMPEVAL_STATS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simpeval/corpus.hpp"

namespace simpeval {

enum class SimpType { kQslim, kVclust, kNone };
enum class Task { kNaming, kRating, kPreference };

std::string_view to_string(SimpType t);  // QSLIM, VCLUST, NONE
std::string_view to_string(Task t);      // NAMING, RATING, PREFERENCE
std::optional<SimpType> parse_simp_type(std::string_view s);
std::optional<Task> parse_task(std::string_view s);

// One human answer. `value` holds milliseconds (naming) or the 1-7 rating;
// `choice` holds the preferred algorithm (preference). For preference rows
// simp_type records which algorithm was shown on the left.
struct HumanResponse {
  std::string participant;
  std::string object;
  ObjectType object_type = ObjectType::kAnimal;
  SimpType simp_type = SimpType::kNone;
  int simp_level = 0;
  Task task = Task::kNaming;
  double value = 0.0;
  SimpType choice = SimpType::kNone;
  bool spoiled = false;
  bool error = false;
  std::string variant;  // e.g. "typed-onset" for keyboard-timed naming

  // Throws InvalidArgument when a schema invariant is violated.
  void validate() const;
};

// human.csv: participant,object,object_type,simp_type,simp_level,task,value,
//            spoiled,error,variant
void write_human_csv(std::ostream& out, const std::vector<HumanResponse>& rows);
std::vector<HumanResponse> read_human_csv(std::istream& in);
std::vector<HumanResponse> load_human_csv(const std::filesystem::path& path);
inline constexpr std::string_view kHumanCsvHeader =
    "participant,object,object_type,simp_type,simp_level,task,value,spoiled,error,variant";

// ---------------------------------------------------------------------------
// Naming-time cleaning

struct NamingCleanOptions {
  double sd_limit = 3.0;
  // Repeat the outlier pass until nothing more is excluded (the single pass
  // is the default).
  bool iterate = false;
};

struct NamingCleanReport {
  std::vector<HumanResponse> kept;
  std::size_t spoiled = 0;
  std::size_t errors = 0;
  std::size_t outliers = 0;
  double mean = 0.0;    // of the trials the last outlier pass examined
  double sd = 0.0;
  double cutoff = 0.0;  // mean + sd_limit * sd
};

// Drops spoiled trials, then error trials, then times longer than
// mean + 3 SD (sample SD) of what remains. Short times are kept.
NamingCleanReport clean_naming(const std::vector<HumanResponse>& naming,
                               const NamingCleanOptions& options = {});

// ---------------------------------------------------------------------------
// Distributions

// Two-sided tail P(|T| >= |t|) for Student t with `df` degrees of freedom.
double student_t_two_sided(double t, double df);
// Upper tail P(F >= f) for the F distribution.
double f_upper_tail(double f, double df1, double df2);

struct Correlation {
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

// Sample Pearson r with a two-sided t-test on n - 2 df. Requires n >= 3;
// throws UndefinedStatistic when either variable has zero variance.
Correlation pearson(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Fixed-effects factorial ANOVA on a balanced design

enum class AveragingScheme { kByParticipant, kByObject, kNone };
std::string_view to_string(AveragingScheme s);

struct AnovaFactor {
  std::string name;
  std::vector<std::string> levels;
};

struct AnovaObservation {
  std::vector<std::size_t> cell;  // level index per factor
  double value = 0.0;
};

struct AnovaRow {
  std::string effect;  // "simp type", "simp type x simp level", ...
  double ss = 0.0;
  double df_effect = 0.0;
  double df_error = 0.0;
  double f = 0.0;
  double p = 1.0;
  AveragingScheme scheme = AveragingScheme::kNone;
};

struct AnovaResult {
  std::vector<AnovaRow> effects;  // main effects, then interactions by order
  double ss_error = 0.0;
  double df_error = 0.0;
  double ss_total = 0.0;
};

// Sums of squares by inclusion-exclusion over marginal means. Every cell of
// the fully crossed design must hold the same number (>= 2) of replicates;
// otherwise InvalidArgument. F is 0 whenever the effect sum of squares is 0.
AnovaResult anova(const std::vector<AnovaFactor>& factors,
                  const std::vector<AnovaObservation>& observations,
                  AveragingScheme scheme = AveragingScheme::kNone);

// ---------------------------------------------------------------------------
// Preference rates

struct PreferenceRate {
  std::string unit;  // participant id or object name, per scheme
  ObjectType object_type = ObjectType::kAnimal;
  int simp_level = 0;
  double percent_qslim = 0.0;
  std::size_t trials = 0;
};

// Percent of preference trials choosing the QEM version, per participant and
// (object type x level) or per object and level. Every unit must have trials
// in every condition seen in the data (UndefinedStatistic otherwise).
std::vector<PreferenceRate> preference_rates(const std::vector<HumanResponse>& responses,
                                             AveragingScheme scheme);

}  // namespace simpeval

#endif  // SIMPEVAL_STATS_HPP_

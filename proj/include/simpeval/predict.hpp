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

#ifndef SIMPEVAL_PREDICT_HPP_
#define SIMPEVAL_PREDICT_HPP_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simpeval/corpus.hpp"
#include "simpeval/geom_fidelity.hpp"
#include "simpeval/image.hpp"
#include "simpeval/image_fidelity.hpp"
#include "simpeval/render.hpp"
#include "simpeval/simplify.hpp"

namespace simpeval {

// The four (standard, simplified) pairings, in report order.
enum class PairId { kSQ5, kSQ8, kSV5, kSV8 };
inline constexpr std::array<PairId, 4> kPairs = {PairId::kSQ5, PairId::kSQ8, PairId::kSV5,
                                                 PairId::kSV8};

std::string_view to_string(PairId p);  // "s_q5", ...
std::optional<PairId> parse_pair(std::string_view s);
std::string_view simplified_tag(PairId p);  // "q5", ...
Algorithm pair_algorithm(PairId p);
int pair_level_index(PairId p);  // 0 for the lower level, 1 for the higher

enum class Measure { kBm, kMse, kMetroMn, kMetroMse, kMetroMax, kMetroVol };
inline constexpr std::array<Measure, 6> kMeasures = {Measure::kBm,       Measure::kMse,
                                                     Measure::kMetroMn,  Measure::kMetroMse,
                                                     Measure::kMetroMax, Measure::kMetroVol};

std::string_view column_name(Measure m);   // "metro_mn"
std::string_view display_name(Measure m);  // "MetroMn"
std::optional<Measure> parse_measure(std::string_view s);

struct PairMeasures {
  std::string object;
  ObjectType object_type = ObjectType::kAnimal;
  PairId pair = PairId::kSQ5;
  double bm = 0, mse = 0, metro_mn = 0, metro_mse = 0, metro_max = 0, metro_vol = 0;

  double get(Measure m) const;
  void set(Measure m, double v);
};

// p5 = meas(s,q5) - meas(s,v5), p8 likewise. Negative predicts the QEM
// version is preferred, positive the clustered one.
struct PreferencePrediction {
  std::string object;
  Measure measure = Measure::kBm;
  double p5 = 0;
  double p8 = 0;
};

// Single-stimulus renders of every version under one camera (the standard's).
struct FamilyStimuli {
  CameraSpec camera;
  std::map<std::string, GrayImage, std::less<>> images;  // keyed by version tag
};

FamilyStimuli render_family(const ModelFamily& fam, const CameraOverrides& overrides = {});

struct MeasureOptions {
  SurfaceSampler sampler;
  ViewParams view = ViewParams::standard();
  PerceptualConfig perceptual;
  MetroOptions metro;
};

// Geometric measures use s as the pivot; image measures compare the rendered
// stimuli (s first).
std::array<PairMeasures, 4> measure_family(const ModelFamily& fam, const FamilyStimuli& stimuli,
                                           const MeasureOptions& options);
std::array<PairMeasures, 4> measure_family(const ModelFamily& fam, const MeasureOptions& options,
                                           const CameraOverrides& overrides = {});

// Requires the four pairs of one object. Throws InvalidArgument otherwise.
std::vector<PreferencePrediction> preference_predictors(const std::vector<PairMeasures>& pm);

// measures.csv: object,object_type,pair,bm,mse,metro_mn,metro_mse,metro_max,metro_vol
void write_measures_csv(std::ostream& out, const std::vector<PairMeasures>& rows);
std::vector<PairMeasures> read_measures_csv(std::istream& in);
// predictions.csv: object,measure,p5,p8
void write_predictions_csv(std::ostream& out, const std::vector<PreferencePrediction>& rows);
std::vector<PreferencePrediction> read_predictions_csv(std::istream& in);

std::vector<PairMeasures> load_measures_csv(const std::filesystem::path& path);
std::vector<PreferencePrediction> load_predictions_csv(const std::filesystem::path& path);

}  // namespace simpeval

#endif  // SIMPEVAL_PREDICT_HPP_

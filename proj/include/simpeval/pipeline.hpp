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

#ifndef SIMPEVAL_PIPELINE_HPP_
#define SIMPEVAL_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "simpeval/predict.hpp"

namespace simpeval {

struct PipelineConfig {
  std::filesystem::path manifest;
  std::filesystem::path output = "out";
  std::size_t budget = 3700;
  std::array<int, 2> levels = {50, 80};
  std::uint64_t seed = 0;
  std::size_t samples = 0;  // surface samples per direction, 0 = automatic
  ViewParams view = ViewParams::standard();
  CameraOverrides camera;  // defaults under the manifest's per-object values
  unsigned workers = 1;
  bool write_meshes = true;
  bool write_images = true;
  std::optional<std::filesystem::path> human_csv;  // adds the statistics report

  // Throws InvalidArgument on levels outside (0, 100), budget 0, ...
  void validate() const;
};

// Echoed into the output tree as effective_config.json.
std::string config_to_json(const PipelineConfig& cfg);

struct ObjectFailure {
  std::string object;
  std::string message;
};

struct PipelineResult {
  std::vector<PairMeasures> measures;            // sorted by object, then pair
  std::vector<PreferencePrediction> predictions;
  std::vector<ObjectFailure> failures;
  std::vector<std::string> warnings;
};

// Writes out/<object>/{meshes,images}/, out/measures.csv, out/predictions.csv,
// out/report.txt and out/effective_config.json. A failing object is reported
// and skipped; the rest still complete.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace simpeval

#endif  // SIMPEVAL_PIPELINE_HPP_

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

#include "simpeval/predict.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "simpeval/csv.hpp"
#include "simpeval/error.hpp"

namespace simpeval {

std::string_view to_string(PairId p) {
  switch (p) {
    case PairId::kSQ5: return "s_q5";
    case PairId::kSQ8: return "s_q8";
    case PairId::kSV5: return "s_v5";
    case PairId::kSV8: return "s_v8";
  }
  return "";
}

std::optional<PairId> parse_pair(std::string_view s) {
  for (auto p : kPairs) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::string_view simplified_tag(PairId p) { return to_string(p).substr(2); }

Algorithm pair_algorithm(PairId p) {
  return (p == PairId::kSQ5 || p == PairId::kSQ8) ? Algorithm::kQem : Algorithm::kVclust;
}

int pair_level_index(PairId p) { return (p == PairId::kSQ8 || p == PairId::kSV8) ? 1 : 0; }

std::string_view column_name(Measure m) {
  switch (m) {
    case Measure::kBm: return "bm";
    case Measure::kMse: return "mse";
    case Measure::kMetroMn: return "metro_mn";
    case Measure::kMetroMse: return "metro_mse";
    case Measure::kMetroMax: return "metro_max";
    case Measure::kMetroVol: return "metro_vol";
  }
  return "";
}

std::string_view display_name(Measure m) {
  switch (m) {
    case Measure::kBm: return "BM";
    case Measure::kMse: return "MSE";
    case Measure::kMetroMn: return "MetroMn";
    case Measure::kMetroMse: return "MetroMSE";
    case Measure::kMetroMax: return "MetroMax";
    case Measure::kMetroVol: return "MetroVol";
  }
  return "";
}

std::optional<Measure> parse_measure(std::string_view s) {
  for (auto m : kMeasures) {
    if (column_name(m) == s || display_name(m) == s) return m;
  }
  return std::nullopt;
}

double PairMeasures::get(Measure m) const {
  switch (m) {
    case Measure::kBm: return bm;
    case Measure::kMse: return mse;
    case Measure::kMetroMn: return metro_mn;
    case Measure::kMetroMse: return metro_mse;
    case Measure::kMetroMax: return metro_max;
    case Measure::kMetroVol: return metro_vol;
  }
  return 0.0;
}

void PairMeasures::set(Measure m, double v) {
  switch (m) {
    case Measure::kBm: bm = v; break;
    case Measure::kMse: mse = v; break;
    case Measure::kMetroMn: metro_mn = v; break;
    case Measure::kMetroMse: metro_mse = v; break;
    case Measure::kMetroMax: metro_max = v; break;
    case Measure::kMetroVol: metro_vol = v; break;
  }
}

FamilyStimuli render_family(const ModelFamily& fam, const CameraOverrides& overrides) {
  FamilyStimuli st;
  st.camera = canonical_camera(fam.s, overrides);
  for (auto tag : kVersionTags) {
    st.images.emplace(std::string(tag), render_stimulus(fam.version(tag), st.camera));
  }
  return st;
}

std::array<PairMeasures, 4> measure_family(const ModelFamily& fam, const FamilyStimuli& stimuli,
                                           const MeasureOptions& options) {
  std::array<PairMeasures, 4> out;
  const auto s_img = stimuli.images.find("s");
  if (s_img == stimuli.images.end()) throw InvalidArgument("stimuli lack the standard image");
  for (std::size_t i = 0; i < kPairs.size(); ++i) {
    const auto pair = kPairs[i];
    const auto tag = simplified_tag(pair);
    const TriMesh& approx = fam.version(tag);
    auto img = stimuli.images.find(tag);
    if (img == stimuli.images.end()) {
      throw InvalidArgument("stimuli lack image '" + std::string(tag) + "'");
    }
    PairMeasures& pm = out[i];
    pm.object = fam.name;
    pm.object_type = fam.object_type;
    pm.pair = pair;
    pm.bm = summarize_diff(
        perceptual_diff(s_img->second, img->second, options.view, options.perceptual));
    pm.mse = mse(s_img->second, img->second);
    const auto metro = metro_measures(fam.s, approx, options.sampler, options.metro);
    pm.metro_mn = metro.metro_mn;
    pm.metro_mse = metro.metro_mse;
    pm.metro_max = metro.metro_max;
    pm.metro_vol = metro.metro_vol;
  }
  return out;
}

std::array<PairMeasures, 4> measure_family(const ModelFamily& fam, const MeasureOptions& options,
                                           const CameraOverrides& overrides) {
  return measure_family(fam, render_family(fam, overrides), options);
}

std::vector<PreferencePrediction> preference_predictors(const std::vector<PairMeasures>& pm) {
  const PairMeasures* by_pair[4] = {nullptr, nullptr, nullptr, nullptr};
  for (const auto& row : pm) {
    if (!pm.empty() && row.object != pm.front().object) {
      throw InvalidArgument("preference_predictors: rows from several objects");
    }
    by_pair[static_cast<int>(row.pair)] = &row;
  }
  for (auto p : kPairs) {
    if (!by_pair[static_cast<int>(p)]) {
      throw InvalidArgument("preference_predictors: missing pair " + std::string(to_string(p)) +
                            (pm.empty() ? std::string() : " for " + pm.front().object));
    }
  }
  const auto& sq5 = *by_pair[0];
  const auto& sq8 = *by_pair[1];
  const auto& sv5 = *by_pair[2];
  const auto& sv8 = *by_pair[3];
  std::vector<PreferencePrediction> out;
  for (auto m : kMeasures) {
    out.push_back({sq5.object, m, sq5.get(m) - sv5.get(m), sq8.get(m) - sv8.get(m)});
  }
  return out;
}

void write_measures_csv(std::ostream& out, const std::vector<PairMeasures>& rows) {
  csv::Row header = {"object", "object_type", "pair"};
  for (auto m : kMeasures) header.emplace_back(column_name(m));
  csv::write_row(out, header);
  for (const auto& r : rows) {
    csv::Row f = {r.object, std::string(to_string(r.object_type)), std::string(to_string(r.pair))};
    for (auto m : kMeasures) f.push_back(csv::format_number(r.get(m)));
    csv::write_row(out, f);
  }
}

std::vector<PairMeasures> read_measures_csv(std::istream& in) {
  const auto rows = csv::read(in);
  if (rows.empty()) throw ParseError("measures CSV is empty", 1);
  std::vector<std::string_view> names = {"object", "object_type", "pair"};
  for (auto m : kMeasures) names.push_back(column_name(m));
  const auto col = csv::locate(rows[0], names);
  std::vector<PairMeasures> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() < rows[0].size()) throw ParseError("short measures row", i + 1);
    PairMeasures pm;
    pm.object = r[col[0]];
    auto type = parse_object_type(r[col[1]]);
    if (!type) throw ParseError("bad object_type '" + r[col[1]] + "'", i + 1);
    pm.object_type = *type;
    auto pair = parse_pair(r[col[2]]);
    if (!pair) throw ParseError("bad pair '" + r[col[2]] + "'", i + 1);
    pm.pair = *pair;
    for (std::size_t k = 0; k < kMeasures.size(); ++k) {
      const double v = csv::parse_number(r[col[3 + k]], i + 1);
      if (!std::isfinite(v) || v < 0.0) throw ParseError("measure must be finite and >= 0", i + 1);
      pm.set(kMeasures[k], v);
    }
    out.push_back(std::move(pm));
  }
  return out;
}

void write_predictions_csv(std::ostream& out, const std::vector<PreferencePrediction>& rows) {
  csv::write_row(out, {"object", "measure", "p5", "p8"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.object, std::string(column_name(r.measure)), csv::format_number(r.p5),
                         csv::format_number(r.p8)});
  }
}

std::vector<PreferencePrediction> read_predictions_csv(std::istream& in) {
  const auto rows = csv::read(in);
  if (rows.empty()) throw ParseError("predictions CSV is empty", 1);
  const auto col = csv::locate(rows[0], {"object", "measure", "p5", "p8"});
  std::vector<PreferencePrediction> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() < rows[0].size()) throw ParseError("short predictions row", i + 1);
    auto m = parse_measure(r[col[1]]);
    if (!m) throw ParseError("unknown measure '" + r[col[1]] + "'", i + 1);
    out.push_back({r[col[0]], *m, csv::parse_number(r[col[2]], i + 1),
                   csv::parse_number(r[col[3]], i + 1)});
  }
  return out;
}

std::vector<PairMeasures> load_measures_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_measures_csv(in);
}

std::vector<PreferencePrediction> load_predictions_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_predictions_csv(in);
}

}  // namespace simpeval

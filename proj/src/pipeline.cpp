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

#include "simpeval/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "json.hpp"
#include "simpeval/csv.hpp"
#include "simpeval/error.hpp"
#include "simpeval/mesh_io.hpp"
#include "simpeval/render.hpp"
#include "simpeval/report.hpp"
#include "simpeval/simplify.hpp"

namespace simpeval {

using nlohmann::json;

void PipelineConfig::validate() const {
  if (manifest.empty()) throw InvalidArgument("no corpus manifest given");
  if (budget == 0) throw InvalidArgument("budget must be positive");
  if (!(levels[0] > 0 && levels[0] < levels[1] && levels[1] < 100)) {
    throw InvalidArgument(fmt::format("levels {} and {} must satisfy 0 < a < b < 100", levels[0],
                                      levels[1]));
  }
  if (workers == 0) throw InvalidArgument("workers must be at least 1");
  if (!(view.pixels_per_degree > 0.0)) throw InvalidArgument("pixels_per_degree must be positive");
}

namespace {

CameraOverrides merged(const CameraOverrides& base, const CameraOverrides& over) {
  CameraOverrides c = base;
  if (over.fov_deg) c.fov_deg = over.fov_deg;
  if (over.distance_factor) c.distance_factor = over.distance_factor;
  if (over.azimuth_deg) c.azimuth_deg = over.azimuth_deg;
  if (over.elevation_deg) c.elevation_deg = over.elevation_deg;
  if (over.look_at) c.look_at = over.look_at;
  return c;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
  if (!f) throw Error("cannot write " + p.string());
}

struct ObjectOutput {
  std::array<PairMeasures, 4> measures;
  std::vector<std::string> warnings;
};

ObjectOutput process(const CorpusEntry& entry, const PipelineConfig& cfg) {
  const TriMesh mesh = load_mesh(entry.file);
  auto fam = build_family(mesh, cfg.budget, entry.name, entry.type, cfg.levels, cfg.seed);
  const auto overrides = merged(cfg.camera, entry.camera);
  const auto stimuli = render_family(fam, overrides);

  const auto dir = cfg.output / entry.name;
  if (cfg.write_meshes) {
    std::filesystem::create_directories(dir / "meshes");
    for (auto tag : kVersionTags) {
      save_off(dir / "meshes" / (std::string(tag) + ".off"), fam.version(tag));
    }
  }
  if (cfg.write_images) {
    std::filesystem::create_directories(dir / "images");
    for (const auto& [tag, img] : stimuli.images) save_pgm(dir / "images" / (tag + ".pgm"), img);
    for (auto tag : kVersionTags) {
      save_pgm(dir / "images" / (std::string(tag) + "_half.pgm"),
               render_pair_half(fam.version(tag), stimuli.camera));
    }
  }

  MeasureOptions mo;
  mo.sampler.samples_target = cfg.samples;
  mo.sampler.seed = cfg.seed;
  mo.view = cfg.view;
  ObjectOutput out{measure_family(fam, stimuli, mo), fam.warnings};
  for (auto& w : out.warnings) w = entry.name + ": " + w;
  return out;
}

}  // namespace

std::string config_to_json(const PipelineConfig& cfg) {
  json j{{"manifest", cfg.manifest.string()},
         {"output", cfg.output.string()},
         {"budget", cfg.budget},
         {"levels", {cfg.levels[0], cfg.levels[1]}},
         {"seed", cfg.seed},
         {"samples", cfg.samples},
         {"pixels_per_degree", cfg.view.pixels_per_degree},
         {"max_luminance", cfg.view.max_luminance},
         {"workers", cfg.workers},
         {"write_meshes", cfg.write_meshes},
         {"write_images", cfg.write_images},
         {"human_csv", cfg.human_csv ? json(cfg.human_csv->string()) : json(nullptr)}};
  json cam = json::object();
  if (cfg.camera.fov_deg) cam["fov_deg"] = *cfg.camera.fov_deg;
  if (cfg.camera.distance_factor) cam["distance_factor"] = *cfg.camera.distance_factor;
  if (cfg.camera.azimuth_deg) cam["azimuth_deg"] = *cfg.camera.azimuth_deg;
  if (cfg.camera.elevation_deg) cam["elevation_deg"] = *cfg.camera.elevation_deg;
  j["camera"] = cam;
  return j.dump(2) + "\n";
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  const Manifest manifest = load_manifest(cfg.manifest);
  std::filesystem::create_directories(cfg.output);
  write_file(cfg.output / "effective_config.json", config_to_json(cfg));

  std::vector<const CorpusEntry*> entries;
  for (const auto& e : manifest.objects) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(),
            [](const CorpusEntry* a, const CorpusEntry* b) { return a->name < b->name; });

  std::vector<std::optional<ObjectOutput>> outputs(entries.size());
  std::vector<std::string> errors(entries.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < entries.size();) {
      const auto& e = *entries[i];
      try {
        outputs[i] = process(e, cfg);
        std::lock_guard lock(log_mutex);
        spdlog::info("[{}/{}] {} done", i + 1, entries.size(), e.name);
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
        std::lock_guard lock(log_mutex);
        spdlog::error("{}: {}", e.name, ex.what());
      }
    }
  };
  const unsigned n_workers =
      std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(entries.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  PipelineResult res;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!outputs[i]) {
      res.failures.push_back({entries[i]->name, errors[i]});
      continue;
    }
    auto o = std::move(*outputs[i]);
    // Keep measures at their CSV precision so predictions recomputed from
    // measures.csv reproduce predictions.csv exactly.
    for (auto& row : o.measures) {
      for (auto m : kMeasures) row.set(m, csv::parse_number(csv::format_number(row.get(m)), 0));
    }
    res.measures.insert(res.measures.end(), o.measures.begin(), o.measures.end());
    auto preds = preference_predictors({o.measures.begin(), o.measures.end()});
    res.predictions.insert(res.predictions.end(), preds.begin(), preds.end());
    for (const auto& w : o.warnings) {
      spdlog::warn("{}", w);
      res.warnings.push_back(w);
    }
  }

  {
    std::ofstream f(cfg.output / "measures.csv", std::ios::binary);
    write_measures_csv(f, res.measures);
  }
  {
    std::ofstream f(cfg.output / "predictions.csv", std::ios::binary);
    write_predictions_csv(f, res.predictions);
  }
  std::ofstream report(cfg.output / "report.txt", std::ios::binary);
  write_measure_summary(report, res.measures);
  if (cfg.human_csv) {
    const auto rep = correlate_report(res.measures, res.predictions, load_human_csv(*cfg.human_csv));
    save_report(cfg.output / "stats", rep);
    report << "\n";
    write_report_text(report, rep);
  }
  if (!res.failures.empty()) {
    report << "\nFailed objects: " << res.failures.size() << "\n";
    for (const auto& f : res.failures) report << "  " << f.object << ": " << f.message << "\n";
  }
  return res;
}

}  // namespace simpeval

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

// simpeval: command-line front end.
//
// Exit codes: 0 ok, 1 failure (or partial pipeline failure), 2 usage error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "simpeval/error.hpp"
#include "simpeval/geom_fidelity.hpp"
#include "simpeval/image_fidelity.hpp"
#include "simpeval/mesh_io.hpp"
#include "simpeval/pipeline.hpp"
#include "simpeval/predict.hpp"
#include "simpeval/protocol.hpp"
#include "simpeval/render.hpp"
#include "simpeval/report.hpp"
#include "simpeval/server.hpp"
#include "simpeval/shapes.hpp"
#include "simpeval/simplify.hpp"

namespace {

using namespace simpeval;
namespace fs = std::filesystem;

struct UsageError : Error {
  using Error::Error;
};

void write_text(const fs::path& p, const std::string& s) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << s;
  if (!f) throw Error("cannot write " + p.string());
}

void save_mesh(const fs::path& p, const TriMesh& m) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  save_off(p, m);
}

// --------------------------------------------------------------------------

struct StandardizeArgs {
  fs::path in, out;
  std::size_t budget = 3700;
};

int cmd_standardize(const StandardizeArgs& a) {
  const auto r = standardize(load_mesh(a.in), a.budget);
  save_mesh(a.out, r.mesh);
  spdlog::info("{} -> {} faces", a.in.string(), r.achieved_faces);
  return 0;
}

struct SimplifyArgs {
  fs::path in, out;
  std::string algorithm = "qem";
  std::size_t target = 0;
  int level = 0;
  std::uint64_t seed = 0;
};

int cmd_simplify(const SimplifyArgs& a) {
  const auto alg = parse_algorithm(a.algorithm);
  if (!alg) throw UsageError("--algorithm must be qem or vclust");
  if ((a.target == 0) == (a.level == 0)) throw UsageError("give exactly one of --target, --level");
  const TriMesh mesh = load_mesh(a.in);
  SimplifySpec spec{*alg, a.target ? a.target : level_target(mesh.faces.size(), a.level), a.seed};
  const auto r = simplify(mesh, spec);
  if (!r.warning.empty()) spdlog::warn("{}", r.warning);
  save_mesh(a.out, r.mesh);
  fmt::print("faces {}\n", r.achieved_faces);
  return 0;
}

struct RenderArgs {
  fs::path in, out, camera_from;
  bool half = false;
  std::optional<double> fov, distance, azimuth, elevation;
};

int cmd_render(const RenderArgs& a) {
  const TriMesh mesh = load_mesh(a.in);
  CameraOverrides ov;
  ov.fov_deg = a.fov;
  ov.distance_factor = a.distance;
  ov.azimuth_deg = a.azimuth;
  ov.elevation_deg = a.elevation;
  const auto cam = canonical_camera(a.camera_from.empty() ? mesh : load_mesh(a.camera_from), ov);
  const auto img = a.half ? render_pair_half(mesh, cam) : render_stimulus(mesh, cam);
  if (a.out.has_parent_path()) fs::create_directories(a.out.parent_path());
  if (a.out.extension() == ".png") {
    write_text(a.out, encode_png(img));
  } else {
    save_pgm(a.out, img);
  }
  return 0;
}

struct GeomArgs {
  fs::path pivot, approx;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  bool one_sided = false;
};

int cmd_measure_geom(const GeomArgs& a) {
  SurfaceSampler sampler{a.samples, a.seed};
  const auto m = metro_measures(load_mesh(a.pivot), load_mesh(a.approx), sampler,
                                MetroOptions{!a.one_sided});
  fmt::print("metro_mn,metro_mse,metro_max,metro_vol,samples\n{:.9g},{:.9g},{:.9g},{:.9g},{}\n",
             m.metro_mn, m.metro_mse, m.metro_max, m.metro_vol, m.forward.samples);
  if (m.volume_approximate) spdlog::warn("a mesh is open; metro_vol is approximate");
  return 0;
}

struct ImageArgs {
  fs::path a, b, diff_out;
  double ppd = 0.0;
};

int cmd_measure_image(const ImageArgs& a) {
  const auto ia = load_pgm(a.a), ib = load_pgm(a.b);
  ViewParams vp = ViewParams::standard();
  if (a.ppd > 0) vp.pixels_per_degree = a.ppd;
  const auto d = perceptual_diff(ia, ib, vp);
  fmt::print("bm,mse\n{:.9g},{:.9g}\n", summarize_diff(d), mse(ia, ib));
  if (!a.diff_out.empty()) {
    GrayImage g(d.width, d.height);
    g.pixels = d.values;
    save_pgm(a.diff_out, quantize8(g));
  }
  return 0;
}

struct PredictArgs {
  fs::path measures, out;
};

int cmd_predict(const PredictArgs& a) {
  const auto rows = load_measures_csv(a.measures);
  std::map<std::string, std::vector<PairMeasures>> by_obj;
  for (const auto& r : rows) by_obj[r.object].push_back(r);
  std::vector<PreferencePrediction> preds;
  for (const auto& [obj, pm] : by_obj) {
    auto p = preference_predictors(pm);
    preds.insert(preds.end(), p.begin(), p.end());
  }
  if (a.out.empty()) {
    write_predictions_csv(std::cout, preds);
  } else {
    std::ofstream f(a.out, std::ios::binary);
    write_predictions_csv(f, preds);
  }
  return 0;
}

struct StatsArgs {
  fs::path measures, predictions, human, out;
  bool average_levels = false;
  bool iterate_cleaning = false;
};

int cmd_stats(const StatsArgs& a) {
  const auto measures = load_measures_csv(a.measures);
  std::vector<PreferencePrediction> preds;
  if (!a.predictions.empty()) {
    preds = load_predictions_csv(a.predictions);
  } else {
    std::map<std::string, std::vector<PairMeasures>> by_obj;
    for (const auto& r : measures) by_obj[r.object].push_back(r);
    for (const auto& [obj, pm] : by_obj) {
      auto p = preference_predictors(pm);
      preds.insert(preds.end(), p.begin(), p.end());
    }
  }
  ReportOptions opt;
  opt.average_levels = a.average_levels;
  opt.cleaning.iterate = a.iterate_cleaning;
  const auto rep = correlate_report(measures, preds, load_human_csv(a.human), opt);
  if (!a.out.empty()) save_report(a.out, rep);
  write_report_text(std::cout, rep);
  for (const auto& e : rep.join_errors) spdlog::warn("join: {}", e);
  return rep.join_errors.empty() ? 0 : 1;
}

struct ServeArgs {
  fs::path manifest, stimuli, sessions = "sessions", ui;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::uint64_t seed = 0;
};

ExperimentServer* g_server = nullptr;

int cmd_serve(const ServeArgs& a) {
  const auto manifest = load_manifest(a.manifest);
  SessionStore store(a.sessions, StudyDesign::from_manifest(manifest));
  ServerOptions so{a.host, a.port, a.stimuli, a.ui, a.seed};
  ExperimentServer server(store, so);
  const int port = server.bind();
  spdlog::info("serving on http://{}:{} ({} sessions loaded)", a.host, port,
               store.session_ids().size());
  fmt::print("listening {}\n", port);
  std::fflush(stdout);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  server.serve();
  g_server = nullptr;
  return 0;
}

struct RunArgs {
  PipelineConfig cfg;
  std::vector<int> levels = {50, 80};
  std::string human;
  bool no_meshes = false, no_images = false;
};

int cmd_run(RunArgs a) {
  if (a.levels.size() != 2) throw UsageError("--levels needs two values");
  a.cfg.levels = {a.levels[0], a.levels[1]};
  if (!a.human.empty()) a.cfg.human_csv = a.human;
  a.cfg.write_meshes = !a.no_meshes;
  a.cfg.write_images = !a.no_images;
  try {
    a.cfg.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const auto res = run_pipeline(a.cfg);
  spdlog::info("{} objects measured, {} failed, {} warnings",
               res.measures.size() / 4, res.failures.size(), res.warnings.size());
  return res.failures.empty() ? 0 : 1;
}

struct PlanArgs {
  fs::path manifest;
  std::size_t participant = 0;
  std::uint64_t seed = 0;
  std::string task = "all";
  bool check = false;
};

// Headless counterbalancing audit over participants 0..5.
int check_plans(const StudyDesign& d, std::uint64_t seed) {
  bool ok = true;
  std::map<std::pair<std::string, int>, int> cover;
  for (std::size_t p = 0; p < 6; ++p) {
    const auto plan = build_naming_plan(p, d, seed);
    for (const auto& t : plan.trials) {
      if (!t.practice) ++cover[{t.object, t.condition}];
    }
    if (plan.practice_count() != kNamingPractice || plan.real_count() != d.objects.size()) {
      ok = false;
    }
  }
  const bool exact = cover.size() == d.objects.size() * 6 &&
                     std::all_of(cover.begin(), cover.end(), [](auto& kv) { return kv.second == 1; });
  fmt::print("naming: (object, condition) cells {} of {}, each once: {}\n", cover.size(),
             d.objects.size() * 6, exact ? "yes" : "no");
  ok = ok && exact;
  const auto pref = build_preference_plan(0, d, seed);
  std::size_t qleft = 0;
  for (const auto& t : pref.trials) qleft += !t.practice && t.simp_type == SimpType::kQslim;
  fmt::print("preference: {} trials, QEM left {}\n", pref.real_count(), qleft);
  ok = ok && qleft * 2 == pref.real_count();
  const auto rate = build_rating_plan(0, d, seed);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& t : rate.trials) {
    if (!t.practice) pairs.insert({t.object, t.versions[1]});
  }
  fmt::print("rating: {} trials, distinct (object, pair) {}\n", rate.real_count(), pairs.size());
  ok = ok && pairs.size() == rate.real_count() && pairs.size() == d.objects.size() * 4;
  fmt::print("{}\n", ok ? "counterbalancing OK" : "counterbalancing FAILED");
  return ok ? 0 : 1;
}

int cmd_plan(const PlanArgs& a) {
  const auto design = StudyDesign::from_manifest(load_manifest(a.manifest));
  if (a.check) return check_plans(design, a.seed);
  std::vector<TrialPlan> plans;
  if (a.task == "naming" || a.task == "all") plans.push_back(build_naming_plan(a.participant, design, a.seed));
  if (a.task == "rating" || a.task == "all") plans.push_back(build_rating_plan(a.participant, design, a.seed));
  if (a.task == "preference" || a.task == "all") {
    plans.push_back(build_preference_plan(a.participant, design, a.seed));
  }
  if (plans.empty()) throw UsageError("--task must be naming, rating, preference or all");
  fmt::print("id,task,practice,object,object_type,simp_type,simp_level,left,right,condition\n");
  for (const auto& plan : plans) {
    for (const auto& t : plan.trials) {
      fmt::print("{},{},{},{},{},{},{},{},{},{}\n", t.id, to_string(t.task), t.practice ? 1 : 0,
                 t.object, to_string(t.object_type), to_string(t.simp_type), t.simp_level,
                 t.versions[0], t.versions.size() > 1 ? t.versions[1] : "", t.condition);
    }
  }
  return 0;
}

struct CorpusArgs {
  fs::path out = "data/corpus";
};

int cmd_corpus(const CorpusArgs& a) {
  fs::create_directories(a.out);
  nlohmann::json objects = nlohmann::json::array(), practice = nlohmann::json::array();
  auto emit = [&](const shapes::ShapeInfo& s, nlohmann::json& list) {
    const auto mesh = shapes::make(s.name);
    save_off(a.out / (s.name + ".off"), mesh);
    list.push_back({{"name", s.name}, {"file", s.name + ".off"}, {"type", to_string(s.type)}});
    spdlog::info("{}: {} faces", s.name, mesh.faces.size());
  };
  for (const auto& s : shapes::bundled()) emit(s, objects);
  for (const auto& s : shapes::practice()) emit(s, practice);
  write_text(a.out / "manifest.json",
             nlohmann::json{{"objects", objects}, {"practice", practice}}.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("simpeval");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Simplified-model fidelity: simplification, rendering, measures, statistics and "
               "the experiment server"};
  app.set_config("--config", "", "TOML/INI file; [subcommand] sections mirror the flags");
  app.require_subcommand(1);
  // Global flags may also follow the subcommand.
  app.fallthrough();
  bool verbose = false, quiet = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Warnings and errors only");

  StandardizeArgs st;
  auto* c_st = app.add_subcommand("standardize", "QEM-reduce a model to the common face budget");
  c_st->add_option("--in", st.in, "Input mesh (OFF/OBJ/PLY)")->required()->check(CLI::ExistingFile);
  c_st->add_option("--out", st.out, "Output OFF")->required();
  c_st->add_option("--budget", st.budget, "Face budget (triangles)")->capture_default_str();

  SimplifyArgs si;
  auto* c_si = app.add_subcommand("simplify", "Simplify with QEM or vertex clustering");
  c_si->add_option("--in", si.in, "Input mesh")->required()->check(CLI::ExistingFile);
  c_si->add_option("--out", si.out, "Output OFF")->required();
  c_si->add_option("--algorithm", si.algorithm, "qem | vclust")->capture_default_str();
  c_si->add_option("--target", si.target, "Target face count (triangles)");
  c_si->add_option("--level", si.level, "Percent of faces to remove, e.g. 50 or 80")
      ->check(CLI::Range(1, 99));
  c_si->add_option("--seed", si.seed, "Recorded seed (results do not depend on it)");

  RenderArgs re;
  auto* c_re = app.add_subcommand("render", "Render a stimulus image (PGM, or PNG by extension)");
  c_re->add_option("--in", re.in, "Mesh")->required()->check(CLI::ExistingFile);
  c_re->add_option("--out", re.out, "Image path")->required();
  c_re->add_option("--camera-from", re.camera_from, "Frame the camera on this mesh instead")
      ->check(CLI::ExistingFile);
  c_re->add_flag("--half", re.half, "400 x 300 pair half instead of the 591 x 443 stimulus");
  c_re->add_option("--fov", re.fov, "Vertical field of view, degrees");
  c_re->add_option("--distance", re.distance, "Eye distance in bounding-box diagonals");
  c_re->add_option("--azimuth", re.azimuth, "Degrees about +Y, 0 looks from +Z");
  c_re->add_option("--elevation", re.elevation, "Degrees above the horizontal");

  GeomArgs ge;
  auto* c_ge = app.add_subcommand("measure-geom", "Sampled surface distances and volume difference");
  c_ge->add_option("--pivot", ge.pivot, "Reference mesh s")->required()->check(CLI::ExistingFile);
  c_ge->add_option("--approx", ge.approx, "Simplified mesh")->required()->check(CLI::ExistingFile);
  c_ge->add_option("--samples", ge.samples, "Samples per direction (0 = max(100000, 50 x faces))");
  c_ge->add_option("--seed", ge.seed, "Sampling seed")->capture_default_str();
  c_ge->add_flag("--one-sided", ge.one_sided, "Skip the approx -> s pass");

  ImageArgs im;
  auto* c_im = app.add_subcommand("measure-image", "Perceptual difference summary and MSE");
  c_im->add_option("--a", im.a, "First image (PGM)")->required()->check(CLI::ExistingFile);
  c_im->add_option("--b", im.b, "Second image (PGM)")->required()->check(CLI::ExistingFile);
  c_im->add_option("--ppd", im.ppd, "Pixels per degree (default: 17\" 1024 px display at 0.7 m)");
  c_im->add_option("--diff-out", im.diff_out, "Write the probability map as PGM");

  PredictArgs pr;
  auto* c_pr = app.add_subcommand("predict", "p5/p8 preference predictors from measures.csv");
  c_pr->add_option("--measures", pr.measures, "measures.csv")->required()->check(CLI::ExistingFile);
  c_pr->add_option("--out", pr.out, "predictions.csv (stdout if omitted)");

  StatsArgs sa;
  auto* c_sa = app.add_subcommand("stats", "Correlations and ANOVAs against human data");
  c_sa->add_option("--measures", sa.measures, "measures.csv")->required()->check(CLI::ExistingFile);
  c_sa->add_option("--predictions", sa.predictions, "predictions.csv (derived if omitted)")
      ->check(CLI::ExistingFile);
  c_sa->add_option("--human", sa.human, "human.csv")->required()->check(CLI::ExistingFile);
  c_sa->add_option("--out", sa.out, "Directory for correlations.csv, anova.csv, report.txt");
  c_sa->add_flag("--average-levels", sa.average_levels,
                 "One point per object (mean of both levels) instead of two");
  c_sa->add_flag("--iterate-cleaning", sa.iterate_cleaning,
                 "Repeat the 3 SD naming outlier pass until stable");

  ServeArgs se;
  auto* c_se = app.add_subcommand("serve", "Host the experiment protocol over HTTP");
  c_se->add_option("--manifest", se.manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  c_se->add_option("--stimuli", se.stimuli, "Pipeline output directory holding <object>/images")
      ->required();
  c_se->add_option("--sessions", se.sessions, "Session log directory")->capture_default_str();
  c_se->add_option("--ui", se.ui, "Static client files served at /");
  c_se->add_option("--host", se.host, "Bind address")->capture_default_str();
  c_se->add_option("--port", se.port, "Port (0 = any free port)")->capture_default_str();
  c_se->add_option("--seed", se.seed, "Default session seed")->capture_default_str();

  RunArgs ru;
  auto* c_ru = app.add_subcommand("run", "Full pipeline: families, stimuli, measures, report");
  c_ru->add_option("--manifest", ru.cfg.manifest, "Corpus manifest")->required();
  c_ru->add_option("--out", ru.cfg.output, "Output directory")->capture_default_str();
  c_ru->add_option("--budget", ru.cfg.budget, "Standard face budget (triangles)")
      ->capture_default_str();
  c_ru->add_option("--levels", ru.levels, "Two simplification levels, percent removed")
      ->expected(2)
      ->capture_default_str();
  c_ru->add_option("--seed", ru.cfg.seed, "Seed for surface sampling")
      ->capture_default_str();
  c_ru->add_option("--samples", ru.cfg.samples, "Surface samples per direction (0 = automatic)");
  c_ru->add_option("--ppd", ru.cfg.view.pixels_per_degree, "Pixels per degree of visual angle");
  c_ru->add_option("--workers", ru.cfg.workers, "Objects processed in parallel")
      ->capture_default_str();
  c_ru->add_option("--human", ru.human, "human.csv; adds the statistics report");
  c_ru->add_option("--azimuth", ru.cfg.camera.azimuth_deg, "Default azimuth, degrees");
  c_ru->add_option("--elevation", ru.cfg.camera.elevation_deg, "Default elevation, degrees");
  c_ru->add_option("--fov", ru.cfg.camera.fov_deg, "Default vertical field of view, degrees");
  c_ru->add_option("--distance", ru.cfg.camera.distance_factor,
                   "Default eye distance in bounding-box diagonals");
  c_ru->add_flag("--no-meshes", ru.no_meshes, "Skip writing OFF files");
  c_ru->add_flag("--no-images", ru.no_images, "Skip writing PGM stimuli");

  PlanArgs pl;
  auto* c_pl = app.add_subcommand("plan", "Print or audit trial plans without the server");
  c_pl->add_option("--manifest", pl.manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  c_pl->add_option("--participant", pl.participant, "Participant index")->capture_default_str();
  c_pl->add_option("--seed", pl.seed, "Session seed")->capture_default_str();
  c_pl->add_option("--task", pl.task, "naming | rating | preference | all")->capture_default_str();
  c_pl->add_flag("--check", pl.check, "Audit counterbalancing over participants 0-5");

  CorpusArgs co;
  auto* c_co = app.add_subcommand("corpus", "Write the bundled procedural corpus and manifest");
  c_co->add_option("--out", co.out, "Directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  spdlog::set_level(verbose ? spdlog::level::debug
                    : quiet ? spdlog::level::warn
                            : spdlog::level::info);

  try {
    if (*c_st) return cmd_standardize(st);
    if (*c_si) return cmd_simplify(si);
    if (*c_re) return cmd_render(re);
    if (*c_ge) return cmd_measure_geom(ge);
    if (*c_im) return cmd_measure_image(im);
    if (*c_pr) return cmd_predict(pr);
    if (*c_sa) return cmd_stats(sa);
    if (*c_se) return cmd_serve(se);
    if (*c_ru) return cmd_run(ru);
    if (*c_pl) return cmd_plan(pl);
    if (*c_co) return cmd_corpus(co);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 2;
}

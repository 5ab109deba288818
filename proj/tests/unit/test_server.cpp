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

#include <sstream>
#include <thread>

#include "doctest.h"
#include "json.hpp"
#include "simpeval/image.hpp"
#include "simpeval/server.hpp"
#include "support/study.hpp"
#include "support/tempdir.hpp"
// After Eigen: <resolv.h> defines a `_res` macro that clashes with it.
#include "httplib.h"

using namespace simpeval;
using nlohmann::json;

namespace {

// Server on a free port, served from a background thread.
struct Running {
  SessionStore store;
  ExperimentServer server;
  int port = 0;
  std::thread thread;

  Running(const std::filesystem::path& sessions, const std::filesystem::path& stimuli)
      : store(sessions, study::design36()), server(store, [&] {
          ServerOptions o;
          o.port = 0;
          o.stimuli_dir = stimuli;
          o.default_seed = 7;
          return o;
        }()) {
    port = server.bind();
    thread = std::thread([this] { server.serve(); });
  }
  ~Running() {
    server.stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

json to_json(const Trial& t, const ResponsePayload& p) {
  json j{{"trial_id", t.id}, {"token", p.token}, {"protocol_version", kProtocolVersion}};
  if (p.name) j["name"] = *p.name;
  if (p.latency_ms) j["latency_ms"] = *p.latency_ms;
  if (p.rating) j["rating"] = *p.rating;
  if (p.choice) j["choice"] = *p.choice == Side::kLeft ? "left" : "right";
  return j;
}

// Rebuild the trial the server describes from the session's own plan.
const Trial& find(const Session& s, const std::string& id) {
  for (auto task : {Task::kNaming, Task::kRating, Task::kPreference})
    for (const auto& t : s.plan(task).trials)
      if (t.id == id) return t;
  throw std::runtime_error("unknown trial " + id);
}

}  // namespace

TEST_SUITE("server") {

TEST_CASE("scripted session over HTTP") {
  testing::TempDir sessions("http-sessions"), stimuli("http-stimuli");
  Running srv(sessions.path(), stimuli.path());
  auto cli = srv.client();

  auto created = cli.Post("/api/v1/sessions", R"({"participant": 2})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const auto cj = json::parse(created->body);
  const std::string sid = cj.at("session_id");
  CHECK(cj.at("participant") == 2);
  CHECK(cj.at("seed") == 7);
  CHECK(cj.at("protocol_version") == kProtocolVersion);

  // A local mirror of the session gives the scripted answers.
  const Session mirror({sid, 2, 7}, study::design36());
  std::vector<std::string> tasks_seen;
  int k = 0;
  for (;;) {
    auto next = cli.Get(("/api/v1/sessions/" + sid + "/next").c_str());
    REQUIRE(next);
    REQUIRE(next->status == 200);
    const auto nj = json::parse(next->body);
    if (nj.at("complete").get<bool>()) break;
    const std::string task = nj.at("task");
    if (tasks_seen.empty() || tasks_seen.back() != task) tasks_seen.push_back(task);
    const auto& tj = nj.at("trial");
    const Trial& t = find(mirror, tj.at("id"));
    if (t.task == Task::kNaming) {
      CHECK(tj.at("layout") == "single");
      CHECK(tj.at("timing").at("fixation_ms") == kFixationMs);
    } else {
      CHECK(tj.at("layout") == "pair");
      CHECK(tj.at("timing").at("delay_ms") == kDelayMs);
    }
    const auto body = to_json(t, study::answer(t, "tok" + std::to_string(k++))).dump();
    auto res = cli.Post(("/api/v1/sessions/" + sid + "/responses").c_str(), body, "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    CHECK(json::parse(res->body).at("replayed") == false);

    if (k == 3) {
      // Same token again: replayed, not an error.
      auto again = cli.Post(("/api/v1/sessions/" + sid + "/responses").c_str(), body, "application/json");
      CHECK(again->status == 200);
      CHECK(json::parse(again->body).at("replayed") == true);
      // Different token for the answered trial: conflict.
      auto dup = to_json(t, study::answer(t, "fresh"));
      auto conflict = cli.Post(("/api/v1/sessions/" + sid + "/responses").c_str(), dup.dump(), "application/json");
      CHECK(conflict->status == 409);
      CHECK(json::parse(conflict->body).at("error").at("code") == "duplicate");
    }
    if (k == 60) {
      // The current trial is a rating trial; an out-of-range value is refused.
      auto nx = json::parse(cli.Get(("/api/v1/sessions/" + sid + "/next").c_str())->body);
      const Trial& rt = find(mirror, nx.at("trial").at("id"));
      if (rt.task == Task::kRating) {
        auto bad = to_json(rt, study::answer(rt, "bad"));
        bad["rating"] = 9;
        auto r = cli.Post(("/api/v1/sessions/" + sid + "/responses").c_str(), bad.dump(), "application/json");
        CHECK(r->status == 422);
      }
      // Skipping ahead is refused.
      const auto& last = mirror.plan(Task::kPreference).trials.back();
      auto skip = to_json(last, study::answer(last, "skip"));
      auto r2 = cli.Post(("/api/v1/sessions/" + sid + "/responses").c_str(), skip.dump(), "application/json");
      CHECK(r2->status == 409);
      CHECK(json::parse(r2->body).at("error").at("code") == "out_of_order");
    }
  }
  CHECK(tasks_seen == std::vector<std::string>{"naming", "rating", "preference"});

  auto exp = cli.Get(("/api/v1/sessions/" + sid + "/export").c_str());
  REQUIRE(exp);
  CHECK(exp->get_header_value("Content-Type").find("text/csv") == 0);
  std::istringstream in(exp->body);
  const auto rows = read_human_csv(in);
  CHECK(rows.size() == 36 + 144 + 72);
  auto all = cli.Get("/api/v1/export");
  CHECK(all->body == exp->body);
}

TEST_CASE("errors and stimuli") {
  testing::TempDir sessions("http-sessions"), stimuli("http-stimuli");
  GrayImage img(8, 6, 0.25);
  img.at(3, 2) = 1.0;
  std::filesystem::create_directories(stimuli / "dog" / "images");
  save_pgm(stimuli / "dog" / "images" / "q5.pgm", img);
  save_pgm(stimuli / "dog" / "images" / "q5_half.pgm", GrayImage(40, 30, 0.5));
  save_pgm(stimuli / "dog" / "images" / "v5_half.pgm", GrayImage(40, 30, 0.75));
  Running srv(sessions.path(), stimuli.path());
  auto cli = srv.client();

  auto nf = cli.Get("/api/v1/sessions/s4242/next");
  CHECK(nf->status == 404);
  CHECK(json::parse(nf->body).at("error").at("code") == "not_found");

  const std::string sid = json::parse(cli.Post("/api/v1/sessions", "", "application/json")->body).at("session_id");
  auto garbage = cli.Post(("/api/v1/sessions/" + sid + "/responses").c_str(), "{not json", "application/json");
  CHECK(garbage->status == 400);
  auto version = cli.Post(("/api/v1/sessions/" + sid + "/responses").c_str(),
                          R"({"trial_id": "naming-practice-1", "protocol_version": 99})", "application/json");
  CHECK(version->status == 400);

  auto png = cli.Get("/stimuli/dog/q5.png");
  REQUIRE(png);
  CHECK(png->status == 200);
  CHECK(png->get_header_value("Content-Type") == "image/png");
  CHECK(png->body == encode_png(img));
  auto pair = cli.Get("/stimuli/dog/pair/q5/v5.png");
  REQUIRE(pair);
  CHECK(pair->status == 200);
  CHECK(pair->body.substr(1, 3) == "PNG");
  CHECK(cli.Get("/stimuli/dog/v8.png")->status == 404);
  CHECK(cli.Get("/stimuli/cat/q5.png")->status == 404);
}

}  // TEST_SUITE

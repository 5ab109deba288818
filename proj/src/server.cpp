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

#include "simpeval/server.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "httplib.h"
#include "json.hpp"
#include "simpeval/image.hpp"
#include "simpeval/render.hpp"

namespace simpeval {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, json body) {
  body["protocol_version"] = kProtocolVersion;
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& message) {
  send_json(res, status, json{{"error", {{"code", code}, {"message", message}}}});
}

int http_status(ProtocolError::Code c) {
  switch (c) {
    case ProtocolError::Code::kNotFound: return 404;
    case ProtocolError::Code::kInvalidPayload: return 422;
    default: return 409;
  }
}

std::string task_slug(Task t) {
  std::string s(to_string(t));
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

json response_schema(Task t) {
  switch (t) {
    case Task::kNaming:
      return {{"name", "string typed by the participant"},
              {"latency_ms", "number, stimulus paint to first keypress"},
              {"spoiled", "bool, true when no valid keypress was captured"}};
    case Task::kRating:
      return {{"rating", "integer 1..7, keys 1-7"}};
    case Task::kPreference:
      return {{"choice", "\"left\" (key A) or \"right\" (key K)"}};
  }
  return {};
}

json trial_json(const Trial& t) {
  json j{{"id", t.id},
         {"task", task_slug(t.task)},
         {"practice", t.practice},
         {"timing", {{"fixation_ms", t.fixation_ms}, {"delay_ms", t.delay_ms}}},
         {"response_schema", response_schema(t.task)}};
  const std::string base = "/stimuli/" + t.object + "/";
  if (t.versions.size() == 1) {
    j["layout"] = "single";
    j["images"] = {base + t.versions[0] + ".png"};
    j["image_size"] = {kStimulusWidth, kStimulusHeight};
  } else {
    j["layout"] = "pair";
    j["images"] = {base + t.versions[0] + "_half.png", base + t.versions[1] + "_half.png"};
    j["composite"] = base + "pair/" + t.versions[0] + "/" + t.versions[1] + ".png";
    j["panel_size"] = {kPanelWidth, kPanelHeight};
  }
  return j;
}

template <class T>
std::optional<T> opt(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

ResponsePayload parse_payload(const json& j) {
  ResponsePayload p;
  p.token = j.value("token", "");
  p.name = opt<std::string>(j, "name");
  p.latency_ms = opt<double>(j, "latency_ms");
  p.rating = opt<int>(j, "rating");
  p.spoiled = j.value("spoiled", false);
  if (auto c = opt<std::string>(j, "choice")) {
    if (*c == "left") {
      p.choice = Side::kLeft;
    } else if (*c == "right") {
      p.choice = Side::kRight;
    } else {
      throw ProtocolError(ProtocolError::Code::kInvalidPayload, "choice must be left or right");
    }
  }
  return p;
}

}  // namespace

struct ExperimentServer::Impl {
  SessionStore& store;
  ServerOptions options;
  httplib::Server http;
  std::mutex png_mutex;
  std::map<std::string, std::string> png_cache;

  Impl(SessionStore& s, ServerOptions o) : store(s), options(std::move(o)) { routes(); }

  const std::string& png_for(const std::string& key, const std::function<GrayImage()>& make) {
    std::lock_guard lock(png_mutex);
    auto it = png_cache.find(key);
    if (it == png_cache.end()) it = png_cache.emplace(key, encode_png(make())).first;
    return it->second;
  }

  std::filesystem::path pgm(const std::string& object, const std::string& file) const {
    auto p = options.stimuli_dir / object / "images" / (file + ".pgm");
    if (!std::filesystem::exists(p)) {
      throw ProtocolError(ProtocolError::Code::kNotFound, "no stimulus " + object + "/" + file);
    }
    return p;
  }

  template <class Fn>
  void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const ProtocolError& e) {
      send_error(res, http_status(e.code()), to_string(e.code()), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const std::exception& e) {
      spdlog::error("request failed: {}", e.what());
      send_error(res, 500, "internal", e.what());
    }
  }

  void routes() {
    http.Post("/api/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = req.body.empty() ? json::object() : json::parse(req.body);
        auto participant = opt<std::size_t>(body, "participant");
        const auto seed = opt<std::uint64_t>(body, "seed").value_or(options.default_seed);
        const auto info = store.create(participant, seed);
        spdlog::info("session {} created (participant {})", info.id, info.participant);
        send_json(res, 201, json{{"session_id", info.id},
                                 {"participant", info.participant},
                                 {"seed", info.seed},
                                 {"tasks", {"naming", "rating", "preference"}}});
      });
    });

    http.Get(R"(/api/v1/sessions/([A-Za-z0-9_-]+)/next)",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 store.with_session(req.matches[1], [&](SessionStore::Entry& e) {
                   const auto& s = e.session;
                   json body{{"session_id", s.info().id},
                             {"responded", s.responded()},
                             {"total", s.total_trials()}};
                   const Trial* t = s.current();
                   body["complete"] = t == nullptr;
                   if (t) {
                     const auto& plan = s.plan(t->task);
                     std::size_t idx = 0;
                     while (&plan.trials[idx] != t) ++idx;
                     body["task"] = task_slug(t->task);
                     body["progress"] = {{"index", idx}, {"count", plan.trials.size()},
                                         {"practice_count", plan.practice_count()}};
                     body["trial"] = trial_json(*t);
                   }
                   send_json(res, 200, body);
                 });
               });
             });

    http.Post(R"(/api/v1/sessions/([A-Za-z0-9_-]+)/responses)",
              [this](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const json body = json::parse(req.body);
                  if (body.contains("protocol_version") &&
                      body["protocol_version"] != kProtocolVersion) {
                    send_error(res, 400, "bad_request", "unsupported protocol_version");
                    return;
                  }
                  const auto trial_id = body.at("trial_id").get<std::string>();
                  auto payload = parse_payload(body);
                  store.with_session(req.matches[1], [&](SessionStore::Entry& e) {
                    bool replayed = false;
                    if (e.session.replay(trial_id, payload.token)) {
                      replayed = true;
                    } else {
                      store.submit(e, trial_id, std::move(payload));
                    }
                    send_json(res, 200, json{{"accepted", true},
                                             {"replayed", replayed},
                                             {"trial_id", trial_id},
                                             {"complete", e.session.complete()}});
                  });
                });
              });

    http.Get(R"(/api/v1/sessions/([A-Za-z0-9_-]+)/export)",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 std::ostringstream out;
                 store.with_session(req.matches[1], [&](SessionStore::Entry& e) {
                   write_human_csv(out, e.session.export_rows());
                 });
                 res.set_content(out.str(), "text/csv");
               });
             });

    http.Get("/api/v1/export", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        std::ostringstream out;
        write_human_csv(out, store.export_all());
        res.set_content(out.str(), "text/csv");
      });
    });

    http.Get(R"(/stimuli/([A-Za-z0-9_-]+)/pair/([a-z0-9]+)/([a-z0-9]+)\.png)",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 const std::string obj = req.matches[1], l = req.matches[2], r = req.matches[3];
                 const auto lp = pgm(obj, l + "_half"), rp = pgm(obj, r + "_half");
                 const auto& png = png_for(obj + "/pair/" + l + "/" + r, [&] {
                   return compose_pair(load_pgm(lp), load_pgm(rp));
                 });
                 res.set_content(png, "image/png");
               });
             });

    http.Get(R"(/stimuli/([A-Za-z0-9_-]+)/([a-z0-9_]+)\.png)",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 const std::string obj = req.matches[1], file = req.matches[2];
                 const auto p = pgm(obj, file);
                 res.set_content(png_for(obj + "/" + file, [&] { return load_pgm(p); }),
                                 "image/png");
               });
             });

    if (!options.ui_dir.empty()) http.set_mount_point("/", options.ui_dir.string());
  }
};

ExperimentServer::ExperimentServer(SessionStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

ExperimentServer::~ExperimentServer() { stop(); }

int ExperimentServer::bind() {
  int port = impl_->options.port;
  if (port == 0) {
    port = impl_->http.bind_to_any_port(impl_->options.host);
    if (port < 0) throw Error("cannot bind " + impl_->options.host);
  } else if (!impl_->http.bind_to_port(impl_->options.host, port)) {
    throw Error(fmt::format("cannot bind {}:{}", impl_->options.host, port));
  }
  return port;
}

void ExperimentServer::serve() { impl_->http.listen_after_bind(); }

void ExperimentServer::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace simpeval

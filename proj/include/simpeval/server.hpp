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

#ifndef SIMPEVAL_SERVER_HPP_
#define SIMPEVAL_SERVER_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "simpeval/protocol.hpp"

namespace simpeval {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Pipeline output tree: <object>/images/<tag>.pgm and <tag>_half.pgm.
  std::filesystem::path stimuli_dir;
  // Optional static files (the browser client) served at "/".
  std::filesystem::path ui_dir;
  std::uint64_t default_seed = 0;
};

// JSON over HTTP, protocol_version 1:
//
//   POST /api/v1/sessions                  {participant?, seed?} -> session
//   GET  /api/v1/sessions/{id}/next        -> current trial or {complete: true}
//   POST /api/v1/sessions/{id}/responses   {trial_id, token, ...} -> ack
//   GET  /api/v1/sessions/{id}/export      -> human.csv for one session
//   GET  /api/v1/export                    -> human.csv for all sessions
//   GET  /stimuli/{object}/{tag}.png, /stimuli/{object}/pair/{left}/{right}.png
class ExperimentServer {
 public:
  ExperimentServer(SessionStore& store, ServerOptions options);
  ~ExperimentServer();
  ExperimentServer(const ExperimentServer&) = delete;
  ExperimentServer& operator=(const ExperimentServer&) = delete;

  // Binds and returns the port (throws Error on failure).
  int bind();
  // Serves until stop(); call after bind().
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace simpeval

#endif  // SIMPEVAL_SERVER_HPP_

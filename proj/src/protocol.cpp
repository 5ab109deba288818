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

#include "simpeval/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "json.hpp"
#include "simpeval/rng.hpp"

namespace simpeval {

using nlohmann::json;

StudyDesign StudyDesign::from_manifest(const Manifest& m, std::array<int, 2> levels) {
  StudyDesign d;
  for (const auto& e : m.objects) d.objects.push_back({e.name, e.type});
  for (const auto& e : m.practice) d.practice.push_back({e.name, e.type});
  d.levels = levels;
  return d;
}

std::size_t TrialPlan::practice_count() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const Trial& t) { return t.practice; }));
}

SimpType naming_condition_type(int c) { return c / 3 == 0 ? SimpType::kQslim : SimpType::kVclust; }

int naming_condition_level(int c, const std::array<int, 2>& levels) {
  const int i = c % 3;
  return i == 0 ? 0 : levels[static_cast<std::size_t>(i - 1)];
}

namespace {

enum Stream : std::uint64_t { kNamingStream = 1, kRatingStream = 2, kPreferenceStream = 3 };

std::string version_tag(SimpType t, int level_index) {
  return std::string(t == SimpType::kQslim ? "q" : "v") + (level_index == 0 ? "5" : "8");
}

int level_index(const StudyDesign& d, int level) { return level == d.levels[0] ? 0 : 1; }

const std::vector<StudyObject>& practice_pool(const StudyDesign& d) {
  if (!d.practice.empty()) return d.practice;
  if (d.objects.empty()) throw InvalidArgument("study design has no objects");
  return d.objects;
}

void check_design(const StudyDesign& d) {
  if (d.objects.empty()) throw InvalidArgument("study design has no objects");
  if (!(d.levels[0] > 0 && d.levels[0] < d.levels[1] && d.levels[1] < 100)) {
    throw InvalidArgument("levels must satisfy 0 < l5 < l8 < 100");
  }
  std::set<std::string> names;
  for (const auto& o : d.objects) {
    if (!names.insert(o.name).second) throw InvalidArgument("duplicate object " + o.name);
  }
}

Trial naming_trial(const StudyObject& o, int c, const StudyDesign& d) {
  Trial t;
  t.task = Task::kNaming;
  t.object = o.name;
  t.object_type = o.type;
  t.condition = c;
  t.simp_level = naming_condition_level(c, d.levels);
  t.simp_type = t.simp_level == 0 ? SimpType::kNone : naming_condition_type(c);
  t.versions = {t.simp_level == 0 ? "s" : version_tag(t.simp_type, level_index(d, t.simp_level))};
  t.fixation_ms = kFixationMs;
  return t;
}

void number(std::vector<Trial>& trials, std::string_view task, bool practice) {
  std::size_t i = 0;
  for (auto& t : trials) {
    t.practice = practice;
    t.id = practice ? fmt::format("{}-practice-{}", task, ++i) : fmt::format("{}-{:03}", task, ++i);
  }
}

std::string_view task_slug(Task t) {
  return t == Task::kNaming ? "naming" : t == Task::kRating ? "rating" : "preference";
}

TrialPlan assemble(Task task, std::vector<Trial> practice, std::vector<Trial> real) {
  number(practice, task_slug(task), true);
  number(real, task_slug(task), false);
  TrialPlan plan{task, std::move(practice)};
  plan.trials.insert(plan.trials.end(), std::make_move_iterator(real.begin()),
                     std::make_move_iterator(real.end()));
  return plan;
}

Trial rating_trial(const StudyObject& o, SimpType st, int li, const StudyDesign& d) {
  Trial t;
  t.task = Task::kRating;
  t.object = o.name;
  t.object_type = o.type;
  t.simp_type = st;
  t.simp_level = d.levels[static_cast<std::size_t>(li)];
  t.versions = {"s", version_tag(st, li)};
  t.delay_ms = kDelayMs;
  return t;
}

Trial preference_trial(const StudyObject& o, int li, bool qslim_left, const StudyDesign& d) {
  Trial t;
  t.task = Task::kPreference;
  t.object = o.name;
  t.object_type = o.type;
  t.simp_type = qslim_left ? SimpType::kQslim : SimpType::kVclust;
  t.simp_level = d.levels[static_cast<std::size_t>(li)];
  const auto q = version_tag(SimpType::kQslim, li), v = version_tag(SimpType::kVclust, li);
  t.versions = qslim_left ? std::vector{q, v} : std::vector{v, q};
  t.delay_ms = kDelayMs;
  return t;
}

}  // namespace

TrialPlan build_naming_plan(std::size_t participant, const StudyDesign& design,
                            std::uint64_t seed) {
  check_design(design);
  std::vector<StudyObject> animals, artifacts;
  for (const auto& o : design.objects) {
    (o.type == ObjectType::kAnimal ? animals : artifacts).push_back(o);
  }
  if (animals.size() % kNamingGroups || artifacts.size() % kNamingGroups) {
    throw InvalidArgument(fmt::format(
        "naming groups need object counts per type divisible by 6 (have {} animals, {} artifacts)",
        animals.size(), artifacts.size()));
  }
  const std::size_t ka = animals.size() / kNamingGroups, kr = artifacts.size() / kNamingGroups;
  const auto rot = static_cast<int>(participant % kNamingGroups);

  std::vector<Trial> real;
  for (int g = 0; g < kNamingGroups; ++g) {
    const int c = (g + rot) % kNamingGroups;
    for (std::size_t i = 0; i < ka; ++i) real.push_back(naming_trial(animals[g * ka + i], c, design));
    for (std::size_t i = 0; i < kr; ++i) {
      real.push_back(naming_trial(artifacts[g * kr + i], c, design));
    }
  }
  Rng rng(mix_seed(mix_seed(seed, kNamingStream), static_cast<std::uint64_t>(rot)));
  rng.shuffle(real.begin(), real.end());

  const auto& pool = practice_pool(design);
  std::vector<Trial> practice;
  for (std::size_t i = 0; i < kNamingPractice; ++i) {
    practice.push_back(naming_trial(pool[i % pool.size()], int(i % 6), design));
  }
  return assemble(Task::kNaming, std::move(practice), std::move(real));
}

TrialPlan build_rating_plan(std::size_t participant, const StudyDesign& design,
                            std::uint64_t seed) {
  check_design(design);
  std::vector<Trial> real;
  for (const auto& o : design.objects) {
    for (SimpType st : {SimpType::kQslim, SimpType::kVclust}) {
      for (int li = 0; li < 2; ++li) real.push_back(rating_trial(o, st, li, design));
    }
  }
  Rng rng(mix_seed(mix_seed(seed, kRatingStream), participant));
  rng.shuffle(real.begin(), real.end());

  const auto& pool = practice_pool(design);
  std::vector<Trial> practice;
  for (std::size_t i = 0; i < kRatingPractice; ++i) {
    practice.push_back(rating_trial(pool[i % pool.size()],
                                    i % 2 ? SimpType::kVclust : SimpType::kQslim, int(i / 2 % 2),
                                    design));
  }
  return assemble(Task::kRating, std::move(practice), std::move(real));
}

TrialPlan build_preference_plan(std::size_t participant, const StudyDesign& design,
                                std::uint64_t seed) {
  check_design(design);
  std::vector<std::pair<const StudyObject*, int>> items;
  for (const auto& o : design.objects) {
    for (int li = 0; li < 2; ++li) items.emplace_back(&o, li);
  }
  Rng rng(mix_seed(mix_seed(seed, kPreferenceStream), participant));
  rng.shuffle(items.begin(), items.end());
  std::vector<Trial> real;
  for (std::size_t i = 0; i < items.size(); i += 2) {
    const bool first_left = rng.below(2) == 0;
    real.push_back(preference_trial(*items[i].first, items[i].second, first_left, design));
    if (i + 1 < items.size()) {
      real.push_back(
          preference_trial(*items[i + 1].first, items[i + 1].second, !first_left, design));
    }
  }

  const auto& pool = practice_pool(design);
  std::vector<Trial> practice;
  for (std::size_t i = 0; i < kPreferencePractice; ++i) {
    practice.push_back(preference_trial(pool[i % pool.size()], int(i / 2 % 2), i % 2 == 0, design));
  }
  return assemble(Task::kPreference, std::move(practice), std::move(real));
}

std::string_view to_string(ProtocolError::Code c) {
  switch (c) {
    case ProtocolError::Code::kOutOfOrder: return "out_of_order";
    case ProtocolError::Code::kInvalidPayload: return "invalid_payload";
    case ProtocolError::Code::kDuplicate: return "duplicate";
    case ProtocolError::Code::kComplete: return "session_complete";
    case ProtocolError::Code::kNotFound: return "not_found";
  }
  return "";
}

bool names_match(std::string_view typed, std::string_view object) {
  auto letters = [](std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
      if (std::isalpha(c)) out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
  };
  const auto t = letters(typed), o = letters(object);
  if (o.empty()) return false;
  // "a cow" and "cows" both count.
  return t.find(o) != std::string::npos;
}

// ---------------------------------------------------------------------------

Session::Session(SessionInfo info, const StudyDesign& design) : info_(std::move(info)) {
  plans_[0] = build_naming_plan(info_.participant, design, info_.seed);
  plans_[1] = build_rating_plan(info_.participant, design, info_.seed);
  plans_[2] = build_preference_plan(info_.participant, design, info_.seed);
  for (const auto& p : plans_) {
    for (const auto& t : p.trials) order_.push_back(&t);
  }
}

const Trial* Session::current() const {
  return records_.size() < order_.size() ? order_[records_.size()] : nullptr;
}

std::size_t Session::total_trials() const { return order_.size(); }

const Trial* Session::find_trial(const std::string& id) const {
  for (const auto* t : order_) {
    if (t->id == id) return t;
  }
  return nullptr;
}

const ResponseRecord* Session::replay(const std::string& trial_id,
                                      const std::string& token) const {
  if (token.empty()) return nullptr;
  for (const auto& r : records_) {
    if (r.trial_id == trial_id && r.payload.token == token) return &r;
  }
  return nullptr;
}

const ResponseRecord& Session::record(const std::string& trial_id, ResponsePayload payload,
                                      std::string server_time) {
  using Code = ProtocolError::Code;
  const Trial* trial = find_trial(trial_id);
  if (!trial) throw ProtocolError(Code::kNotFound, "unknown trial " + trial_id);
  for (const auto& r : records_) {
    if (r.trial_id == trial_id) throw ProtocolError(Code::kDuplicate, trial_id + " already answered");
  }
  const Trial* cur = current();
  if (!cur) throw ProtocolError(Code::kComplete, "session is complete");
  if (cur != trial) {
    throw ProtocolError(Code::kOutOfOrder,
                        fmt::format("expected a response to {}, got {}", cur->id, trial_id));
  }
  auto invalid = [](const std::string& m) { return ProtocolError(Code::kInvalidPayload, m); };
  if (payload.latency_ms && !(std::isfinite(*payload.latency_ms) && *payload.latency_ms >= 0.0)) {
    throw invalid("latency_ms must be a finite non-negative number");
  }
  switch (trial->task) {
    case Task::kNaming:
      if (!payload.spoiled) {
        if (!payload.name) throw invalid("naming needs a name");
        if (!payload.latency_ms) throw invalid("naming needs latency_ms");
        if (*payload.latency_ms < kMinLatencyMs || *payload.latency_ms > kMaxLatencyMs) {
          throw invalid(fmt::format("latency {} ms outside [{}, {}]", *payload.latency_ms,
                                    kMinLatencyMs, kMaxLatencyMs));
        }
      }
      break;
    case Task::kRating:
      if (!payload.rating) throw invalid("rating needs a rating");
      if (*payload.rating < 1 || *payload.rating > 7) {
        throw invalid(fmt::format("rating {} outside 1..7", *payload.rating));
      }
      break;
    case Task::kPreference:
      if (!payload.choice) throw invalid("preference needs a choice");
      break;
  }
  if (server_time.empty()) server_time = utc_now_iso8601();
  records_.push_back({trial_id, std::move(payload), std::move(server_time)});
  return records_.back();
}

std::vector<HumanResponse> Session::export_rows() const {
  std::vector<HumanResponse> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Trial& t = *order_[i];
    if (t.practice) continue;
    const auto& p = records_[i].payload;
    HumanResponse h;
    h.participant = info_.id;
    h.object = t.object;
    h.object_type = t.object_type;
    h.simp_type = t.simp_type;
    h.simp_level = t.simp_level;
    h.task = t.task;
    switch (t.task) {
      case Task::kNaming:
        h.spoiled = p.spoiled;
        h.value = p.latency_ms.value_or(0.0);
        h.error = !p.spoiled && !names_match(p.name.value_or(""), t.object);
        h.variant = "typed-onset";
        break;
      case Task::kRating:
        h.value = *p.rating;
        break;
      case Task::kPreference: {
        const SimpType other =
            t.simp_type == SimpType::kQslim ? SimpType::kVclust : SimpType::kQslim;
        h.choice = *p.choice == Side::kLeft ? t.simp_type : other;
        break;
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

json to_json(const ResponseRecord& r) {
  json j{{"kind", "response"},
         {"trial_id", r.trial_id},
         {"token", r.payload.token},
         {"spoiled", r.payload.spoiled},
         {"server_time", r.server_time}};
  if (r.payload.name) j["name"] = *r.payload.name;
  if (r.payload.latency_ms) j["latency_ms"] = *r.payload.latency_ms;
  if (r.payload.rating) j["rating"] = *r.payload.rating;
  if (r.payload.choice) j["choice"] = *r.payload.choice == Side::kLeft ? "left" : "right";
  return j;
}

ResponseRecord record_from_json(const json& j) {
  ResponseRecord r;
  r.trial_id = j.at("trial_id").get<std::string>();
  r.server_time = j.value("server_time", "");
  r.payload.token = j.value("token", "");
  r.payload.spoiled = j.value("spoiled", false);
  if (j.contains("name")) r.payload.name = j["name"].get<std::string>();
  if (j.contains("latency_ms")) r.payload.latency_ms = j["latency_ms"].get<double>();
  if (j.contains("rating")) r.payload.rating = j["rating"].get<int>();
  if (j.contains("choice")) {
    r.payload.choice = j["choice"].get<std::string>() == "left" ? Side::kLeft : Side::kRight;
  }
  return r;
}

void append_line(const std::filesystem::path& file, const json& j) {
  std::ofstream f(file, std::ios::app | std::ios::binary);
  f << j.dump() << '\n';
  f.flush();
  if (!f) throw Error("cannot append to " + file.string());
}

}  // namespace

std::string utc_now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch()).count() % 1000;
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}.{:03}Z", tm.tm_year + 1900, tm.tm_mon + 1,
                     tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, ms);
}

SessionStore::SessionStore(std::filesystem::path dir, StudyDesign design)
    : dir_(std::move(dir)), design_(std::move(design)) {
  std::filesystem::create_directories(dir_);
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    if (e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) load(f);
}

void SessionStore::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) return;
  std::shared_ptr<Entry> entry;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    json j;
    try {
      j = json::parse(lines[i]);
    } catch (const json::exception&) {
      // A torn final line from a crash is dropped; anything else is corruption.
      if (i + 1 == lines.size()) {
        spdlog::warn("{}: dropping unparsable final line", file.string());
        break;
      }
      throw ParseError(file.string() + ": bad JSON line", i + 1);
    }
    const auto kind = j.value("kind", "");
    if (i == 0) {
      if (kind != "session") throw ParseError(file.string() + ": missing session header", 1);
      SessionInfo info{j.at("id").get<std::string>(), j.at("participant").get<std::size_t>(),
                       j.at("seed").get<std::uint64_t>()};
      entry = std::make_shared<Entry>(Session(info, design_), file);
    } else if (kind == "response") {
      auto r = record_from_json(j);
      entry->session.record(r.trial_id, std::move(r.payload), std::move(r.server_time));
    } else {
      throw ParseError(file.string() + ": unknown record kind '" + kind + "'", i + 1);
    }
  }
  const auto id = entry->session.info().id;
  sessions_.emplace(id, std::move(entry));
}

SessionInfo SessionStore::create(std::optional<std::size_t> participant, std::uint64_t seed) {
  std::lock_guard lock(mutex_);
  std::size_t n = sessions_.size();
  std::string id;
  do {
    id = fmt::format("s{:04}", n++);
  } while (sessions_.count(id) || std::filesystem::exists(dir_ / (id + ".jsonl")));
  SessionInfo info{id, participant.value_or(sessions_.size()), seed};
  auto entry = std::make_shared<Entry>(Session(info, design_), dir_ / (id + ".jsonl"));
  append_line(entry->file, json{{"kind", "session"},
                                {"protocol_version", kProtocolVersion},
                                {"id", info.id},
                                {"participant", info.participant},
                                {"seed", info.seed},
                                {"created", utc_now_iso8601()}});
  sessions_.emplace(id, std::move(entry));
  return info;
}

std::shared_ptr<SessionStore::Entry> SessionStore::lookup(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw ProtocolError(ProtocolError::Code::kNotFound, "unknown session " + id);
  }
  return it->second;
}

const ResponseRecord& SessionStore::submit(Entry& e, const std::string& trial_id,
                                           ResponsePayload payload) {
  const auto& rec = e.session.record(trial_id, std::move(payload));
  append_line(e.file, to_json(rec));
  return rec;
}

std::vector<std::string> SessionStore::session_ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, e] : sessions_) ids.push_back(id);
  return ids;
}

std::vector<HumanResponse> SessionStore::export_all() const {
  std::vector<HumanResponse> out;
  for (const auto& id : session_ids()) {
    auto e = lookup(id);
    std::lock_guard lock(e->mutex);
    auto rows = e->session.export_rows();
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

}  // namespace simpeval

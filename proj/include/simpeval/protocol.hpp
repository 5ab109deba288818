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

#ifndef SIMPEVAL_PROTOCOL_HPP_
#define SIMPEVAL_PROTOCOL_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "simpeval/corpus.hpp"
#include "simpeval/error.hpp"
#include "simpeval/stats.hpp"

namespace simpeval {

inline constexpr int kProtocolVersion = 1;
inline constexpr int kFixationMs = 750;
inline constexpr int kDelayMs = 250;
inline constexpr std::size_t kNamingPractice = 8;
inline constexpr std::size_t kRatingPractice = 4;
inline constexpr std::size_t kPreferencePractice = 4;
inline constexpr int kNamingGroups = 6;
// Server-side sanity bounds on client latencies (ms).
inline constexpr double kMinLatencyMs = 50.0;
inline constexpr double kMaxLatencyMs = 60000.0;

struct StudyObject {
  std::string name;
  ObjectType type = ObjectType::kAnimal;
};

// What the plans draw on: real objects, practice objects (falls back to the
// real ones when the manifest lists none) and the two simplification levels.
struct StudyDesign {
  std::vector<StudyObject> objects;
  std::vector<StudyObject> practice;
  std::array<int, 2> levels = {50, 80};

  static StudyDesign from_manifest(const Manifest& m, std::array<int, 2> levels = {50, 80});
};

enum class Side { kLeft, kRight };

struct Trial {
  std::string id;  // unique within a session, e.g. "rating-017"
  Task task = Task::kNaming;
  bool practice = false;
  std::string object;
  ObjectType object_type = ObjectType::kAnimal;
  // Naming: the version shown. Rating: the non-standard version.
  // Preference: the algorithm on the left.
  SimpType simp_type = SimpType::kNone;
  int simp_level = 0;
  std::vector<std::string> versions;  // one (naming) or left, right
  int condition = -1;                 // naming only: 0..5
  int fixation_ms = 0;
  int delay_ms = 0;
};

struct TrialPlan {
  Task task = Task::kNaming;
  std::vector<Trial> trials;  // practice first

  std::size_t practice_count() const;
  std::size_t real_count() const { return trials.size() - practice_count(); }
};

// Naming condition c in 0..5: simp type c / 3 (QSLIM, VCLUST) and level
// index c % 3 over {0, levels[0], levels[1]}. Both level-0 conditions show
// the standard.
SimpType naming_condition_type(int c);
int naming_condition_level(int c, const std::array<int, 2>& levels);

// Objects of each type are split in order into six groups; group g gets
// condition (g + participant) mod 6. Presentation order is shuffled with a
// stream of `seed` that depends on participant mod 6 only.
TrialPlan build_naming_plan(std::size_t participant, const StudyDesign& design,
                            std::uint64_t seed = 0);
// Every (object, pair) once, standard on the left, shuffled by seed.
TrialPlan build_rating_plan(std::size_t participant, const StudyDesign& design,
                            std::uint64_t seed);
// Every (object, level) once. Shuffled, then sides alternate within
// consecutive blocks of two so QEM is on the left exactly half the time.
TrialPlan build_preference_plan(std::size_t participant, const StudyDesign& design,
                                std::uint64_t seed);

class ProtocolError : public Error {
 public:
  enum class Code { kOutOfOrder, kInvalidPayload, kDuplicate, kComplete, kNotFound };
  ProtocolError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};
std::string_view to_string(ProtocolError::Code c);

struct ResponsePayload {
  std::string token;  // idempotency token chosen by the client
  std::optional<std::string> name;
  std::optional<double> latency_ms;
  std::optional<int> rating;
  std::optional<Side> choice;
  bool spoiled = false;  // e.g. no keypress registered
};

struct ResponseRecord {
  std::string trial_id;
  ResponsePayload payload;
  std::string server_time;  // UTC ISO-8601, audit only
};

struct SessionInfo {
  std::string id;
  std::size_t participant = 0;
  std::uint64_t seed = 0;
};

// Lenient comparison of a typed name with the object name: case, spaces,
// digits and punctuation are ignored.
bool names_match(std::string_view typed, std::string_view object);

// One participant: naming, then rating, then preference, practice first in
// each. Not thread-safe; SessionStore serializes access.
class Session {
 public:
  Session(SessionInfo info, const StudyDesign& design);

  const SessionInfo& info() const { return info_; }
  const TrialPlan& plan(Task t) const { return plans_[static_cast<std::size_t>(t)]; }
  // The trial awaiting a response, or nullptr once everything is done.
  const Trial* current() const;
  bool complete() const { return current() == nullptr; }
  std::size_t responded() const { return records_.size(); }
  std::size_t total_trials() const;

  // Validates and appends. Throws ProtocolError; the state is unchanged on
  // any throw.
  const ResponseRecord& record(const std::string& trial_id, ResponsePayload payload,
                               std::string server_time = {});
  // Earlier record carrying this token for this trial, if any.
  const ResponseRecord* replay(const std::string& trial_id, const std::string& token) const;

  const std::vector<ResponseRecord>& records() const { return records_; }
  // Real (non-practice) trials as human.csv rows.
  std::vector<HumanResponse> export_rows() const;

 private:
  const Trial* find_trial(const std::string& id) const;

  SessionInfo info_;
  std::array<TrialPlan, 3> plans_;
  std::vector<const Trial*> order_;
  std::vector<ResponseRecord> records_;
};

// Append-only JSON-lines file per session under `dir`; reloads on start.
class SessionStore {
 public:
  SessionStore(std::filesystem::path dir, StudyDesign design);

  // participant defaults to the number of sessions created so far.
  SessionInfo create(std::optional<std::size_t> participant, std::uint64_t seed);

  // Runs `fn` with the session locked. Throws ProtocolError(kNotFound).
  template <class Fn>
  auto with_session(const std::string& id, Fn&& fn) {
    auto entry = lookup(id);
    std::lock_guard lock(entry->mutex);
    return fn(*entry);
  }

  struct Entry {
    std::mutex mutex;
    Session session;
    std::filesystem::path file;
    Entry(Session s, std::filesystem::path f) : session(std::move(s)), file(std::move(f)) {}
  };

  // Records and persists (before returning) a response.
  const ResponseRecord& submit(Entry& e, const std::string& trial_id, ResponsePayload payload);

  std::vector<std::string> session_ids() const;
  std::vector<HumanResponse> export_all() const;
  const StudyDesign& design() const { return design_; }

 private:
  std::shared_ptr<Entry> lookup(const std::string& id) const;
  void load(const std::filesystem::path& file);

  std::filesystem::path dir_;
  StudyDesign design_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

std::string utc_now_iso8601();

}  // namespace simpeval

#endif  // SIMPEVAL_PROTOCOL_HPP_

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

// A 36-object study (18 animals, 18 artifacts) and a scripted participant.
#ifndef SIMPEVAL_TESTS_STUDY_HPP_
#define SIMPEVAL_TESTS_STUDY_HPP_

#include <algorithm>
#include <string>

#include "simpeval/protocol.hpp"

namespace study {

inline simpeval::StudyDesign design36() {
  using simpeval::ObjectType;
  simpeval::StudyDesign d;
  for (int i = 0; i < 36; ++i) {
    d.objects.push_back({(i < 18 ? "animal" : "artifact") + std::to_string(i % 18),
                         i < 18 ? ObjectType::kAnimal : ObjectType::kArtifact});
  }
  d.practice = {{"duck", ObjectType::kAnimal}, {"vase", ObjectType::kArtifact}};
  return d;
}

// A plausible answer for any trial; names are right, latencies grow with the
// simplification level, ratings fall with it and QEM wins most comparisons.
inline simpeval::ResponsePayload answer(const simpeval::Trial& t, const std::string& token) {
  using namespace simpeval;
  ResponsePayload p;
  p.token = token;
  const int salt = static_cast<int>(t.object.size() * 7 + t.id.size());
  switch (t.task) {
    case Task::kNaming:
      p.name = "a " + t.object;
      p.latency_ms = 700.0 + 3.0 * t.simp_level + salt % 40;
      break;
    case Task::kRating:
      p.rating = std::clamp(7 - t.simp_level / 20 - (t.simp_type == SimpType::kVclust) - salt % 2, 1, 7);
      break;
    case Task::kPreference: {
      const bool left_is_qem = t.simp_type == SimpType::kQslim;
      const bool prefer_qem = salt % 5 != 0;
      p.choice = left_is_qem == prefer_qem ? Side::kLeft : Side::kRight;
      break;
    }
  }
  return p;
}

}  // namespace study

#endif  // SIMPEVAL_TESTS_STUDY_HPP_

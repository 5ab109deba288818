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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "simpeval/error.hpp"
#include "simpeval/stats.hpp"

using namespace simpeval;

namespace {

HumanResponse naming(double ms, bool spoiled = false, bool error = false) {
  HumanResponse r;
  r.participant = "p1";
  r.object = "dog";
  r.task = Task::kNaming;
  r.value = ms;
  r.spoiled = spoiled;
  r.error = error;
  return r;
}

HumanResponse choice(std::string participant, std::string object, ObjectType type, int level,
                     bool qslim) {
  HumanResponse r;
  r.participant = std::move(participant);
  r.object = std::move(object);
  r.object_type = type;
  r.task = Task::kPreference;
  r.simp_type = SimpType::kQslim;
  r.simp_level = level;
  r.choice = qslim ? SimpType::kQslim : SimpType::kVclust;
  return r;
}

const AnovaRow& effect(const AnovaResult& r, const std::string& name) {
  for (const auto& e : r.effects)
    if (e.effect == name) return e;
  FAIL("no effect " << name);
  throw 0;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("naming cleanup keeps equal times") {
  std::vector<HumanResponse> v(20, naming(800));
  const auto r = clean_naming(v);
  CHECK(r.kept.size() == 20);
  CHECK(r.outliers == 0);
  CHECK_THROWS_AS(clean_naming({}), InvalidArgument);
}

TEST_CASE("long outlier is dropped using mean plus three SD") {
  std::vector<HumanResponse> v(99, naming(1000));
  v.push_back(naming(10000));
  // By hand: mean = 109000/100 = 1090; deviations 99 x (-90) and 8910.
  const double mean = 1090.0;
  const double sd = std::sqrt((99 * 90.0 * 90.0 + 8910.0 * 8910.0) / 99.0);
  const auto r = clean_naming(v);
  CHECK(r.mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(r.sd == doctest::Approx(sd).epsilon(1e-12));
  CHECK(r.cutoff == doctest::Approx(mean + 3 * sd).epsilon(1e-12));
  CHECK(r.outliers == 1);
  CHECK(r.kept.size() == 99);
  for (const auto& k : r.kept) CHECK(k.value == 1000);
}

TEST_CASE("short times survive and flags are removed first") {
  std::vector<HumanResponse> v(99, naming(1000));
  v.push_back(naming(10));
  v.push_back(naming(0, true));
  v.push_back(naming(700, false, true));
  const auto r = clean_naming(v);
  CHECK(r.spoiled == 1);
  CHECK(r.errors == 1);
  CHECK(r.outliers == 0);
  CHECK(r.kept.size() == 100);
}

TEST_CASE("iterated cleanup is idempotent") {
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> d(6.7, 0.35);
  std::vector<HumanResponse> v;
  for (int i = 0; i < 400; ++i) v.push_back(naming(d(rng)));
  for (double big : {6000.0, 9000.0, 20000.0}) v.push_back(naming(big));
  const NamingCleanOptions it{3.0, true};
  const auto once = clean_naming(v, it);
  const auto twice = clean_naming(once.kept, it);
  CHECK(twice.outliers == 0);
  CHECK(twice.kept.size() == once.kept.size());
  // The default single pass can leave a new tail behind.
  const auto single = clean_naming(v);
  CHECK(single.kept.size() >= once.kept.size());
}

TEST_CASE("pearson examples") {
  const std::vector<double> x = {1, 2, 3}, y = {3, 2, 1};
  CHECK(pearson(x, x).r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson(x, y).r == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(pearson(x, y).p == 0.0);

  const std::vector<double> a = {1, 2, 3, 4, 5}, b = {2, 1, 4, 3, 6};
  const auto got = pearson(a, b);
  const auto ref = oracle::pearson(a, b);
  CHECK(got.n == 5);
  CHECK(std::abs(got.r - ref.r) <= 1e-10);
  CHECK(std::abs(got.p - ref.p) <= 1e-10);
  // Sxy = 10, Sxx = 10, Syy = 14.8.
  CHECK(got.r == doctest::Approx(10.0 / std::sqrt(148.0)).epsilon(1e-12));

  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), InvalidArgument);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{4, 4, 4}), UndefinedStatistic);
}

TEST_CASE("pearson agrees with the oracle on random data") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial * 3;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = 0.3 * x[i] + g(rng);
    }
    const auto got = pearson(x, y);
    const auto ref = oracle::pearson(x, y);
    CHECK(std::abs(got.r - ref.r) <= 1e-10);
    CHECK(std::abs(got.p - ref.p) <= 1e-10);
  }
}

TEST_CASE("pearson affine behaviour") {
  const std::vector<double> x = {0.3, 1.7, 2.2, 5.1, 4.4, 3.9, 0.8};
  const std::vector<double> y = {1.1, 2.5, 2.0, 6.3, 4.0, 5.5, 0.1};
  const double r = pearson(x, y).r;
  std::vector<double> xs(x.size()), yn(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xs[i] = 4.5 * x[i] - 17.0;
    yn[i] = -2.0 * y[i] + 3.0;
  }
  CHECK(std::abs(pearson(xs, y).r - r) < 1e-12);
  CHECK(std::abs(pearson(x, yn).r + r) < 1e-12);
}

TEST_CASE("t and F tails agree with quadrature") {
  for (double df : {1.0, 3.0, 10.0, 34.0}) {
    for (double t : {0.1, 0.9, 2.0, 3.7}) {
      CHECK(std::abs(student_t_two_sided(t, df) - oracle::t_two_sided(t, df)) < 1e-10);
    }
  }
  for (auto [d1, d2] : std::vector<std::pair<double, double>>{{2, 10}, {3, 22}, {6, 70}, {1 + 1, 4}}) {
    for (double f : {0.2, 1.0, 3.3, 9.0}) {
      CHECK(std::abs(f_upper_tail(f, d1, d2) - oracle::f_upper(f, d1, d2)) < 1e-10);
    }
  }
  CHECK(f_upper_tail(0.0, 2, 5) == 1.0);
  CHECK(f_upper_tail(INFINITY, 2, 5) == 0.0);
  CHECK(student_t_two_sided(0.0, 5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ANOVA with identical responses") {
  std::vector<AnovaFactor> f = {{"a", {"0", "1"}}, {"b", {"x", "y", "z"}}};
  std::vector<AnovaObservation> obs;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (int r = 0; r < 4; ++r) obs.push_back({{i, j}, 5.0});
  const auto res = anova(f, obs);
  REQUIRE(res.effects.size() == 3);
  for (const auto& e : res.effects) {
    CHECK(e.f == 0.0);
    CHECK(e.p == 1.0);
  }
}

TEST_CASE("one-way ANOVA equals the squared pooled t") {
  std::vector<AnovaFactor> f = {{"group", {"A", "B"}}};
  std::vector<AnovaObservation> obs;
  for (double v : {1.0, 2.0, 3.0}) obs.push_back({{0}, v});
  for (double v : {4.0, 5.0, 6.0}) obs.push_back({{1}, v});
  const auto res = anova(f, obs);
  // Pooled variance 1, so t = 3 / sqrt(2/3).
  const double t = 3.0 / std::sqrt(2.0 / 3.0);
  REQUIRE(res.effects.size() == 1);
  CHECK(res.effects[0].f == doctest::Approx(t * t).epsilon(1e-12));
  CHECK(res.effects[0].df_effect == 1);
  CHECK(res.effects[0].df_error == 4);
  CHECK(res.effects[0].p == doctest::Approx(student_t_two_sided(t, 4)).epsilon(1e-10));
}

TEST_CASE("2x2 and 2x3x2 designs match the textbook decomposition") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  SUBCASE("2x2 with a planted main effect") {
    std::vector<std::vector<std::vector<std::vector<double>>>> y(
        2, std::vector<std::vector<std::vector<double>>>(2, std::vector<std::vector<double>>(1)));
    std::vector<AnovaObservation> obs;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (int r = 0; r < 6; ++r) {
          const double v = 10.0 + 3.0 * double(i) + g(rng);
          y[i][j][0].push_back(v);
          obs.push_back({{i, j}, v});
        }
    const auto res = anova({{"a", {"0", "1"}}, {"b", {"0", "1"}}}, obs);
    const auto ref = oracle::three_way_ss(y);
    const double ms_err = ref.error / 20.0;
    CHECK(effect(res, "a").f == doctest::Approx(ref.a / ms_err).epsilon(1e-9));
    CHECK(effect(res, "b").f == doctest::Approx(ref.b / ms_err).epsilon(1e-9));
    CHECK(effect(res, "a x b").f == doctest::Approx(ref.ab / ms_err).epsilon(1e-9));
    CHECK(effect(res, "a").p < 0.001);
  }
  SUBCASE("three factors") {
    const std::size_t na = 2, nb = 3, nc = 2, n = 4;
    std::vector<std::vector<std::vector<std::vector<double>>>> y(
        na, std::vector<std::vector<std::vector<double>>>(nb, std::vector<std::vector<double>>(nc)));
    std::vector<AnovaObservation> obs;
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t k = 0; k < nc; ++k)
          for (std::size_t r = 0; r < n; ++r) {
            const double v = double(i) + 0.5 * double(j * k) + g(rng);
            y[i][j][k].push_back(v);
            obs.push_back({{i, j, k}, v});
          }
    const auto res = anova({{"a", {"0", "1"}}, {"b", {"0", "1", "2"}}, {"c", {"0", "1"}}}, obs);
    const auto ref = oracle::three_way_ss(y);
    const double dfe = double(na * nb * nc * (n - 1));
    CHECK(res.df_error == dfe);
    CHECK(res.ss_error == doctest::Approx(ref.error).epsilon(1e-9));
    CHECK(res.ss_total == doctest::Approx(ref.total).epsilon(1e-9));
    const double ms = ref.error / dfe;
    const std::map<std::string, std::pair<double, double>> expect = {
        {"a", {ref.a, 1}},          {"b", {ref.b, 2}},         {"c", {ref.c, 1}},
        {"a x b", {ref.ab, 2}},     {"a x c", {ref.ac, 1}},    {"b x c", {ref.bc, 2}},
        {"a x b x c", {ref.abc, 2}}};
    REQUIRE(res.effects.size() == 7);
    double sum = res.ss_error;
    for (const auto& [name, ss_df] : expect) {
      const auto& e = effect(res, name);
      CHECK(e.ss == doctest::Approx(ss_df.first).epsilon(1e-9));
      CHECK(e.df_effect == ss_df.second);
      CHECK(e.f == doctest::Approx(ss_df.first / ss_df.second / ms).epsilon(1e-9));
      CHECK(e.p == doctest::Approx(oracle::f_upper(e.f, e.df_effect, dfe)).epsilon(1e-8));
      sum += e.ss;
    }
    CHECK(sum == doctest::Approx(res.ss_total).epsilon(1e-9));
    // Main effects come first, then interactions by order.
    CHECK(res.effects[0].effect == "a");
    CHECK(res.effects[6].effect == "a x b x c");
  }
}

TEST_CASE("ANOVA rejects unbalanced designs") {
  std::vector<AnovaObservation> obs = {{{0}, 1}, {{0}, 2}, {{1}, 3}, {{1}, 4}, {{1}, 5}};
  CHECK_THROWS_AS(anova({{"g", {"a", "b"}}}, obs), InvalidArgument);
  obs = {{{0}, 1}, {{1}, 3}};
  CHECK_THROWS_AS(anova({{"g", {"a", "b"}}}, obs), InvalidArgument);
}

TEST_CASE("preference rates") {
  SUBCASE("all QSLIM") {
    std::vector<HumanResponse> v;
    for (auto p : {"p1", "p2"})
      for (int lvl : {50, 80}) v.push_back(choice(p, "dog", ObjectType::kAnimal, lvl, true));
    for (const auto& r : preference_rates(v, AveragingScheme::kByParticipant)) CHECK(r.percent_qslim == 100.0);
    for (const auto& r : preference_rates(v, AveragingScheme::kByObject)) CHECK(r.percent_qslim == 100.0);
  }
  SUBCASE("alternating") {
    std::vector<HumanResponse> v;
    for (int i = 0; i < 6; ++i) v.push_back(choice("p1", "obj" + std::to_string(i), ObjectType::kArtifact, 50, i % 2));
    const auto r = preference_rates(v, AveragingScheme::kByParticipant);
    REQUIRE(r.size() == 1);
    CHECK(r[0].percent_qslim == 50.0);
    CHECK(r[0].trials == 6);
  }
  SUBCASE("hand tally over four participants") {
    // Rows: participant; columns: dog50 dog80 cat50 cat80 mug50 mug80 cup50 cup80.
    const char* table[4] = {"QQQVQVVV", "QQVQQQQV", "VQQQQVQQ", "QQQQVVQV"};
    const char* objects[4] = {"dog", "cat", "mug", "cup"};
    std::vector<HumanResponse> v;
    for (int p = 0; p < 4; ++p)
      for (int o = 0; o < 4; ++o)
        for (int l = 0; l < 2; ++l)
          v.push_back(choice("p" + std::to_string(p), objects[o],
                             o < 2 ? ObjectType::kAnimal : ObjectType::kArtifact, l ? 80 : 50,
                             table[p][o * 2 + l] == 'Q'));
    std::map<std::pair<std::string, int>, double> by_p;
    for (const auto& r : preference_rates(v, AveragingScheme::kByParticipant)) {
      by_p[{r.unit + (r.object_type == ObjectType::kAnimal ? "A" : "T"), r.simp_level}] = r.percent_qslim;
    }
    // p0 animals at 50: dog Q, cat Q -> 100; artifacts at 80: mug V, cup V -> 0.
    CHECK(by_p.at({"p0A", 50}) == 100.0);
    CHECK(by_p.at({"p0A", 80}) == 50.0);
    CHECK(by_p.at({"p0T", 80}) == 0.0);
    CHECK(by_p.at({"p2A", 50}) == 50.0);
    CHECK(by_p.at({"p3T", 50}) == 50.0);
    CHECK(by_p.size() == 16);
    std::map<std::pair<std::string, int>, double> by_o;
    for (const auto& r : preference_rates(v, AveragingScheme::kByObject)) by_o[{r.unit, r.simp_level}] = r.percent_qslim;
    // dog at 50: Q Q V Q -> 75; mug at 80: V Q V V -> 25; cup at 80: V V Q V -> 25.
    CHECK(by_o.at({"dog", 50}) == 75.0);
    CHECK(by_o.at({"mug", 80}) == 25.0);
    CHECK(by_o.at({"cup", 80}) == 25.0);
    CHECK(by_o.at({"cat", 80}) == 75.0);
    CHECK(by_o.size() == 8);

    // Fully crossed, so both schemes give the same condition means.
    for (auto type : {ObjectType::kAnimal, ObjectType::kArtifact})
      for (int lvl : {50, 80}) {
        double sp = 0, so = 0;
        int np = 0, no = 0;
        for (const auto& r : preference_rates(v, AveragingScheme::kByParticipant))
          if (r.object_type == type && r.simp_level == lvl) sp += r.percent_qslim, ++np;
        for (const auto& r : preference_rates(v, AveragingScheme::kByObject))
          if (r.object_type == type && r.simp_level == lvl) so += r.percent_qslim, ++no;
        CHECK(sp / np == doctest::Approx(so / no).epsilon(1e-12));
        CHECK(sp / np >= 0.0);
        CHECK(sp / np <= 100.0);
      }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(preference_rates({}, AveragingScheme::kByObject), UndefinedStatistic);
    std::vector<HumanResponse> v = {choice("p1", "dog", ObjectType::kAnimal, 50, true),
                                    choice("p1", "dog", ObjectType::kAnimal, 80, true),
                                    choice("p2", "dog", ObjectType::kAnimal, 50, true)};
    CHECK_THROWS_AS(preference_rates(v, AveragingScheme::kByParticipant), UndefinedStatistic);
    CHECK_THROWS_AS(preference_rates(v, AveragingScheme::kNone), InvalidArgument);
  }
}

TEST_CASE("human CSV round trip and validation") {
  std::vector<HumanResponse> rows;
  auto n = naming(812.5);
  n.variant = "typed-onset";
  rows.push_back(n);
  HumanResponse r;
  r.participant = "p1";
  r.object = "mug";
  r.object_type = ObjectType::kArtifact;
  r.task = Task::kRating;
  r.simp_type = SimpType::kVclust;
  r.simp_level = 80;
  r.value = 3;
  rows.push_back(r);
  rows.push_back(choice("p1", "dog", ObjectType::kAnimal, 50, false));
  std::stringstream ss;
  write_human_csv(ss, rows);
  CHECK(ss.str().rfind(std::string(kHumanCsvHeader), 0) == 0);
  const auto back = read_human_csv(ss);
  REQUIRE(back.size() == 3);
  CHECK(back[0].value == 812.5);
  CHECK(back[0].variant == "typed-onset");
  CHECK(back[1].simp_type == SimpType::kVclust);
  CHECK(back[2].choice == SimpType::kVclust);

  std::istringstream bad(std::string(kHumanCsvHeader) +
                         "\np1,mug,artifact,QSLIM,50,RATING,4,0,0,\n"
                         "p1,mug,artifact,QSLIM,50,RATING,9,0,0,\n");
  try {
    read_human_csv(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream none_level(std::string(kHumanCsvHeader) + "\np1,mug,artifact,NONE,50,NAMING,400,0,0,\n");
  CHECK_THROWS_AS(read_human_csv(none_level), ParseError);
}

}  // TEST_SUITE

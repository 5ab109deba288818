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

#include "simpeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "simpeval/csv.hpp"
#include "simpeval/error.hpp"

namespace simpeval {

std::string_view to_string(Variable v) {
  switch (v) {
    case Variable::kNaming: return "naming";
    case Variable::kRating: return "rating";
    case Variable::kNamingDiff: return "naming_diff";
    case Variable::kRatingDiff: return "rating_diff";
    case Variable::kPreference: return "preference";
  }
  return "";
}

std::string_view to_string(Subset s) {
  switch (s) {
    case Subset::kAll: return "all";
    case Subset::kAnimals: return "animals";
    case Subset::kArtifacts: return "artifacts";
  }
  return "";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::array<Subset, 3> kSubsets = {Subset::kAll, Subset::kAnimals, Subset::kArtifacts};

bool in_subset(ObjectType t, Subset s) {
  return s == Subset::kAll || (s == Subset::kAnimals) == (t == ObjectType::kAnimal);
}

PairId pair_for(SimpType t, int level_index) {
  if (t == SimpType::kQslim) return level_index == 0 ? PairId::kSQ5 : PairId::kSQ8;
  return level_index == 0 ? PairId::kSV5 : PairId::kSV8;
}

template <class Key>
struct MeanAcc {
  std::map<Key, std::pair<double, std::size_t>> acc;
  void add(const Key& k, double v) {
    auto& a = acc[k];
    a.first += v;
    ++a.second;
  }
  std::map<Key, double> means() const {
    std::map<Key, double> out;
    for (const auto& [k, a] : acc) out[k] = a.first / double(a.second);
    return out;
  }
};

CorrelationRow correlate(Measure m, Variable v, Subset s, SimpType st,
                         const std::vector<double>& x, const std::vector<double>& y) {
  CorrelationRow row{m, v, s, st, kNaN, kNaN, x.size(), false};
  try {
    const auto c = pearson(x, y);
    row.r = c.r;
    row.p = c.p;
    row.defined = true;
  } catch (const InvalidArgument&) {
  } catch (const UndefinedStatistic&) {
  }
  return row;
}

// Raw (unit, cell, value) triples, averaged per (unit, cell) before the ANOVA.
struct Cells {
  std::vector<AnovaFactor> factors;
  MeanAcc<std::pair<std::string, std::vector<std::size_t>>> acc;
};

AnovaSection run_anova(std::string analysis, std::string design, AveragingScheme scheme,
                       const Cells& cells) {
  AnovaSection sec{std::move(analysis), std::move(design), scheme, std::nullopt, {}};
  std::vector<AnovaObservation> obs;
  for (const auto& [key, mean] : cells.acc.means()) obs.push_back({key.second, mean});
  if (obs.empty()) {
    sec.skipped = "no data";
    return sec;
  }
  try {
    sec.result = anova(cells.factors, obs, scheme);
  } catch (const InvalidArgument& e) {
    sec.skipped = e.what();
  }
  return sec;
}

AnovaFactor object_type_factor() { return {"object type", {"animal", "artifact"}}; }
AnovaFactor simp_type_factor() { return {"simp type", {"QSLIM", "VCLUST"}}; }
AnovaFactor level_factor(const std::vector<int>& levels) {
  AnovaFactor f{"simp level", {}};
  for (int l : levels) f.levels.push_back(std::to_string(l));
  return f;
}

std::size_t index_of(const std::vector<int>& v, int x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

std::vector<AnovaSection> human_anovas(const HumanSummary& hs,
                                       const std::vector<HumanResponse>& human) {
  std::vector<AnovaSection> out;
  std::set<int> naming_levels_set, simp_levels_set;
  for (const auto& r : hs.cleaning.kept) naming_levels_set.insert(r.simp_level);
  for (const auto& r : human) {
    if (r.simp_level != 0) simp_levels_set.insert(r.simp_level);
  }
  const std::vector<int> naming_levels(naming_levels_set.begin(), naming_levels_set.end());
  const std::vector<int> simp_levels(simp_levels_set.begin(), simp_levels_set.end());
  const auto otype = [](ObjectType t) { return t == ObjectType::kAnimal ? 0u : 1u; };
  const auto stype = [](SimpType t) { return t == SimpType::kQslim ? 0u : 1u; };
  constexpr std::array<AveragingScheme, 2> schemes = {AveragingScheme::kByParticipant,
                                                      AveragingScheme::kByObject};
  auto unit_of = [](const HumanResponse& r, AveragingScheme s) {
    return s == AveragingScheme::kByParticipant ? r.participant : r.object;
  };

  for (auto scheme : schemes) {
    Cells c{{object_type_factor(), level_factor(naming_levels)}, {}};
    for (const auto& r : hs.cleaning.kept) {
      c.acc.add({unit_of(r, scheme), {otype(r.object_type), index_of(naming_levels, r.simp_level)}},
                r.value);
    }
    out.push_back(run_anova("naming", "otype x level", scheme, c));
  }
  for (auto scheme : schemes) {
    for (Task task : {Task::kNaming, Task::kRating}) {
      Cells c{{simp_type_factor(), level_factor(simp_levels), object_type_factor()}, {}};
      auto add = [&](const HumanResponse& r) {
        if (r.simp_type == SimpType::kNone) return;
        c.acc.add({unit_of(r, scheme),
                   {stype(r.simp_type), index_of(simp_levels, r.simp_level), otype(r.object_type)}},
                  r.value);
      };
      if (task == Task::kNaming) {
        for (const auto& r : hs.cleaning.kept) add(r);
      } else {
        for (const auto& r : human) {
          if (r.task == Task::kRating && !r.spoiled) add(r);
        }
      }
      out.push_back(run_anova(task == Task::kNaming ? "naming" : "rating",
                              "stype x level x otype", scheme, c));
    }
  }
  for (auto scheme : schemes) {
    Cells c{{object_type_factor(), level_factor(simp_levels)}, {}};
    try {
      for (const auto& pr : preference_rates(human, scheme)) {
        c.acc.add({pr.unit, {otype(pr.object_type), index_of(simp_levels, pr.simp_level)}},
                  pr.percent_qslim);
      }
      out.push_back(run_anova("preference", "otype x level", scheme, c));
    } catch (const Error& e) {
      out.push_back({"preference", "otype x level", scheme, std::nullopt, e.what()});
    }
  }
  return out;
}

std::vector<AnovaSection> family_anovas(
    const std::map<std::string, std::array<PairMeasures, 4>>& families,
    const std::vector<int>& levels) {
  std::vector<AnovaSection> out;
  for (Measure m : kMeasures) {
    Cells c{{simp_type_factor(), level_factor(levels), object_type_factor()}, {}};
    for (const auto& [obj, fam] : families) {
      for (const auto& pm : fam) {
        c.acc.add({obj,
                   {pair_algorithm(pm.pair) == Algorithm::kQem ? 0u : 1u,
                    std::size_t(pair_level_index(pm.pair)),
                    pm.object_type == ObjectType::kAnimal ? 0u : 1u}},
                  pm.get(m));
      }
    }
    out.push_back(run_anova(std::string(column_name(m)), "stype x level x otype",
                            AveragingScheme::kByObject, c));
  }
  return out;
}

}  // namespace

HumanSummary summarize_human(const std::vector<HumanResponse>& human,
                             const NamingCleanOptions& cleaning) {
  HumanSummary hs;
  std::vector<HumanResponse> naming;
  MeanAcc<std::tuple<std::string, SimpType, int>> rating;
  std::map<std::pair<std::string, int>, std::pair<std::size_t, std::size_t>> pref;
  for (const auto& r : human) {
    hs.object_types.emplace(r.object, r.object_type);
    switch (r.task) {
      case Task::kNaming:
        naming.push_back(r);
        break;
      case Task::kRating:
        if (!r.spoiled) rating.add({r.object, r.simp_type, r.simp_level}, r.value);
        break;
      case Task::kPreference:
        if (!r.spoiled) {
          auto& p = pref[{r.object, r.simp_level}];
          p.first += r.choice == SimpType::kQslim;
          ++p.second;
        }
        break;
    }
  }
  if (!naming.empty()) {
    hs.cleaning = clean_naming(naming, cleaning);
    MeanAcc<std::tuple<std::string, SimpType, int>> nm;
    for (const auto& r : hs.cleaning.kept) nm.add({r.object, r.simp_type, r.simp_level}, r.value);
    hs.naming = nm.means();
  }
  hs.rating = rating.means();
  for (const auto& [k, p] : pref) hs.preference[k] = 100.0 * double(p.first) / double(p.second);
  return hs;
}

StatsReport correlate_report(const std::vector<PairMeasures>& measures,
                             const std::vector<PreferencePrediction>& predictions,
                             const std::vector<HumanResponse>& human,
                             const ReportOptions& options) {
  StatsReport rep;
  rep.options = options;

  // Measures: complete families only.
  std::map<std::string, std::array<std::optional<PairMeasures>, 4>> partial;
  for (const auto& pm : measures) {
    auto& slot = partial[pm.object][static_cast<std::size_t>(pm.pair)];
    if (slot) {
      rep.join_errors.push_back(fmt::format("measures: duplicate row for {} {}", pm.object,
                                            to_string(pm.pair)));
    }
    slot = pm;
  }
  std::map<std::string, std::array<PairMeasures, 4>> families;
  for (const auto& [obj, slots] : partial) {
    std::array<PairMeasures, 4> fam;
    bool complete = true;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!slots[i]) {
        complete = false;
        rep.join_errors.push_back(
            fmt::format("measures: {} lacks pair {}", obj, to_string(kPairs[i])));
      } else {
        fam[i] = *slots[i];
      }
    }
    if (complete) families.emplace(obj, fam);
  }

  std::map<std::pair<std::string, Measure>, std::pair<double, double>> preds;
  for (const auto& p : predictions) {
    if (!partial.count(p.object)) {
      rep.join_errors.push_back(fmt::format("predictions: {} has no measures", p.object));
      continue;
    }
    preds[{p.object, p.measure}] = {p.p5, p.p8};
  }

  rep.human = summarize_human(human, options.cleaning);
  const auto& hs = rep.human;

  std::set<int> level_set;
  for (const auto& r : human) {
    if (r.simp_level != 0) level_set.insert(r.simp_level);
  }
  const std::vector<int> levels(level_set.begin(), level_set.end());

  std::map<std::string, ObjectType> objects;  // the joined set
  for (const auto& [obj, fam] : families) {
    auto it = hs.object_types.find(obj);
    if (it == hs.object_types.end()) {
      rep.join_errors.push_back(fmt::format("{} has measures but no human responses", obj));
    } else if (it->second != fam[0].object_type) {
      rep.join_errors.push_back(fmt::format("{} is {} in measures but {} in human data", obj,
                                            to_string(fam[0].object_type),
                                            to_string(it->second)));
    } else {
      objects.emplace(obj, it->second);
    }
  }
  for (const auto& [obj, type] : hs.object_types) {
    if (!partial.count(obj)) {
      rep.join_errors.push_back(fmt::format("{} has human responses but no measures", obj));
    }
  }
  if (!human.empty() && levels.size() != 2) {
    rep.join_errors.push_back(
        fmt::format("human data holds {} simplification levels, expected 2", levels.size()));
  }

  auto anova_future = std::async(std::launch::async, [&] {
    auto a = human_anovas(hs, human);
    auto b = family_anovas(families, levels.size() == 2 ? levels : std::vector<int>{50, 80});
    a.insert(a.end(), b.begin(), b.end());
    return a;
  });

  auto lookup = [](const auto& map, const auto& key) -> std::optional<double> {
    auto it = map.find(key);
    if (it == map.end()) return std::nullopt;
    return it->second;
  };

  const bool usable = levels.size() == 2;
  for (Measure m : kMeasures) {
    for (Variable v : {Variable::kNaming, Variable::kRating}) {
      const auto& table = v == Variable::kNaming ? hs.naming : hs.rating;
      for (Subset s : kSubsets) {
        for (SimpType st : {SimpType::kQslim, SimpType::kVclust}) {
          std::vector<double> x, y;
          for (const auto& [obj, type] : objects) {
            if (!usable || !in_subset(type, s)) continue;
            const auto& fam = families.at(obj);
            std::array<std::optional<double>, 2> ys;
            std::array<double, 2> xs{};
            for (int li = 0; li < 2; ++li) {
              xs[li] = fam[static_cast<std::size_t>(pair_for(st, li))].get(m);
              ys[li] = lookup(table, std::tuple{obj, st, levels[li]});
            }
            if (options.average_levels) {
              if (ys[0] && ys[1]) {
                x.push_back(0.5 * (xs[0] + xs[1]));
                y.push_back(0.5 * (*ys[0] + *ys[1]));
              }
            } else {
              for (int li = 0; li < 2; ++li) {
                if (ys[li]) {
                  x.push_back(xs[li]);
                  y.push_back(*ys[li]);
                }
              }
            }
          }
          rep.quality.push_back(correlate(m, v, s, st, x, y));
        }
      }
    }
    for (Variable v : {Variable::kNamingDiff, Variable::kRatingDiff, Variable::kPreference}) {
      for (Subset s : kSubsets) {
        std::vector<double> x, y;
        for (const auto& [obj, type] : objects) {
          if (!usable || !in_subset(type, s)) continue;
          auto pit = preds.find({obj, m});
          if (pit == preds.end()) continue;
          std::array<double, 2> xs = {pit->second.first, pit->second.second};
          std::array<std::optional<double>, 2> ys;
          for (int li = 0; li < 2; ++li) {
            if (v == Variable::kPreference) {
              ys[li] = lookup(hs.preference, std::pair{obj, levels[li]});
            } else {
              const auto& table = v == Variable::kNamingDiff ? hs.naming : hs.rating;
              auto q = lookup(table, std::tuple{obj, SimpType::kQslim, levels[li]});
              auto w = lookup(table, std::tuple{obj, SimpType::kVclust, levels[li]});
              if (q && w) ys[li] = *q - *w;
            }
          }
          if (options.average_levels) {
            if (ys[0] && ys[1]) {
              x.push_back(0.5 * (xs[0] + xs[1]));
              y.push_back(0.5 * (*ys[0] + *ys[1]));
            }
          } else {
            for (int li = 0; li < 2; ++li) {
              if (ys[li]) {
                x.push_back(xs[li]);
                y.push_back(*ys[li]);
              }
            }
          }
        }
        rep.comparison.push_back(correlate(m, v, s, SimpType::kNone, x, y));
      }
    }
  }
  for (const auto& [obj, type] : objects) {
    for (Measure m : kMeasures) {
      if (!preds.count({obj, m})) {
        rep.join_errors.push_back(
            fmt::format("predictions: {} lacks measure {}", obj, column_name(m)));
      }
    }
  }
  rep.anovas = anova_future.get();
  return rep;
}

std::string significance_mark(double p, const ReportOptions& options) {
  if (!(p < options.marginal)) return "";
  return p < options.significant ? "**" : "*";
}

void write_correlations_csv(std::ostream& out, const StatsReport& report) {
  out << "grid,measure,variable,subset,simp_type,r,p,n,mark\n";
  auto emit = [&](std::string_view grid, const CorrelationRow& r) {
    csv::write_row(out, {std::string(grid), std::string(column_name(r.measure)),
                         std::string(to_string(r.variable)), std::string(to_string(r.subset)),
                         r.simp_type == SimpType::kNone ? "" : std::string(to_string(r.simp_type)),
                         csv::format_number(r.r), csv::format_number(r.p), std::to_string(r.n),
                         r.defined ? significance_mark(r.p, report.options) : ""});
  };
  for (const auto& r : report.quality) emit("quality", r);
  for (const auto& r : report.comparison) emit("comparison", r);
}

void write_anova_csv(std::ostream& out, const StatsReport& report) {
  out << "analysis,design,scheme,effect,ss,df_effect,df_error,f,p,mark\n";
  for (const auto& sec : report.anovas) {
    if (!sec.result) continue;
    for (const auto& e : sec.result->effects) {
      csv::write_row(out, {sec.analysis, sec.design, std::string(to_string(sec.scheme)), e.effect,
                           csv::format_number(e.ss), csv::format_number(e.df_effect),
                           csv::format_number(e.df_error), csv::format_number(e.f),
                           csv::format_number(e.p), significance_mark(e.p, report.options)});
    }
  }
}

namespace {

std::string cell(const CorrelationRow& r, const ReportOptions& o) {
  if (!r.defined) return "n/a";
  return fmt::format("{:+.2f}{}", r.r, significance_mark(r.p, o));
}

const CorrelationRow* find_row(const std::vector<CorrelationRow>& rows, Measure m, Variable v,
                               Subset s, SimpType st) {
  for (const auto& r : rows) {
    if (r.measure == m && r.variable == v && r.subset == s && r.simp_type == st) return &r;
  }
  return nullptr;
}

}  // namespace

void write_report_text(std::ostream& out, const StatsReport& rep) {
  const auto& o = rep.options;
  fmt::print(out, "Correlations of naming times and ratings with automatic measures\n");
  fmt::print(out, "(* p < {}, ** p < {}; levels {})\n\n", o.marginal, o.significant,
             o.average_levels ? "averaged per object" : "pooled, two points per object");
  fmt::print(out, "{:<10}", "");
  for (const char* v : {"Naming", "Rating"}) {
    for (const char* s : {"All", "Anims", "Artifs"}) {
      fmt::print(out, "{:<16}", fmt::format("{} {}", v, s));
    }
  }
  fmt::print(out, "\n{:<10}", "Measure");
  for (int i = 0; i < 6; ++i) fmt::print(out, "{:<8}{:<8}", "Qslim", "Vclust");
  fmt::print(out, "\n");
  for (Measure m : kMeasures) {
    fmt::print(out, "{:<10}", display_name(m));
    for (Variable v : {Variable::kNaming, Variable::kRating}) {
      for (Subset s : kSubsets) {
        for (SimpType st : {SimpType::kQslim, SimpType::kVclust}) {
          const auto* r = find_row(rep.quality, m, v, s, st);
          fmt::print(out, "{:<8}", r ? cell(*r, o) : "n/a");
        }
      }
    }
    fmt::print(out, "\n");
  }
  fmt::print(out, "{:<10}", "n");
  for (Variable v : {Variable::kNaming, Variable::kRating}) {
    for (Subset s : kSubsets) {
      for (SimpType st : {SimpType::kQslim, SimpType::kVclust}) {
        const auto* r = find_row(rep.quality, Measure::kBm, v, s, st);
        fmt::print(out, "{:<8}", r ? r->n : 0);
      }
    }
  }

  fmt::print(out, "\n\nCorrelations of naming differences, rating differences and preferences\n");
  fmt::print(out, "with p5/p8 predictors\n\n{:<10}", "");
  for (const char* v : {"Naming diffs", "Rating diffs", "Preferences"}) {
    fmt::print(out, "{:<24}", v);
  }
  fmt::print(out, "\n{:<10}", "Measure");
  for (int i = 0; i < 3; ++i) fmt::print(out, "{:<8}{:<8}{:<8}", "All", "Anims", "Artifs");
  fmt::print(out, "\n");
  const std::array<Variable, 3> cmp = {Variable::kNamingDiff, Variable::kRatingDiff,
                                       Variable::kPreference};
  for (Measure m : kMeasures) {
    fmt::print(out, "{:<10}", display_name(m));
    for (Variable v : cmp) {
      for (Subset s : kSubsets) {
        const auto* r = find_row(rep.comparison, m, v, s, SimpType::kNone);
        fmt::print(out, "{:<8}", r ? cell(*r, o) : "n/a");
      }
    }
    fmt::print(out, "\n");
  }
  fmt::print(out, "{:<10}", "n");
  for (Variable v : cmp) {
    for (Subset s : kSubsets) {
      const auto* r = find_row(rep.comparison, Measure::kBm, v, s, SimpType::kNone);
      fmt::print(out, "{:<8}", r ? r->n : 0);
    }
  }

  fmt::print(out, "\n\nANOVAs\n");
  for (const auto& sec : rep.anovas) {
    fmt::print(out, "\n{} [{}], by {}\n", sec.analysis, sec.design, to_string(sec.scheme));
    if (!sec.result) {
      fmt::print(out, "  skipped: {}\n", sec.skipped);
      continue;
    }
    for (const auto& e : sec.result->effects) {
      fmt::print(out, "  {:<36} F({:g}, {:g}) = {:<10.3f} p = {:.4f} {}\n", e.effect, e.df_effect,
                 e.df_error, e.f, e.p, significance_mark(e.p, o));
    }
  }

  const auto& c = rep.human.cleaning;
  fmt::print(out, "\nNaming cleanup\n");
  fmt::print(out, "  spoiled {}, errors {}, outliers {}, kept {}\n", c.spoiled, c.errors,
             c.outliers, c.kept.size());
  fmt::print(out, "  cutoff {:.1f} ms (mean {:.1f}, sd {:.1f})\n", c.cutoff, c.mean, c.sd);

  // Percent QEM preferred by object type and level, over participants.
  std::map<std::pair<ObjectType, int>, std::pair<double, std::size_t>> pct;
  for (const auto& [key, v] : rep.human.preference) {
    auto it = rep.human.object_types.find(key.first);
    if (it == rep.human.object_types.end()) continue;
    auto& a = pct[{it->second, key.second}];
    a.first += v;
    ++a.second;
  }
  if (!pct.empty()) {
    fmt::print(out, "\nPreference for the QEM version (mean over objects)\n");
    for (const auto& [key, a] : pct) {
      fmt::print(out, "  {:<9} {:>3}%  {:.1f}%\n", to_string(key.first), key.second,
                 a.first / double(a.second));
    }
  }

  fmt::print(out, "\nJoin errors: {}\n", rep.join_errors.size());
  for (const auto& e : rep.join_errors) fmt::print(out, "  {}\n", e);
}

std::vector<AnovaSection> measure_anovas(const std::vector<PairMeasures>& measures) {
  std::map<std::string, std::array<std::optional<PairMeasures>, 4>> partial;
  for (const auto& pm : measures) partial[pm.object][static_cast<std::size_t>(pm.pair)] = pm;
  std::map<std::string, std::array<PairMeasures, 4>> families;
  for (const auto& [obj, slots] : partial) {
    if (std::all_of(slots.begin(), slots.end(), [](const auto& s) { return s.has_value(); })) {
      families.emplace(obj, std::array{*slots[0], *slots[1], *slots[2], *slots[3]});
    }
  }
  return family_anovas(families, {50, 80});
}

void write_measure_summary(std::ostream& out, const std::vector<PairMeasures>& measures) {
  const ReportOptions o;
  std::set<std::string> objects;
  for (const auto& pm : measures) objects.insert(pm.object);
  fmt::print(out, "Automatic measures over {} objects (mean per pair)\n\n{:<10}", objects.size(),
             "Measure");
  for (auto p : kPairs) fmt::print(out, "{:>14}", to_string(p));
  fmt::print(out, "{:>12}{:>12}\n", "q5<v5", "q8<v8");
  for (Measure m : kMeasures) {
    std::array<double, 4> sum{};
    std::array<std::size_t, 4> n{};
    std::map<std::string, std::array<std::optional<double>, 4>> by_obj;
    for (const auto& pm : measures) {
      const auto i = static_cast<std::size_t>(pm.pair);
      sum[i] += pm.get(m);
      ++n[i];
      by_obj[pm.object][i] = pm.get(m);
    }
    fmt::print(out, "{:<10}", display_name(m));
    for (std::size_t i = 0; i < 4; ++i) {
      fmt::print(out, "{:>14.6g}", n[i] ? sum[i] / double(n[i]) : kNaN);
    }
    // Objects where the QEM version scores lower (better) than clustering.
    for (auto [q, v] : {std::pair{0, 2}, std::pair{1, 3}}) {
      std::size_t wins = 0, total = 0;
      for (const auto& [obj, vals] : by_obj) {
        if (vals[q] && vals[v]) {
          ++total;
          wins += *vals[q] < *vals[v];
        }
      }
      fmt::print(out, "{:>12}", fmt::format("{}/{}", wins, total));
    }
    fmt::print(out, "\n");
  }
  fmt::print(out, "\nANOVAs (objects as replicates)\n");
  for (const auto& sec : measure_anovas(measures)) {
    fmt::print(out, "\n{} [{}]\n", sec.analysis, sec.design);
    if (!sec.result) {
      fmt::print(out, "  skipped: {}\n", sec.skipped);
      continue;
    }
    for (const auto& e : sec.result->effects) {
      fmt::print(out, "  {:<36} F({:g}, {:g}) = {:<10.3f} p = {:.4f} {}\n", e.effect, e.df_effect,
                 e.df_error, e.f, e.p, significance_mark(e.p, o));
    }
  }
}

void save_report(const std::filesystem::path& dir, const StatsReport& report) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("correlations.csv");
    write_correlations_csv(f, report);
  }
  {
    auto f = open("anova.csv");
    write_anova_csv(f, report);
  }
  {
    auto f = open("report.txt");
    write_report_text(f, report);
  }
}

}  // namespace simpeval

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

#include "simpeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>
#include <bit>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "simpeval/csv.hpp"
#include "simpeval/error.hpp"

namespace simpeval {

std::string_view to_string(SimpType t) {
  switch (t) {
    case SimpType::kQslim: return "QSLIM";
    case SimpType::kVclust: return "VCLUST";
    case SimpType::kNone: return "NONE";
  }
  return "";
}

std::string_view to_string(Task t) {
  switch (t) {
    case Task::kNaming: return "NAMING";
    case Task::kRating: return "RATING";
    case Task::kPreference: return "PREFERENCE";
  }
  return "";
}

std::optional<SimpType> parse_simp_type(std::string_view s) {
  for (auto t : {SimpType::kQslim, SimpType::kVclust, SimpType::kNone}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<Task> parse_task(std::string_view s) {
  for (auto t : {Task::kNaming, Task::kRating, Task::kPreference}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::string_view to_string(AveragingScheme s) {
  switch (s) {
    case AveragingScheme::kByParticipant: return "participants";
    case AveragingScheme::kByObject: return "objects";
    case AveragingScheme::kNone: return "none";
  }
  return "";
}

void HumanResponse::validate() const {
  if ((simp_type == SimpType::kNone) != (simp_level == 0)) {
    throw InvalidArgument("simp_type NONE must go with simp_level 0 (" + object + ")");
  }
  if (simp_level < 0 || simp_level >= 100) {
    throw InvalidArgument("simp_level out of range");
  }
  switch (task) {
    case Task::kNaming:
      if (!spoiled && !(value > 0.0)) throw InvalidArgument("naming time must be positive");
      break;
    case Task::kRating:
      if (!(value >= 1.0 && value <= 7.0)) throw InvalidArgument("rating must lie in [1, 7]");
      if (simp_type == SimpType::kNone) throw InvalidArgument("rating rows need a simplified version");
      break;
    case Task::kPreference:
      if (choice != SimpType::kQslim && choice != SimpType::kVclust) {
        throw InvalidArgument("preference choice must be QSLIM or VCLUST");
      }
      break;
  }
}

void write_human_csv(std::ostream& out, const std::vector<HumanResponse>& rows) {
  out << kHumanCsvHeader << '\n';
  for (const auto& r : rows) {
    const std::string value = r.task == Task::kPreference ? std::string(to_string(r.choice))
                                                          : csv::format_number(r.value);
    csv::write_row(out, {r.participant, r.object, std::string(to_string(r.object_type)),
                         std::string(to_string(r.simp_type)), std::to_string(r.simp_level),
                         std::string(to_string(r.task)), value, r.spoiled ? "1" : "0",
                         r.error ? "1" : "0", r.variant});
  }
}

std::vector<HumanResponse> read_human_csv(std::istream& in) {
  const auto rows = csv::read(in);
  if (rows.empty()) throw ParseError("human CSV is empty", 1);
  const auto col = csv::locate(rows[0], {"participant", "object", "object_type", "simp_type",
                                         "simp_level", "task", "value", "spoiled", "error"});
  std::size_t variant_col = rows[0].size();
  if (auto it = std::find(rows[0].begin(), rows[0].end(), "variant"); it != rows[0].end()) {
    variant_col = static_cast<std::size_t>(it - rows[0].begin());
  }
  auto flag = [](const std::string& s, std::size_t line) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false" || s.empty()) return false;
    throw ParseError("bad flag '" + s + "'", line);
  };
  std::vector<HumanResponse> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto line = i + 1;
    if (r.size() < col.size()) throw ParseError("short human row", line);
    HumanResponse h;
    h.participant = r[col[0]];
    h.object = r[col[1]];
    auto ot = parse_object_type(r[col[2]]);
    auto st = parse_simp_type(r[col[3]]);
    auto task = parse_task(r[col[5]]);
    if (!ot || !st || !task) throw ParseError("bad enumerated value", line);
    h.object_type = *ot;
    h.simp_type = *st;
    h.simp_level = static_cast<int>(csv::parse_number(r[col[4]], line));
    h.task = *task;
    if (h.task == Task::kPreference) {
      auto c = parse_simp_type(r[col[6]]);
      if (!c) throw ParseError("bad preference choice '" + r[col[6]] + "'", line);
      h.choice = *c;
    } else {
      h.value = csv::parse_number(r[col[6]], line);
    }
    h.spoiled = flag(r[col[7]], line);
    h.error = flag(r[col[8]], line);
    if (variant_col < r.size()) h.variant = r[variant_col];
    try {
      h.validate();
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line);
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<HumanResponse> load_human_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_human_csv(in);
}

// ---------------------------------------------------------------------------

NamingCleanReport clean_naming(const std::vector<HumanResponse>& naming,
                               const NamingCleanOptions& options) {
  if (naming.empty()) throw InvalidArgument("clean_naming: no trials");
  NamingCleanReport rep;
  std::vector<HumanResponse> pool;
  for (const auto& r : naming) {
    if (r.task != Task::kNaming) throw InvalidArgument("clean_naming: non-naming trial");
    if (r.spoiled) {
      ++rep.spoiled;
    } else if (r.error) {
      ++rep.errors;
    } else {
      pool.push_back(r);
    }
  }
  for (;;) {
    if (pool.empty()) break;
    const double n = double(pool.size());
    double mean = 0.0;
    for (const auto& r : pool) mean += r.value;
    mean /= n;
    double ss = 0.0;
    for (const auto& r : pool) ss += (r.value - mean) * (r.value - mean);
    rep.mean = mean;
    rep.sd = pool.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    rep.cutoff = mean + options.sd_limit * rep.sd;
    std::vector<HumanResponse> next;
    for (auto& r : pool) {
      if (r.value > rep.cutoff) {
        ++rep.outliers;
      } else {
        next.push_back(std::move(r));
      }
    }
    const bool changed = next.size() != pool.size();
    pool = std::move(next);
    if (!options.iterate || !changed) break;
  }
  rep.kept = std::move(pool);
  return rep;
}

// ---------------------------------------------------------------------------

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw InvalidArgument("t distribution needs df > 0");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return boost::math::ibeta(df / 2.0, 0.5, x);
}

double f_upper_tail(double f, double df1, double df2) {
  if (!(df1 > 0.0 && df2 > 0.0)) throw InvalidArgument("F distribution needs positive df");
  if (!(f > 0.0)) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double x = df2 / (df2 + df1 * f);
  return boost::math::ibeta(df2 / 2.0, df1 / 2.0, x);
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw InvalidArgument("pearson: need at least 3 pairs");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw UndefinedStatistic("pearson: zero variance");
  Correlation c;
  c.n = n;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = double(n - 2);
  const double one_minus = 1.0 - c.r * c.r;
  c.p = one_minus <= 0.0 ? 0.0 : student_t_two_sided(c.r * std::sqrt(df / one_minus), df);
  return c;
}

// ---------------------------------------------------------------------------

AnovaResult anova(const std::vector<AnovaFactor>& factors,
                  const std::vector<AnovaObservation>& obs, AveragingScheme scheme) {
  const std::size_t k = factors.size();
  if (k == 0 || k > 8) throw InvalidArgument("anova: 1 to 8 factors supported");
  std::size_t cells = 1;
  std::vector<std::size_t> stride(k);
  for (std::size_t i = k; i-- > 0;) {
    if (factors[i].levels.size() < 2) {
      throw InvalidArgument("anova: factor '" + factors[i].name + "' needs >= 2 levels");
    }
    stride[i] = cells;
    cells *= factors[i].levels.size();
  }
  auto cell_index = [&](const std::vector<std::size_t>& c) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) idx += c[i] * stride[i];
    return idx;
  };

  std::vector<std::size_t> count(cells, 0);
  std::vector<double> cell_sum(cells, 0.0);
  for (const auto& o : obs) {
    if (o.cell.size() != k) throw InvalidArgument("anova: observation has wrong arity");
    for (std::size_t i = 0; i < k; ++i) {
      if (o.cell[i] >= factors[i].levels.size()) throw InvalidArgument("anova: level out of range");
    }
    const auto idx = cell_index(o.cell);
    ++count[idx];
    cell_sum[idx] += o.value;
  }
  const std::size_t reps = count[0];
  for (std::size_t c = 0; c < cells; ++c) {
    if (count[c] != reps) throw InvalidArgument("anova: unbalanced or missing cells");
  }
  if (reps < 2) throw InvalidArgument("anova: need >= 2 replicates per cell");

  const double n_total = double(obs.size());
  double grand = 0.0;
  for (const auto& o : obs) grand += o.value;
  grand /= n_total;

  // Decode a flat cell index into level indices.
  auto levels_of = [&](std::size_t idx) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = (idx / stride[i]) % factors[i].levels.size();
    return c;
  };
  std::vector<double> cell_mean(cells);
  for (std::size_t c = 0; c < cells; ++c) cell_mean[c] = cell_sum[c] / double(reps);

  // Marginal means for every subset of factors, indexed by the full cell.
  const std::size_t subsets = std::size_t{1} << k;
  std::vector<std::vector<double>> marginal(subsets, std::vector<double>(cells, 0.0));
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::map<std::vector<std::size_t>, std::pair<double, double>> acc;
    for (std::size_t c = 0; c < cells; ++c) {
      auto lv = levels_of(c);
      for (std::size_t i = 0; i < k; ++i) {
        if (!(mask >> i & 1)) lv[i] = 0;
      }
      auto& a = acc[lv];
      a.first += cell_mean[c];
      a.second += 1.0;
    }
    for (std::size_t c = 0; c < cells; ++c) {
      auto lv = levels_of(c);
      for (std::size_t i = 0; i < k; ++i) {
        if (!(mask >> i & 1)) lv[i] = 0;
      }
      const auto& a = acc[lv];
      marginal[mask][c] = a.first / a.second;
    }
  }

  AnovaResult res;
  for (const auto& o : obs) {
    const double d = o.value - cell_mean[cell_index(o.cell)];
    res.ss_error += d * d;
    res.ss_total += (o.value - grand) * (o.value - grand);
  }
  res.df_error = n_total - double(cells);
  const double ms_error = res.ss_error / res.df_error;

  // Effects ordered by interaction order, then by mask.
  std::vector<std::size_t> masks;
  for (std::size_t mask = 1; mask < subsets; ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](std::size_t a, std::size_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (auto mask : masks) {
    double ss = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      double e = 0.0;
      // Inclusion-exclusion over the subsets of `mask`.
      for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
        const int sign = (std::popcount(mask) - std::popcount(sub)) % 2 ? -1 : 1;
        e += sign * marginal[sub][c];
        if (sub == 0) break;
      }
      ss += double(reps) * e * e;
    }
    AnovaRow row;
    row.scheme = scheme;
    row.ss = ss;
    row.df_effect = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        if (!row.effect.empty()) row.effect += " x ";
        row.effect += factors[i].name;
        row.df_effect *= double(factors[i].levels.size() - 1);
      }
    }
    row.df_error = res.df_error;
    if (!(ss > 0.0)) {
      row.f = 0.0;
      row.p = 1.0;
    } else if (!(ms_error > 0.0)) {
      row.f = std::numeric_limits<double>::infinity();
      row.p = 0.0;
    } else {
      row.f = (ss / row.df_effect) / ms_error;
      row.p = f_upper_tail(row.f, row.df_effect, row.df_error);
    }
    res.effects.push_back(std::move(row));
  }
  return res;
}

// ---------------------------------------------------------------------------

std::vector<PreferenceRate> preference_rates(const std::vector<HumanResponse>& responses,
                                             AveragingScheme scheme) {
  if (scheme == AveragingScheme::kNone) throw InvalidArgument("preference_rates needs a scheme");
  // (unit, object type, level) -> (qslim choices, trials)
  std::map<std::tuple<std::string, ObjectType, int>, std::pair<std::size_t, std::size_t>> tally;
  std::set<std::pair<ObjectType, int>> conditions;
  std::map<std::string, ObjectType> unit_type;
  for (const auto& r : responses) {
    if (r.task != Task::kPreference) continue;
    const std::string& unit = scheme == AveragingScheme::kByParticipant ? r.participant : r.object;
    auto& t = tally[{unit, r.object_type, r.simp_level}];
    t.first += r.choice == SimpType::kQslim;
    ++t.second;
    conditions.insert({r.object_type, r.simp_level});
    unit_type[unit] = r.object_type;
  }
  if (tally.empty()) throw UndefinedStatistic("preference_rates: no preference trials");

  std::set<std::string> units;
  for (const auto& [key, v] : tally) units.insert(std::get<0>(key));
  std::set<int> levels;
  for (const auto& c : conditions) levels.insert(c.second);

  std::vector<PreferenceRate> out;
  for (const auto& unit : units) {
    for (const auto& [type, level] : conditions) {
      // Objects only ever appear under their own type.
      if (scheme == AveragingScheme::kByObject && unit_type[unit] != type) continue;
      auto it = tally.find({unit, type, level});
      if (it == tally.end()) {
        throw UndefinedStatistic("preference_rates: " + unit + " has no trials for " +
                                 std::string(to_string(type)) + " at level " +
                                 std::to_string(level));
      }
      const auto [q, n] = it->second;
      out.push_back({unit, type, level, 100.0 * double(q) / double(n), n});
    }
  }
  return out;
}

}  // namespace simpeval

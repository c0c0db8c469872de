// Copyright 2026 The slodds Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slodds/dataset.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "slodds/format.h"

namespace slodds {
namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::year;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '"')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      break;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

template <typename T>
std::optional<T> ParseNumber(std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::optional<Date> ParseDayMonthYear(std::string_view text) {
  std::size_t a = text.find('/');
  if (a == std::string_view::npos) return std::nullopt;
  std::size_t b = text.find('/', a + 1);
  if (b == std::string_view::npos) return std::nullopt;
  std::string_view year_text = text.substr(b + 1);
  auto d = ParseNumber<int>(text.substr(0, a));
  auto m = ParseNumber<int>(text.substr(a + 1, b - a - 1));
  auto y = ParseNumber<int>(year_text);
  if (!d || !m || !y) return std::nullopt;
  int full_year = *y;
  if (year_text.size() == 2) {
    full_year += (*y < 70) ? 2000 : 1900;
  } else if (year_text.size() != 4) {
    return std::nullopt;
  }
  Date date{year{full_year}, month{static_cast<unsigned>(*m)},
            day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string FormatDayMonthYear(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02u/%02u/%04d",
                static_cast<unsigned>(date.day()),
                static_cast<unsigned>(date.month()),
                static_cast<int>(date.year()));
  return buf;
}

void StableSortByDate(std::vector<MatchRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const MatchRecord& a, const MatchRecord& b) {
                     return a.date < b.date;
                   });
}

}  // namespace

Date ParseIsoDate(std::string_view text) {
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    auto y = ParseNumber<int>(text.substr(0, 4));
    auto m = ParseNumber<unsigned>(text.substr(5, 2));
    auto d = ParseNumber<unsigned>(text.substr(8, 2));
    if (y && m && d) {
      Date date{year{*y}, month{*m}, day{*d}};
      if (date.ok()) return date;
    }
  }
  throw std::invalid_argument("invalid date '" + std::string(text) +
                              "', expected YYYY-MM-DD");
}

std::string FormatIsoDate(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u",
                static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

DataError::DataError(const std::string& message, std::size_t row)
    : std::runtime_error(row > 0 ? message + " at row " + std::to_string(row)
                                 : message),
      row_(row) {}

int TeamIndex::Intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  int id = size();
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<int> TeamIndex::Find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Outcome OutcomeFromGoals(int home_goals, int away_goals) {
  if (home_goals > away_goals) return Outcome::kHomeWin;
  if (home_goals < away_goals) return Outcome::kAwayWin;
  return Outcome::kDraw;
}

char OutcomeCode(Outcome outcome) {
  switch (outcome) {
    case Outcome::kHomeWin:
      return 'H';
    case Outcome::kDraw:
      return 'D';
    case Outcome::kAwayWin:
      return 'A';
  }
  return '?';
}

Dataset::Dataset() : teams_(std::make_shared<const TeamIndex>()) {}

Dataset::Dataset(std::vector<MatchRecord> records,
                 std::shared_ptr<const TeamIndex> teams)
    : records_(std::move(records)), teams_(std::move(teams)) {
  if (!teams_) teams_ = std::make_shared<const TeamIndex>();
  StableSortByDate(records_);
  for (const MatchRecord& r : records_) {
    if (r.home < 0 || r.home >= teams_->size() || r.away < 0 ||
        r.away >= teams_->size()) {
      throw std::invalid_argument("match record refers to unknown team id");
    }
    if (r.home == r.away) {
      throw std::invalid_argument("match record pairs a team with itself");
    }
  }
}

Dataset Dataset::Slice(std::size_t first, std::size_t count) const {
  first = std::min(first, records_.size());
  count = std::min(count, records_.size() - first);
  std::vector<MatchRecord> part(records_.begin() + first,
                                records_.begin() + first + count);
  return Dataset(std::move(part), teams_);
}

bool operator==(const Dataset& a, const Dataset& b) {
  return a.teams() == b.teams() && a.records_ == b.records_;
}

Dataset Concat(const Dataset& first, const Dataset& second) {
  if (first.shared_teams() != second.shared_teams() &&
      !(first.teams() == second.teams())) {
    throw std::invalid_argument("cannot concatenate datasets over different "
                                "team indices");
  }
  std::vector<MatchRecord> records = first.records();
  records.insert(records.end(), second.begin(), second.end());
  return Dataset(std::move(records), first.shared_teams());
}

int SeasonOf(const Date& date) {
  int y = static_cast<int>(date.year());
  return static_cast<unsigned>(date.month()) >= 7 ? y : y - 1;
}

std::vector<MatchRecord> AnnotatePromotions(std::vector<MatchRecord> records) {
  std::map<int, std::set<int>> participants;
  for (const MatchRecord& r : records) {
    auto& teams = participants[SeasonOf(r.date)];
    teams.insert(r.home);
    teams.insert(r.away);
  }
  for (MatchRecord& r : records) {
    int season = SeasonOf(r.date);
    auto prev = participants.find(season - 1);
    if (prev == participants.end()) {
      r.features = {};
      continue;
    }
    r.features.home_promoted = !prev->second.contains(r.home);
    r.features.away_promoted = !prev->second.contains(r.away);
  }
  return records;
}

Dataset ParseCsvText(std::string_view text, const CsvSchema& schema) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) {
        if (start < text.size()) lines.push_back(text.substr(start));
        break;
      }
      lines.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }
  if (lines.empty()) throw DataError("empty file, missing header", 0);

  std::vector<std::string_view> header = SplitFields(lines[0]);
  auto column = [&](const std::string& name,
                    bool required) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    if (required) throw DataError("missing required column '" + name + "'", 0);
    return std::nullopt;
  };
  const std::size_t c_date = *column(schema.date, true);
  const std::size_t c_home = *column(schema.home_team, true);
  const std::size_t c_away = *column(schema.away_team, true);
  const std::size_t c_hg = *column(schema.home_goals, true);
  const std::size_t c_ag = *column(schema.away_goals, true);
  const std::size_t c_res = *column(schema.result, true);
  const auto c_oh = column(schema.odds_home, false);
  const auto c_od = column(schema.odds_draw, false);
  const auto c_oa = column(schema.odds_away, false);
  if (schema.strict) {
    const std::set<std::string_view> known = {
        schema.date,       schema.home_team,  schema.away_team,
        schema.home_goals, schema.away_goals, schema.result,
        schema.odds_home,  schema.odds_draw,  schema.odds_away};
    for (std::string_view h : header) {
      if (!known.contains(h)) {
        throw DataError("unknown column '" + std::string(h) + "'", 0);
      }
    }
  }

  auto teams = std::make_shared<TeamIndex>();
  std::vector<MatchRecord> records;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li;
    std::vector<std::string_view> f = SplitFields(lines[li]);
    if (std::all_of(f.begin(), f.end(),
                    [](std::string_view s) { return s.empty(); })) {
      continue;
    }
    auto cell = [&](std::size_t c) -> std::string_view {
      return c < f.size() ? f[c] : std::string_view{};
    };

    MatchRecord r;
    auto date = ParseDayMonthYear(cell(c_date));
    if (!date) {
      throw DataError("malformed date '" + std::string(cell(c_date)) + "'",
                      row);
    }
    r.date = *date;
    if (cell(c_home).empty() || cell(c_away).empty()) {
      throw DataError("missing team name", row);
    }
    auto hg = ParseNumber<int>(cell(c_hg));
    auto ag = ParseNumber<int>(cell(c_ag));
    if (!hg || !ag || *hg < 0 || *ag < 0) {
      throw DataError("non-integer goals", row);
    }
    r.home_goals = *hg;
    r.away_goals = *ag;
    r.outcome = OutcomeFromGoals(*hg, *ag);
    if (cell(c_res).size() != 1 || cell(c_res)[0] != OutcomeCode(r.outcome)) {
      throw DataError("outcome inconsistent", row);
    }
    r.home = teams->Intern(cell(c_home));
    r.away = teams->Intern(cell(c_away));
    if (r.home == r.away) throw DataError("team plays itself", row);

    if (c_oh && c_od && c_oa) {
      auto oh = ParseNumber<double>(cell(*c_oh));
      auto od = ParseNumber<double>(cell(*c_od));
      auto oa = ParseNumber<double>(cell(*c_oa));
      if (oh && od && oa) {
        if (*oh <= 1 || *od <= 1 || *oa <= 1) {
          throw DataError("decimal odds must exceed 1", row);
        }
        r.odds = DecimalOdds{*oh, *od, *oa};
      }
    }
    records.push_back(r);
  }

  StableSortByDate(records);
  records = AnnotatePromotions(std::move(records));
  return Dataset(std::move(records), std::move(teams));
}

Dataset ParseCsv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCsvText(buffer.str(), schema);
}

std::string ToCsvText(const Dataset& dataset) {
  std::ostringstream out;
  out << "Date,HomeTeam,AwayTeam,FTHG,FTAG,FTR,B365H,B365D,B365A\n";
  for (const MatchRecord& r : dataset) {
    out << FormatDayMonthYear(r.date) << ',' << dataset.teams().Name(r.home)
        << ',' << dataset.teams().Name(r.away) << ',' << r.home_goals << ','
        << r.away_goals << ',' << OutcomeCode(r.outcome);
    if (r.odds) {
      out << ',' << FormatDouble(r.odds->home) << ','
          << FormatDouble(r.odds->draw) << ',' << FormatDouble(r.odds->away);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

void WriteCsv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'", 0);
  out << ToCsvText(dataset);
}

TemporalSplit SplitByDates(const Dataset& dataset, const Date& tune_start,
                           const Date& test_start, bool strict) {
  if (!(tune_start < test_start)) {
    throw std::invalid_argument("tune start must precede test start");
  }
  const auto& recs = dataset.records();
  auto first_tune = std::lower_bound(
      recs.begin(), recs.end(), tune_start,
      [](const MatchRecord& r, const Date& d) { return r.date < d; });
  auto first_test = std::lower_bound(
      first_tune, recs.end(), test_start,
      [](const MatchRecord& r, const Date& d) { return r.date < d; });
  std::size_t n_train = first_tune - recs.begin();
  std::size_t n_tune = first_test - first_tune;
  TemporalSplit split{dataset.Slice(0, n_train),
                      dataset.Slice(n_train, n_tune),
                      dataset.Slice(n_train + n_tune, recs.size())};
  if (strict) {
    if (split.train.empty()) throw DataError("empty training split", 0);
    if (split.tune.empty()) throw DataError("empty tuning split", 0);
    if (split.test.empty()) throw DataError("empty test split", 0);
  }
  return split;
}

std::vector<Dataset> PartitionBatches(const Dataset& dataset,
                                      const BatchPolicy& policy) {
  if (dataset.empty()) {
    throw std::invalid_argument("cannot partition an empty dataset");
  }
  std::vector<Dataset> batches;
  const std::size_t n = dataset.size();
  switch (policy.kind) {
    case BatchPolicy::Kind::kPerMatch:
      batches.reserve(n);
      for (std::size_t i = 0; i < n; ++i) batches.push_back(dataset.Slice(i, 1));
      break;
    case BatchPolicy::Kind::kFixedCount: {
      if (policy.count == 0) {
        throw std::invalid_argument("FixedCount batch size must be positive");
      }
      for (std::size_t i = 0; i < n; i += policy.count) {
        batches.push_back(dataset.Slice(i, policy.count));
      }
      break;
    }
    case BatchPolicy::Kind::kCalendarQuarter: {
      auto quarter_key = [](const Date& d) {
        return static_cast<int>(d.year()) * 4 +
               (static_cast<int>(static_cast<unsigned>(d.month())) - 1) / 3;
      };
      std::size_t start = 0;
      for (std::size_t i = 1; i <= n; ++i) {
        if (i == n ||
            quarter_key(dataset[i].date) != quarter_key(dataset[start].date)) {
          batches.push_back(dataset.Slice(start, i - start));
          start = i;
        }
      }
      break;
    }
  }
  return batches;
}

}  // namespace slodds

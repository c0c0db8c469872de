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

// Match records, team indexing, CSV ingestion and chronological splitting.

#ifndef SLODDS_DATASET_H_
#define SLODDS_DATASET_H_

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slodds {

using Date = std::chrono::year_month_day;

// Parses "YYYY-MM-DD".
Date ParseIsoDate(std::string_view text);
std::string FormatIsoDate(const Date& date);

// Raised for malformed input files. `row()` is the 1-based data row
// (header excluded), or 0 when the error is not tied to a row.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& message, std::size_t row);
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// Dense bijection between team names and ids 0..Q-1. Ids are handed out
// in order of first appearance.
class TeamIndex {
 public:
  int Intern(std::string_view name);
  std::optional<int> Find(std::string_view name) const;
  const std::string& Name(int id) const { return names_.at(id); }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const TeamIndex& a, const TeamIndex& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

enum class Outcome { kHomeWin, kDraw, kAwayWin };

// Outcome implied by a final score.
Outcome OutcomeFromGoals(int home_goals, int away_goals);
char OutcomeCode(Outcome outcome);  // 'H', 'D', 'A'

struct DecimalOdds {
  double home = 0;
  double draw = 0;
  double away = 0;
  friend bool operator==(const DecimalOdds&, const DecimalOdds&) = default;
};

// Per-match team covariates: whether each side was promoted into the
// league at the start of the current season.
struct MatchFeatures {
  bool home_promoted = false;
  bool away_promoted = false;
  friend bool operator==(const MatchFeatures&, const MatchFeatures&) = default;
};

struct MatchRecord {
  Date date;
  int home = 0;
  int away = 0;
  int home_goals = 0;
  int away_goals = 0;
  Outcome outcome = Outcome::kDraw;
  std::optional<DecimalOdds> odds;
  MatchFeatures features;

  // Positive values favour the home side.
  int ScoreDifference() const { return home_goals - away_goals; }

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

// A date-ordered, immutable collection of match records. The team index is
// shared between a dataset and every split or batch derived from it.
class Dataset {
 public:
  Dataset();
  Dataset(std::vector<MatchRecord> records,
          std::shared_ptr<const TeamIndex> teams);

  const std::vector<MatchRecord>& records() const { return records_; }
  const TeamIndex& teams() const { return *teams_; }
  const std::shared_ptr<const TeamIndex>& shared_teams() const {
    return teams_;
  }
  int n_teams() const { return teams_->size(); }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const MatchRecord& operator[](std::size_t i) const { return records_[i]; }
  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  // Records in [first, first + count), same team index.
  Dataset Slice(std::size_t first, std::size_t count) const;

  // Equal when the team-name sequences and the records agree.
  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  std::vector<MatchRecord> records_;
  std::shared_ptr<const TeamIndex> teams_;
};

// Concatenates two datasets sharing the same team index; the result is
// re-sorted stably by date.
Dataset Concat(const Dataset& first, const Dataset& second);

// Column names used when reading a results file.
struct CsvSchema {
  std::string date = "Date";
  std::string home_team = "HomeTeam";
  std::string away_team = "AwayTeam";
  std::string home_goals = "FTHG";
  std::string away_goals = "FTAG";
  std::string result = "FTR";
  std::string odds_home = "B365H";
  std::string odds_draw = "B365D";
  std::string odds_away = "B365A";
  // When set, any header column outside the names above is an error.
  bool strict = false;
};

// Reads a football-data.co.uk style results file. Dates may be DD/MM/YY or
// DD/MM/YYYY; two-digit years below 70 map to 20xx. Rows whose cells are
// all empty are skipped. Promotion flags are derived after sorting.
Dataset ParseCsv(const std::string& path, const CsvSchema& schema = {});
Dataset ParseCsvText(std::string_view text, const CsvSchema& schema = {});

// Writes Date (DD/MM/YYYY), teams, goals, FTR and the odds columns.
void WriteCsv(const Dataset& dataset, const std::string& path);
std::string ToCsvText(const Dataset& dataset);

// Marks a side as promoted when its season (July to June) is not the
// first season in the data and it did not play in the previous season.
std::vector<MatchRecord> AnnotatePromotions(std::vector<MatchRecord> records);

// Season label of a date: the calendar year in which the season started.
int SeasonOf(const Date& date);

struct TemporalSplit {
  Dataset train;
  Dataset tune;
  Dataset test;
};

// train: date < tune_start; tune: [tune_start, test_start); test: the rest.
// With `strict`, an empty part raises DataError.
TemporalSplit SplitByDates(const Dataset& dataset, const Date& tune_start,
                           const Date& test_start, bool strict = false);

struct BatchPolicy {
  enum class Kind { kPerMatch, kCalendarQuarter, kFixedCount };
  Kind kind = Kind::kPerMatch;
  std::size_t count = 1;

  static BatchPolicy PerMatch() { return {Kind::kPerMatch, 1}; }
  static BatchPolicy CalendarQuarter() { return {Kind::kCalendarQuarter, 0}; }
  static BatchPolicy FixedCount(std::size_t n) {
    return {Kind::kFixedCount, n};
  }
};

// Contiguous, time-ordered batches whose concatenation is `dataset`. With
// FixedCount the final batch takes the remainder.
std::vector<Dataset> PartitionBatches(const Dataset& dataset,
                                      const BatchPolicy& policy);

}  // namespace slodds

#endif  // SLODDS_DATASET_H_

// Copyright 2026 The Tempora Authors.
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

#ifndef TEMPORA_EVAL_HPP_
#define TEMPORA_EVAL_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "format.hpp"
#include "jsonl.hpp"
#include "engine.hpp"

namespace tempora::eval {

enum class Difficulty { kEasy, kHard };
std::optional<Difficulty> parse_difficulty(std::string_view s);

struct EntailmentInstance {
  std::optional<std::string> story_id;
  std::string premise;
  std::string hypothesis_text;
  format::ParsedHypothesis hypothesis;
  Label gold = Label::kEntailment;
  std::optional<Difficulty> difficulty;  // pre-tagged easy/hard, if any

  Comparator comparator() const { return hypothesis.comparator; }
};

// One dataset record: {"story_id", "premise", "hypothesis", "label"} with
// optional "difficulty": "easy"|"hard". Throws DataError.
EntailmentInstance parse_instance(std::string_view json_line);

struct LineError {
  std::size_t line = 0;
  std::string message;
};

// Lenient mode logs and skips bad records; strict mode throws DataError
// naming the line.
std::vector<EntailmentInstance> load_dataset(std::istream& in, bool strict,
                                             std::vector<LineError>* errors,
                                             const LogFn& log = nullptr);

// ceil(ratio * stories), guarded against representation error in ratio.
std::size_t train_story_count(std::size_t stories, double ratio);

struct StorySplit {
  std::vector<std::string> train;  // shuffled order
  std::vector<std::string> test;
};

// Distinct story ids in first-appearance order, shuffled with a seeded
// Fisher-Yates pass; the first train_story_count() go to train. Instances
// without a story id are ignored.
StorySplit split_iid(const std::vector<EntailmentInstance>& instances,
                     std::uint64_t seed, double train_ratio = 0.2);

struct SliceCounts {
  std::size_t correct = 0;
  std::size_t total = 0;
  // Empty for an empty slice.
  std::optional<double> accuracy() const;
};

struct MetricsReport {
  SliceCounts start;
  SliceCounts end;
  SliceCounts all;
  // Stories with every instance correct; absent when any instance has no
  // story id.
  std::optional<SliceCounts> stories;

  std::optional<double> start_accuracy() const { return start.accuracy(); }
  std::optional<double> end_accuracy() const { return end.accuracy(); }
  std::optional<double> all_accuracy() const { return all.accuracy(); }
  std::optional<double> story_exact_match() const;
};

// Throws std::invalid_argument when the sizes differ.
MetricsReport compute_metrics(const std::vector<Label>& predictions,
                              const std::vector<EntailmentInstance>& instances);

std::string report_to_json(const MetricsReport& report);
std::string report_table(const MetricsReport& report);

struct PredictionRecord {
  std::optional<std::string> story_id;
  Label pred = Label::kEntailment;
};

std::string prediction_to_json(const PredictionRecord& record);

// Every line must be a valid record: predictions align with the dataset by
// position. Throws DataError.
std::vector<PredictionRecord> load_predictions(std::istream& in);

struct EvalOptions {
  bool strict = false;
  std::optional<Difficulty> only;
};

// Aligns predictions with the gold dataset (same length, same story ids)
// and computes the report, optionally restricted to one difficulty.
MetricsReport evaluate(std::istream& predictions, std::istream& gold,
                       const EvalOptions& options, const LogFn& log = nullptr);

struct PredictStats {
  std::size_t instances = 0;
  std::size_t record_errors = 0;
  std::size_t entailments = 0;
};

PredictStats predict_stream(std::istream& dataset, std::ostream& out,
                            engine::Predictor& predictor,
                            const engine::SymConfig& cfg, bool strict,
                            const LogFn& log = nullptr);

struct SplitStats {
  std::size_t train_stories = 0;
  std::size_t test_stories = 0;
  std::size_t train_instances = 0;
  std::size_t test_instances = 0;
  std::size_t record_errors = 0;
};

// Copies each valid record line unchanged to train or test by story.
// Records without a story id are record errors here.
SplitStats split_stream(std::istream& dataset, std::ostream& train,
                        std::ostream& test, std::uint64_t seed, double ratio,
                        bool strict, const LogFn& log = nullptr);

}  // namespace tempora::eval

#endif  // TEMPORA_EVAL_HPP_

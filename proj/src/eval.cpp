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

#include "eval.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace tempora::eval {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Uniform integer in [0, bound) by rejection; std::uniform_int_distribution
// is not reproducible across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw DataError(std::string("missing string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

std::optional<std::string> story_of(const json& j) {
  if (!j.contains("story_id") || j["story_id"].is_null()) return std::nullopt;
  if (j["story_id"].is_string()) return j["story_id"].get<std::string>();
  if (j["story_id"].is_number_integer()) return j["story_id"].dump();
  throw DataError("story_id must be a string");
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json counts_json(const SliceCounts& c) {
  ordered_json j;
  j["correct"] = c.correct;
  j["total"] = c.total;
  return j;
}

}  // namespace

std::optional<Difficulty> parse_difficulty(std::string_view s) {
  if (s == "easy") return Difficulty::kEasy;
  if (s == "hard") return Difficulty::kHard;
  return std::nullopt;
}

EntailmentInstance parse_instance(std::string_view json_line) {
  json j = json::parse(json_line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw DataError("malformed JSON record");
  }
  EntailmentInstance inst;
  inst.story_id = story_of(j);
  inst.premise = string_field(j, "premise");
  inst.hypothesis_text = string_field(j, "hypothesis");
  inst.hypothesis = format::parse_hypothesis(inst.hypothesis_text);
  auto label = parse_label(string_field(j, "label"));
  if (!label) throw DataError("label must be entailment or contradiction");
  inst.gold = *label;
  if (j.contains("difficulty") && !j["difficulty"].is_null()) {
    if (!j["difficulty"].is_string()) {
      throw DataError("difficulty must be easy or hard");
    }
    inst.difficulty = parse_difficulty(j["difficulty"].get<std::string>());
    if (!inst.difficulty) throw DataError("difficulty must be easy or hard");
  }
  return inst;
}

std::vector<EntailmentInstance> load_dataset(std::istream& in, bool strict,
                                             std::vector<LineError>* errors,
                                             const LogFn& log) {
  std::vector<EntailmentInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (normalize_line(line)) continue;
    try {
      out.push_back(parse_instance(line));
    } catch (const DataError& e) {
      std::string msg = "line " + std::to_string(line_no) + ": " + e.what();
      if (strict) throw DataError(msg);
      if (log) log(msg);
      if (errors) errors->push_back({line_no, e.what()});
    }
  }
  return out;
}

std::size_t train_story_count(std::size_t stories, double ratio) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw std::invalid_argument("train ratio must be within [0, 1]");
  }
  const double exact = ratio * static_cast<double>(stories);
  auto n = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::min(n, stories);
}

StorySplit split_iid(const std::vector<EntailmentInstance>& instances,
                     std::uint64_t seed, double train_ratio) {
  std::vector<std::string> stories;
  std::unordered_set<std::string> seen;
  for (const auto& inst : instances) {
    if (inst.story_id && seen.insert(*inst.story_id).second) {
      stories.push_back(*inst.story_id);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = stories.size(); i > 1; --i) {
    std::swap(stories[i - 1], stories[uniform_below(rng, i)]);
  }
  const std::size_t n_train = train_story_count(stories.size(), train_ratio);
  StorySplit split;
  split.train.assign(stories.begin(), stories.begin() + n_train);
  split.test.assign(stories.begin() + n_train, stories.end());
  return split;
}

std::optional<double> SliceCounts::accuracy() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::optional<double> MetricsReport::story_exact_match() const {
  if (!stories) return std::nullopt;
  return stories->accuracy();
}

MetricsReport compute_metrics(
    const std::vector<Label>& predictions,
    const std::vector<EntailmentInstance>& instances) {
  if (predictions.size() != instances.size()) {
    throw std::invalid_argument(
        "prediction count " + std::to_string(predictions.size()) +
        " does not match instance count " + std::to_string(instances.size()));
  }
  MetricsReport r;
  bool all_have_story = true;
  std::vector<std::string> story_order;
  std::unordered_map<std::string, bool> story_ok;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const bool ok = predictions[i] == inst.gold;
    SliceCounts& slice =
        inst.comparator() == Comparator::kStart ? r.start : r.end;
    ++slice.total;
    ++r.all.total;
    if (ok) {
      ++slice.correct;
      ++r.all.correct;
    }
    if (!inst.story_id) {
      all_have_story = false;
      continue;
    }
    auto [it, inserted] = story_ok.emplace(*inst.story_id, true);
    if (inserted) story_order.push_back(*inst.story_id);
    it->second = it->second && ok;
  }
  if (all_have_story && !instances.empty()) {
    SliceCounts s;
    for (const auto& id : story_order) {
      ++s.total;
      if (story_ok[id]) ++s.correct;
    }
    r.stories = s;
  }
  return r;
}

std::string report_to_json(const MetricsReport& report) {
  ordered_json j;
  j["start_accuracy"] = optional_number(report.start_accuracy());
  j["end_accuracy"] = optional_number(report.end_accuracy());
  j["all_accuracy"] = optional_number(report.all_accuracy());
  j["story_exact_match"] = optional_number(report.story_exact_match());
  ordered_json counts;
  counts["start"] = counts_json(report.start);
  counts["end"] = counts_json(report.end);
  counts["all"] = counts_json(report.all);
  counts["stories"] =
      report.stories ? counts_json(*report.stories) : ordered_json(nullptr);
  j["counts"] = std::move(counts);
  return j.dump();
}

std::string report_table(const MetricsReport& report) {
  std::ostringstream os;
  auto row = [&](const char* name, const std::optional<SliceCounts>& c) {
    os << std::left << std::setw(10) << name << std::right;
    if (!c) {
      os << std::setw(9) << "-" << std::setw(9) << "-" << std::setw(10)
         << "n/a" << '\n';
      return;
    }
    os << std::setw(9) << c->correct << std::setw(9) << c->total;
    if (auto acc = c->accuracy()) {
      os << std::setw(10) << std::fixed << std::setprecision(4) << *acc;
    } else {
      os << std::setw(10) << "n/a";
    }
    os << '\n';
  };
  os << std::left << std::setw(10) << "slice" << std::right << std::setw(9)
     << "correct" << std::setw(9) << "total" << std::setw(10) << "accuracy"
     << '\n';
  row("start", report.start);
  row("end", report.end);
  row("all", report.all);
  row("story-em", report.stories);
  return os.str();
}

std::string prediction_to_json(const PredictionRecord& record) {
  ordered_json j;
  j["story_id"] =
      record.story_id ? ordered_json(*record.story_id) : ordered_json(nullptr);
  j["pred"] = label_name(record.pred);
  return j.dump();
}

std::vector<PredictionRecord> load_predictions(std::istream& in) {
  std::vector<PredictionRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (normalize_line(line)) continue;
    try {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        throw DataError("malformed JSON record");
      }
      PredictionRecord r;
      r.story_id = story_of(j);
      auto label = parse_label(string_field(j, "pred"));
      if (!label) throw DataError("pred must be entailment or contradiction");
      r.pred = *label;
      out.push_back(std::move(r));
    } catch (const DataError& e) {
      throw DataError("predictions line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return out;
}

MetricsReport evaluate(std::istream& predictions, std::istream& gold,
                       const EvalOptions& options, const LogFn& log) {
  const auto preds = load_predictions(predictions);
  const auto instances = load_dataset(gold, options.strict, nullptr, log);
  if (preds.size() != instances.size()) {
    throw DataError("predictions have " + std::to_string(preds.size()) +
                    " records but the dataset has " +
                    std::to_string(instances.size()));
  }
  std::vector<Label> labels;
  std::vector<EntailmentInstance> kept;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].story_id != instances[i].story_id) {
      throw DataError("prediction " + std::to_string(i + 1) +
                      " is for story " + preds[i].story_id.value_or("null") +
                      " but the dataset has " +
                      instances[i].story_id.value_or("null"));
    }
    if (options.only && instances[i].difficulty != options.only) continue;
    labels.push_back(preds[i].pred);
    kept.push_back(instances[i]);
  }
  return compute_metrics(labels, kept);
}

PredictStats predict_stream(std::istream& dataset, std::ostream& out,
                            engine::Predictor& predictor,
                            const engine::SymConfig& cfg, bool strict,
                            const LogFn& log) {
  std::vector<LineError> errors;
  const auto instances = load_dataset(dataset, strict, &errors, log);
  PredictStats stats;
  stats.record_errors = errors.size();
  for (const auto& inst : instances) {
    auto p = engine::predict(inst.hypothesis, inst.premise, predictor, cfg);
    out << prediction_to_json({inst.story_id, p.label}) << '\n';
    ++stats.instances;
    if (p.label == Label::kEntailment) ++stats.entailments;
  }
  return stats;
}

SplitStats split_stream(std::istream& dataset, std::ostream& train,
                        std::ostream& test, std::uint64_t seed, double ratio,
                        bool strict, const LogFn& log) {
  std::vector<std::pair<std::string, std::string>> records;  // story, line
  std::vector<EntailmentInstance> stubs;
  SplitStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(dataset, line)) {
    ++line_no;
    if (normalize_line(line)) continue;
    try {
      EntailmentInstance inst = parse_instance(line);
      if (!inst.story_id) throw DataError("record has no story_id");
      records.emplace_back(*inst.story_id, line);
      stubs.push_back(std::move(inst));
    } catch (const DataError& e) {
      std::string msg = "line " + std::to_string(line_no) + ": " + e.what();
      if (strict) throw DataError(msg);
      if (log) log(msg);
      ++stats.record_errors;
    }
  }
  const StorySplit split = split_iid(stubs, seed, ratio);
  const std::unordered_set<std::string> in_train(split.train.begin(),
                                                 split.train.end());
  for (const auto& [story, text] : records) {
    if (in_train.count(story)) {
      train << text << '\n';
      ++stats.train_instances;
    } else {
      test << text << '\n';
      ++stats.test_instances;
    }
  }
  stats.train_stories = split.train.size();
  stats.test_stories = split.test.size();
  if (log && stats.test_stories == 0 && stats.train_stories > 0) {
    log("split: test set is empty (" + std::to_string(stats.train_stories) +
        " stor" + (stats.train_stories == 1 ? "y" : "ies") + " in total)");
  }
  return stats;
}

}  // namespace tempora::eval

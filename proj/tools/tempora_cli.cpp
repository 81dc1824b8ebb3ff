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

// Command-line front end. Everything goes through the C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "tempora/tempora.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

int report_failure(tempora_status status) {
  std::cerr << "error: " << tempora_status_string(status) << ": "
            << tempora_last_error() << '\n';
  return kExitFailure;
}

// RAII wrapper for a predictor handle.
class PredictorHandle {
 public:
  PredictorHandle() = default;
  ~PredictorHandle() { tempora_predictor_close(handle_); }
  PredictorHandle(const PredictorHandle&) = delete;
  PredictorHandle& operator=(const PredictorHandle&) = delete;

  tempora_status open(const std::string& spec) {
    return tempora_predictor_open(spec.c_str(), &handle_);
  }
  tempora_predictor* get() const { return handle_; }

 private:
  tempora_predictor* handle_ = nullptr;
};

std::string sibling(const std::string& input, const char* suffix) {
  std::filesystem::path p(input);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal relation extraction, symbolic end-time reasoning "
               "and entailment evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tempora_version()));

  std::uint64_t seed = 42;
  bool strict = false;

  // extract
  std::string corpus, extract_out, mode = "both";
  unsigned workers = 1;
  bool plain = false;
  auto* extract = app.add_subcommand(
      "extract", "Harvest ordered event pairs from an annotated corpus");
  extract->add_option("--corpus", corpus, "Corpus JSONL (or text with --plain)")
      ->required();
  extract->add_option("--mode", mode, "within | cross | both")
      ->check(CLI::IsMember({"within", "cross", "both"}));
  extract->add_option("--out", extract_out, "Output pairs JSONL")->required();
  extract->add_option("--workers", workers, "Worker threads")
      ->check(CLI::Range(1u, 1024u));
  extract->add_flag("--plain", plain,
                    "Input is plain text; annotate it with the built-in rules");
  extract->add_flag("--strict", strict, "Fail on the first malformed record");

  // annotate
  std::string annotate_in, annotate_out, doc_id;
  auto* annotate = app.add_subcommand(
      "annotate", "Rule-annotate a plain-text document into corpus format");
  annotate->add_option("--in", annotate_in, "Plain text file")->required();
  annotate->add_option("--out", annotate_out, "Corpus JSONL")->required();
  annotate->add_option("--doc-id", doc_id, "Document id (default: file stem)");

  // format
  std::string kind = "pretrain", format_in, format_out;
  auto* format = app.add_subcommand(
      "format", "Write seq2seq pre-training or duration instances");
  format->add_option("--kind", kind, "pretrain | duration")
      ->check(CLI::IsMember({"pretrain", "duration"}));
  format->add_option("--in", format_in, "Input JSONL")->required();
  format->add_option("--out", format_out, "Output JSONL")->required();
  format->add_option("--seed", seed, "Negative-sampling seed");
  format->add_flag("--strict", strict, "Fail on the first malformed record");

  // predict
  std::string predict_in, predict_out, predictor_spec;
  double int_max = 1000.0;
  auto* predict = app.add_subcommand(
      "predict", "Label entailment instances with the symbolic engine");
  predict->add_option("--in", predict_in, "Dataset JSONL")->required();
  predict->add_option("--out", predict_out, "Predictions JSONL")->required();
  predict->add_option("--predictor", predictor_spec,
                      "baseline | cmd:<command> | http://host:port/path")
      ->required();
  predict->add_option("--int-max", int_max, "tanh saturation constant")
      ->check(CLI::PositiveNumber);
  predict->add_option("--seed", seed, "Unused; accepted for uniformity");
  predict->add_flag("--strict", strict, "Fail on the first malformed record");

  // eval
  std::string pred_path, gold_path, report_out, difficulty;
  bool json_only = false;
  auto* eval = app.add_subcommand("eval", "Score predictions against gold");
  eval->add_option("--pred", pred_path, "Predictions JSONL")->required();
  eval->add_option("--gold", gold_path, "Gold dataset JSONL")->required();
  eval->add_option("--difficulty", difficulty, "Restrict to easy | hard")
      ->check(CLI::IsMember({"easy", "hard"}));
  eval->add_option("--out", report_out, "Write the JSON report here");
  eval->add_flag("--json", json_only, "Print the JSON report instead of a table");
  eval->add_flag("--strict", strict, "Fail on the first malformed record");

  // split
  std::string split_in, train_out, test_out;
  double ratio = 0.2;
  auto* split = app.add_subcommand("split", "Story-level i.i.d. train/test split");
  split->add_option("--in", split_in, "Dataset JSONL")->required();
  split->add_option("--seed", seed, "Shuffle seed");
  split->add_option("--ratio", ratio, "Train fraction of stories")
      ->check(CLI::Range(0.0, 1.0));
  split->add_option("--train-out", train_out, "Default: <in>.train.jsonl");
  split->add_option("--test-out", test_out, "Default: <in>.test.jsonl");
  split->add_flag("--strict", strict, "Fail on the first malformed record");

  // ping-predictor
  std::string ping_spec;
  auto* ping = app.add_subcommand(
      "ping-predictor", "One dist and one dur round trip with timings");
  ping->add_option("--predictor", ping_spec,
                   "baseline | cmd:<command> | http://host:port/path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kExitUsage;
  }

  tempora_status st = TEMPORA_OK;

  if (*extract) {
    tempora_extract_options opts{};
    opts.corpus_path = corpus.c_str();
    opts.out_path = extract_out.c_str();
    opts.mode = mode == "within"  ? TEMPORA_EXTRACT_WITHIN
                : mode == "cross" ? TEMPORA_EXTRACT_CROSS
                                  : TEMPORA_EXTRACT_BOTH;
    opts.strict = strict ? 1 : 0;
    opts.plain_text = plain ? 1 : 0;
    opts.workers = workers;
    tempora_extract_stats stats{};
    if ((st = tempora_extract_file(&opts, &stats)) != TEMPORA_OK) {
      return report_failure(st);
    }
    std::cerr << "documents " << stats.documents << ", record errors "
              << stats.record_errors << ", within-sentence pairs "
              << stats.within_pairs << ", cross-sentence pairs "
              << stats.cross_pairs << '\n';
    return 0;
  }

  if (*annotate) {
    st = tempora_annotate_file(annotate_in.c_str(),
                               doc_id.empty() ? nullptr : doc_id.c_str(),
                               annotate_out.c_str());
    return st == TEMPORA_OK ? 0 : report_failure(st);
  }

  if (*format) {
    tempora_format_stats stats{};
    st = kind == "pretrain"
             ? tempora_format_pretraining_file(format_in.c_str(),
                                               format_out.c_str(), seed,
                                               strict ? 1 : 0, &stats)
             : tempora_format_duration_file(format_in.c_str(),
                                            format_out.c_str(), strict ? 1 : 0,
                                            &stats);
    if (st != TEMPORA_OK) return report_failure(st);
    std::cerr << "records " << stats.records << ", record errors "
              << stats.record_errors;
    if (kind == "pretrain") std::cerr << ", negatives " << stats.negatives;
    std::cerr << '\n';
    return 0;
  }

  if (*predict) {
    PredictorHandle predictor;
    if ((st = predictor.open(predictor_spec)) != TEMPORA_OK) {
      return st == TEMPORA_ERR_ARGUMENT
                 ? (std::cerr << "error: " << tempora_last_error() << '\n',
                    kExitUsage)
                 : report_failure(st);
    }
    tempora_predict_stats stats{};
    st = tempora_predict_file(predictor.get(), predict_in.c_str(),
                              predict_out.c_str(), int_max, strict ? 1 : 0,
                              &stats);
    if (st != TEMPORA_OK) return report_failure(st);
    std::cerr << "instances " << stats.instances << ", record errors "
              << stats.record_errors << ", entailment "
              << stats.entailments << '\n';
    return 0;
  }

  if (*eval) {
    tempora_report* report = nullptr;
    st = tempora_evaluate_files(pred_path.c_str(), gold_path.c_str(),
                                difficulty.empty() ? nullptr
                                                   : difficulty.c_str(),
                                strict ? 1 : 0, &report);
    if (st != TEMPORA_OK) return report_failure(st);
    std::unique_ptr<tempora_report, decltype(&tempora_report_free)> guard(
        report, &tempora_report_free);
    if (!report_out.empty()) {
      std::ofstream out(report_out, std::ios::binary | std::ios::trunc);
      out << tempora_report_json(report) << '\n';
      if (!out) {
        std::cerr << "error: cannot write " << report_out << '\n';
        return kExitFailure;
      }
    }
    if (json_only) {
      std::cout << tempora_report_json(report) << '\n';
    } else {
      std::cout << tempora_report_table(report);
    }
    return 0;
  }

  if (*split) {
    if (train_out.empty()) train_out = sibling(split_in, ".train.jsonl");
    if (test_out.empty()) test_out = sibling(split_in, ".test.jsonl");
    tempora_split_stats stats{};
    st = tempora_split_file(split_in.c_str(), train_out.c_str(),
                            test_out.c_str(), seed, ratio, strict ? 1 : 0,
                            &stats);
    if (st != TEMPORA_OK) return report_failure(st);
    std::cout << "train " << train_out << ": " << stats.train_stories
              << " stories, " << stats.train_instances << " instances\n"
              << "test  " << test_out << ": " << stats.test_stories
              << " stories, " << stats.test_instances << " instances\n";
    return 0;
  }

  if (*ping) {
    PredictorHandle predictor;
    if ((st = predictor.open(ping_spec)) != TEMPORA_OK) {
      return report_failure(st);
    }
    double dist_ms = 0.0, dur_ms = 0.0;
    if ((st = tempora_predictor_ping(predictor.get(), &dist_ms, &dur_ms)) !=
        TEMPORA_OK) {
      return report_failure(st);
    }
    std::printf("dist round trip: %.3f ms\ndur round trip:  %.3f ms\n",
                dist_ms, dur_ms);
    return 0;
  }

  return kExitUsage;
}

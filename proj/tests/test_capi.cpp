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


// Exercises the exported C interface only; links against the shared library.

#include <tempora/tempora.h>

#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "test_files.hpp"

namespace {

using json = nlohmann::json;
using tempora::testing::read_file;
using tempora::testing::read_lines;
using tempora::testing::TempDir;
using tempora::testing::write_file;

const std::string kData = TEMPORA_TEST_DATA_DIR;
const std::string kFake = TEMPORA_FAKE_PREDICTOR;

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

struct Predictor {
  explicit Predictor(const std::string& spec) {
    status = tempora_predictor_open(spec.c_str(), &handle);
  }
  ~Predictor() { tempora_predictor_close(handle); }
  Predictor(const Predictor&) = delete;
  Predictor& operator=(const Predictor&) = delete;
  tempora_predictor* handle = nullptr;
  tempora_status status;
};

struct Report {
  ~Report() { tempora_report_free(ptr); }
  tempora_report* ptr = nullptr;
};

TEST_CASE("status strings and last error") {
  CHECK(std::string(tempora_version()).size() > 0);
  for (int s = TEMPORA_OK; s <= TEMPORA_ERR_INTERNAL; ++s) {
    CHECK(std::string(tempora_status_string(static_cast<tempora_status>(s)))
              .size() > 0);
  }
  int unit = -1;
  CHECK(tempora_bucket_of_seconds(-1.0, &unit) == TEMPORA_ERR_DOMAIN);
  CHECK(std::string(tempora_last_error()).size() > 0);
  CHECK(tempora_bucket_of_seconds(NAN, &unit) == TEMPORA_ERR_DOMAIN);
  CHECK(tempora_bucket_of_seconds(10.0, nullptr) == TEMPORA_ERR_ARGUMENT);
  CHECK(tempora_bucket_of_seconds(10.0, &unit) == TEMPORA_OK);
  CHECK(std::string(tempora_last_error()).empty());
  CHECK(unit == 0);
}

TEST_CASE("last error is per thread") {
  int unit = 0;
  REQUIRE(tempora_bucket_of_seconds(-1.0, &unit) == TEMPORA_ERR_DOMAIN);
  std::string other = "unset";
  std::thread([&] { other = tempora_last_error(); }).join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(tempora_last_error()).empty());
}

TEST_CASE("units") {
  const double seconds[] = {0, 3599, 3600, 86400, 604800,
                            2592000, 31536000, 315360000, 1e12};
  const int expected[] = {0, 0, 1, 2, 3, 4, 5, 6, 6};
  for (int i = 0; i < 9; ++i) {
    int unit = -1;
    REQUIRE(tempora_bucket_of_seconds(seconds[i], &unit) == TEMPORA_OK);
    CHECK(unit == expected[i]);
  }
  const char* names[] = {"minutes", "hours", "days",   "weeks",
                         "months",  "years", "decades"};
  for (int k = 0; k < TEMPORA_UNIT_COUNT; ++k) {
    CHECK(std::string(tempora_unit_name(k)) == names[k]);
    const std::string token = tempora_unit_token(k);
    CHECK(token == "[extra_id_" + std::to_string(k) + "]");
    CHECK(tempora_parse_unit_token(token.c_str()) == k);
  }
  CHECK(tempora_unit_name(7) == nullptr);
  CHECK(tempora_unit_token(-1) == nullptr);
  CHECK(tempora_parse_unit_token("[extra_id_7]") == -1);
  CHECK(tempora_parse_unit_token("weeks") == -1);
}

TEST_CASE("engine functions") {
  const double p[2] = {0.9, 0.1};
  double d[7] = {0, 0, 0, 1, 0, 0, 0};
  double v[7] = {0, 0, 1, 0, 0, 0, 0};
  double dist = 0.0, dur = 0.0;
  REQUIRE(tempora_dist_value(p, d, 0, &dist) == TEMPORA_OK);
  CHECK(dist == doctest::Approx(3.0 * std::tanh(-800.0)));
  REQUIRE(tempora_dur_value(v, &dur) == TEMPORA_OK);
  CHECK(dur == 2.0);
  int rel = -1;
  REQUIRE(tempora_infer_end_label(dist, dur, &rel) == TEMPORA_OK);
  CHECK(rel == TEMPORA_BEFORE);
  REQUIRE(tempora_infer_end_label(0.0, 0.0, &rel) == TEMPORA_OK);
  CHECK(rel == TEMPORA_AFTER);

  const double bad_p[2] = {0.7, 0.7};
  CHECK(tempora_dist_value(bad_p, d, 0, &dist) == TEMPORA_ERR_DATA);
  v[0] = -0.5;
  v[1] = 0.5;
  CHECK(tempora_dur_value(v, &dur) == TEMPORA_ERR_DATA);

  const double half[2] = {0.5, 0.5};
  double uni[7];
  for (double& x : uni) x = 1.0 / 7.0;
  double loss = 0.0;
  REQUIRE(tempora_end_loss(half, uni, d, TEMPORA_BEFORE, 0, &loss) ==
          TEMPORA_OK);
  // pred = 0 + 3 favors after.
  CHECK(loss ==
        doctest::Approx(6.0 + std::log1p(std::exp(-6.0))).epsilon(1e-12));
  double grad[TEMPORA_GRADIENT_SIZE];
  REQUIRE(tempora_end_loss_grad(half, uni, d, TEMPORA_AFTER, 0, grad) ==
          TEMPORA_OK);
  const double dl_dpred = -2.0 / (1.0 + std::exp(6.0));
  for (int k = 0; k < 7; ++k) {
    CHECK(grad[9 + k] == doctest::Approx(k * dl_dpred).epsilon(1e-12));
  }
  CHECK(tempora_end_loss(half, uni, d, 5, 0, &loss) == TEMPORA_ERR_ARGUMENT);
}

TEST_CASE("log callback receives skipped records") {
  TempDir dir;
  write_file(dir / "pairs.jsonl", "{bad\n");
  std::vector<std::string> messages;
  tempora_set_log_callback(
      [](void* user, const char* msg) {
        static_cast<std::vector<std::string>*>(user)->push_back(msg);
      },
      &messages);
  tempora_format_stats stats{};
  const auto out = (dir / "out.jsonl").string();
  CHECK(tempora_format_pretraining_file((dir / "pairs.jsonl").c_str(),
                                        out.c_str(), 7, 0,
                                        &stats) == TEMPORA_OK);
  tempora_set_log_callback(nullptr, nullptr);
  CHECK(stats.record_errors == 1);
  REQUIRE(messages.size() == 1);
  CHECK(contains(messages[0], "line 1"));
  CHECK(read_file(out).empty());
}

TEST_CASE("predictor specs") {
  Predictor bad("oracle");
  CHECK(bad.status == TEMPORA_ERR_ARGUMENT);
  CHECK(bad.handle == nullptr);
  CHECK(contains(tempora_last_error(), "oracle"));

  Predictor base("baseline");
  REQUIRE(base.status == TEMPORA_OK);
  double p[2], d[7], v[7];
  REQUIRE(tempora_predictor_query_dist(base.handle, "he ate", "he slept",
                                       "He ate. He slept.", p,
                                       d) == TEMPORA_OK);
  CHECK(p[0] == 0.8);
  CHECK(p[1] == doctest::Approx(0.2));
  CHECK(d[1] == 1.0);
  REQUIRE(tempora_predictor_query_dur(base.handle, "he slept", v) ==
          TEMPORA_OK);
  double sum = 0.0;
  for (double x : v) sum += x;
  CHECK(sum == doctest::Approx(1.0));
  double dist_ms = -1, dur_ms = -1;
  CHECK(tempora_predictor_ping(base.handle, &dist_ms, &dur_ms) == TEMPORA_OK);
  CHECK(dist_ms >= 0.0);
  CHECK(dur_ms >= 0.0);
  CHECK(tempora_predictor_query_dur(nullptr, "x", v) == TEMPORA_ERR_ARGUMENT);
}

TEST_CASE("predict_hypothesis over baseline and subprocess") {
  const char* premise =
      "Tom woke up late. He skipped breakfast. He ran to the bus stop.";
  const char* hyps[] = {"He skipped breakfast starts before he ran to the bus.",
                        "He ran to the bus starts before he skipped breakfast.",
                        "He woke up ends after he ran to the bus stop.",
                        "Tom woke up late ends before he skipped breakfast."};
  Predictor base("baseline");
  Predictor sub("cmd:" + kFake);
  REQUIRE(base.status == TEMPORA_OK);
  REQUIRE(sub.status == TEMPORA_OK);
  for (const char* h : hyps) {
    int a = -1, b = -1;
    REQUIRE(tempora_predict_hypothesis(base.handle, premise, h, 0, &a) ==
            TEMPORA_OK);
    REQUIRE(tempora_predict_hypothesis(sub.handle, premise, h, 0, &b) ==
            TEMPORA_OK);
    CHECK(a == b);
  }
  int label = -1;
  REQUIRE(tempora_predict_hypothesis(base.handle, premise, hyps[0], 0,
                                     &label) == TEMPORA_OK);
  CHECK(label == TEMPORA_ENTAILMENT);
  REQUIRE(tempora_predict_hypothesis(base.handle, premise, hyps[1], 0,
                                     &label) == TEMPORA_OK);
  CHECK(label == TEMPORA_CONTRADICTION);
  CHECK(tempora_predict_hypothesis(base.handle, premise, "no connective", 0,
                                   &label) == TEMPORA_ERR_DATA);
}

TEST_CASE("subprocess failure is a predictor error") {
  Predictor sub("cmd:" + kFake + " --error-on=breakfast");
  REQUIRE(sub.status == TEMPORA_OK);
  double v[7];
  CHECK(tempora_predictor_query_dur(sub.handle, "ate breakfast", v) ==
        TEMPORA_ERR_PREDICTOR);
  CHECK(contains(tempora_last_error(), "breakfast"));
}

TEST_CASE("http predictor") {
  // Relays to a baseline handle opened through the same interface.
  Predictor base("baseline");
  REQUIRE(base.status == TEMPORA_OK);
  std::atomic<int> requests{0};
  httplib::Server server;
  server.Post("/predict", [&](const httplib::Request& req,
                              httplib::Response& res) {
    ++requests;
    json q = json::parse(req.body);
    json out{{"id", q["id"]}};
    if (q["type"] == "dist") {
      double p[2], d[7];
      tempora_predictor_query_dist(
          base.handle, q["event_a"].get<std::string>().c_str(),
          q["event_b"].get<std::string>().c_str(),
          q["context"].get<std::string>().c_str(), p, d);
      out["p_before"] = p[0];
      out["p_after"] = p[1];
      out["d"] = std::vector<double>(d, d + 7);
    } else {
      double v[7];
      tempora_predictor_query_dur(base.handle,
                                  q["event"].get<std::string>().c_str(), v);
      out["v"] = std::vector<double>(v, v + 7);
    }
    res.set_content(out.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  Predictor http("http://127.0.0.1:" + std::to_string(port) + "/predict");
  REQUIRE(http.status == TEMPORA_OK);
  double dist_ms = 0, dur_ms = 0;
  CHECK(tempora_predictor_ping(http.handle, &dist_ms, &dur_ms) == TEMPORA_OK);
  CHECK(requests == 2);

  TempDir dir;
  const auto via_http = (dir / "http.jsonl").string();
  tempora_predict_stats stats{};
  CHECK(tempora_predict_file(http.handle,
                             (kData + "/mini_entailment.jsonl").c_str(),
                             via_http.c_str(), 0, 1, &stats) == TEMPORA_OK);
  CHECK(stats.instances == 40);
  CHECK(read_file(via_http) ==
        read_file(kData + "/mini_entailment.expected_preds.jsonl"));

  server.stop();
  listener.join();
  CHECK(tempora_predictor_ping(http.handle, &dist_ms, &dur_ms) ==
        TEMPORA_ERR_PREDICTOR);
}

TEST_CASE("extract_file") {
  TempDir dir;
  const std::string corpus = kData + "/mini_corpus.jsonl";
  const std::string golden = read_file(kData + "/mini_corpus.golden.jsonl");
  for (unsigned workers : {0u, 1u, 8u}) {
    const auto out = (dir / ("pairs" + std::to_string(workers))).string();
    tempora_extract_options opts{};
    opts.corpus_path = corpus.c_str();
    opts.out_path = out.c_str();
    opts.mode = TEMPORA_EXTRACT_BOTH;
    opts.workers = workers;
    tempora_extract_stats stats{};
    REQUIRE(tempora_extract_file(&opts, &stats) == TEMPORA_OK);
    CHECK(stats.documents == 20);
    CHECK(stats.record_errors == 0);
    CHECK(stats.within_pairs + stats.cross_pairs ==
          read_lines(kData + "/mini_corpus.golden.jsonl").size());
    CHECK(read_file(out) == golden);
  }

  const auto missing = (dir / "nope.jsonl").string();
  const auto out = (dir / "never.jsonl").string();
  tempora_extract_options opts{};
  opts.corpus_path = missing.c_str();
  opts.out_path = out.c_str();
  opts.mode = TEMPORA_EXTRACT_BOTH;
  CHECK(tempora_extract_file(&opts, nullptr) == TEMPORA_ERR_IO);
  CHECK(contains(tempora_last_error(), missing));
  CHECK_FALSE(std::filesystem::exists(out));

  write_file(dir / "broken.jsonl",
             read_file(corpus) + "{\"doc_id\":\"x\"}\n");
  const auto broken = (dir / "broken.jsonl").string();
  opts.corpus_path = broken.c_str();
  opts.strict = 1;
  CHECK(tempora_extract_file(&opts, nullptr) == TEMPORA_ERR_DATA);
  CHECK(contains(tempora_last_error(), "line 21"));
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("annotate then extract plain text") {
  TempDir dir;
  write_file(dir / "story.txt",
             "I went to the park on January 2nd.\n"
             "I wrote a review on January 20th.\n");
  const auto text = (dir / "story.txt").string();
  const auto annotated = (dir / "story.jsonl").string();
  REQUIRE(tempora_annotate_file(text.c_str(), "story", annotated.c_str()) ==
          TEMPORA_OK);
  const auto lines = read_lines(annotated);
  REQUIRE(lines.size() == 1);
  CHECK(json::parse(lines[0])["doc_id"] == "story");

  const auto from_corpus = (dir / "a.jsonl").string();
  const auto from_plain = (dir / "b.jsonl").string();
  tempora_extract_options opts{};
  opts.corpus_path = annotated.c_str();
  opts.out_path = from_corpus.c_str();
  opts.mode = TEMPORA_EXTRACT_CROSS;
  REQUIRE(tempora_extract_file(&opts, nullptr) == TEMPORA_OK);
  opts.corpus_path = text.c_str();
  opts.out_path = from_plain.c_str();
  opts.plain_text = 1;
  REQUIRE(tempora_extract_file(&opts, nullptr) == TEMPORA_OK);
  const auto pairs = read_lines(from_corpus);
  REQUIRE(pairs.size() == 1);
  auto pair = json::parse(pairs[0]);
  CHECK(pair["relation"] == "before");
  CHECK(pair["distance"] == "weeks");
  CHECK(json::parse(read_lines(from_plain).at(0))["relation"] == "before");
}

TEST_CASE("format files") {
  TempDir dir;
  const auto pairs = (dir / "pairs.jsonl").string();
  const auto out = (dir / "pretrain.jsonl").string();
  write_file(pairs, read_file(kData + "/mini_corpus.golden.jsonl"));
  tempora_format_stats stats{};
  REQUIRE(tempora_format_pretraining_file(pairs.c_str(), out.c_str(), 7, 1,
                                          &stats) == TEMPORA_OK);
  CHECK(stats.records == read_lines(pairs).size());
  CHECK(stats.record_errors == 0);
  std::size_t negatives = 0;
  for (const auto& line : read_lines(out)) {
    auto j = json::parse(line);
    REQUIRE(j.contains("input"));
    negatives += contains(j["output"].get<std::string>(), "negative");
  }
  CHECK(negatives == stats.negatives);

  const auto events = (dir / "events.jsonl").string();
  const auto dur = (dir / "dur.jsonl").string();
  write_file(events, R"({"event":"slept","verb_index":0,"unit":"days"})"
                     "\n");
  REQUIRE(tempora_format_duration_file(events.c_str(), dur.c_str(), 1,
                                       &stats) == TEMPORA_OK);
  CHECK(read_file(dur) ==
        R"({"input":"event: [V] slept","output":"answer: [extra_id_2]"})"
        "\n");
}

TEST_CASE("predict, evaluate and report") {
  TempDir dir;
  const std::string gold = kData + "/mini_entailment.jsonl";
  const auto preds = (dir / "preds.jsonl").string();
  Predictor base("baseline");
  tempora_predict_stats stats{};
  REQUIRE(tempora_predict_file(base.handle, gold.c_str(), preds.c_str(), 0, 1,
                               &stats) == TEMPORA_OK);
  CHECK(stats.instances == 40);
  CHECK(stats.entailments == 24);
  CHECK(read_file(preds) ==
        read_file(kData + "/mini_entailment.expected_preds.jsonl"));

  Report all;
  REQUIRE(tempora_evaluate_files(preds.c_str(), gold.c_str(), nullptr, 1,
                                 &all.ptr) == TEMPORA_OK);
  CHECK(std::string(tempora_report_json(all.ptr)) + "\n" ==
        read_file(kData + "/mini_entailment.expected_report.json"));
  double value = 0.0;
  CHECK(tempora_report_metric(all.ptr, TEMPORA_METRIC_START, &value) == 1);
  CHECK(value == 0.8);
  CHECK(tempora_report_metric(all.ptr, TEMPORA_METRIC_STORY_EM, &value) == 1);
  CHECK(value == 0.1);
  CHECK(contains(tempora_report_table(all.ptr), "0.7500"));

  for (const char* slice : {"easy", "hard"}) {
    Report r;
    REQUIRE(tempora_evaluate_files(preds.c_str(), gold.c_str(), slice, 1,
                                   &r.ptr) == TEMPORA_OK);
    CHECK(std::string(tempora_report_json(r.ptr)) + "\n" ==
          read_file(kData + "/mini_entailment.expected_report." + slice +
                    ".json"));
  }
  Report none;
  CHECK(tempora_evaluate_files(preds.c_str(), gold.c_str(), "medium", 1,
                               &none.ptr) == TEMPORA_ERR_ARGUMENT);
  CHECK(none.ptr == nullptr);

  auto lines = read_lines(preds);
  lines.pop_back();
  std::string shorter;
  for (const auto& l : lines) shorter += l + "\n";
  write_file(dir / "short.jsonl", shorter);
  Report misaligned;
  CHECK(tempora_evaluate_files((dir / "short.jsonl").c_str(), gold.c_str(),
                               nullptr, 1,
                               &misaligned.ptr) == TEMPORA_ERR_DATA);
}

TEST_CASE("predictor failure leaves no output") {
  TempDir dir;
  const std::string gold = kData + "/mini_entailment.jsonl";
  const auto preds = (dir / "preds.jsonl").string();
  Predictor dying("cmd:" + kFake + " --die-after=5");
  REQUIRE(dying.status == TEMPORA_OK);
  CHECK(tempora_predict_file(dying.handle, gold.c_str(), preds.c_str(), 0, 0,
                             nullptr) == TEMPORA_ERR_PREDICTOR);
  CHECK_FALSE(std::filesystem::exists(preds));
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    FAIL("unexpected file " << entry.path());
  }
}

TEST_CASE("split_file") {
  TempDir dir;
  const std::string data = kData + "/mini_entailment.jsonl";
  const auto train = (dir / "train.jsonl").string();
  const auto test = (dir / "test.jsonl").string();
  tempora_split_stats a{}, b{};
  REQUIRE(tempora_split_file(data.c_str(), train.c_str(), test.c_str(), 42,
                             0.2, 1, &a) == TEMPORA_OK);
  const std::string train1 = read_file(train), test1 = read_file(test);
  REQUIRE(tempora_split_file(data.c_str(), train.c_str(), test.c_str(), 42,
                             0.2, 1, &b) == TEMPORA_OK);
  CHECK(read_file(train) == train1);
  CHECK(read_file(test) == test1);
  CHECK(a.train_stories == 2);
  CHECK(a.test_stories == 8);
  CHECK(a.train_instances == 8);
  CHECK(a.test_instances == 32);
  CHECK(tempora_split_file(data.c_str(), train.c_str(), test.c_str(), 42, 1.5,
                           1, &a) == TEMPORA_ERR_ARGUMENT);
}

}  // namespace

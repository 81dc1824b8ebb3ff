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


#include <random>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "format.hpp"
#include "test_util.hpp"

namespace tempora::format {
namespace {

extract::EventPair within_pair() {
  extract::EventPair p;
  p.event_a = {"I purchased food", 1};
  p.event_b = {"going to the park", 0};
  p.relation = Relation::kBefore;
  p.paragraph = "I purchased food before going to the park .";
  p.provenance = {extract::Provenance::kWithinSentence, "d", 0, 0, 0};
  return p;
}

extract::EventPair cross_pair() {
  extract::EventPair p;
  p.event_a = {"going to the park", 0};
  p.event_b = {"I wrote a review", 1};
  p.relation = Relation::kBefore;
  p.distance = TemporalUnit::kWeeks;
  p.paragraph = "I went to the park on January 2nd . I wrote a review on the 10th .";
  p.provenance = {extract::Provenance::kCrossSentence, "d", 0, 0, 1};
  return p;
}

const std::regex kInputGrammar(
    R"(event: (.+) starts (before|after) (.+)\. story: (.+))");
const std::regex kOutputGrammar(
    R"(answer: (positive|negative)( \[extra_id_[0-6]\])?)");

TEST_CASE("pre-training templates") {
  auto pos = format_pretraining_instance(within_pair(), false);
  CHECK(pos.input_text ==
        "event: I purchased food starts before going to the park. story: I "
        "purchased food before going to the park .");
  CHECK(pos.output_text == "answer: positive");

  auto neg = format_pretraining_instance(within_pair(), true);
  CHECK(neg.input_text ==
        "event: I purchased food starts after going to the park. story: I "
        "purchased food before going to the park .");
  CHECK(neg.output_text == "answer: negative");

  auto cross = format_pretraining_instance(cross_pair(), false);
  CHECK(cross.output_text == "answer: positive [extra_id_3]");
  auto cross_neg = format_pretraining_instance(cross_pair(), true);
  CHECK(cross_neg.output_text == "answer: negative [extra_id_3]");
  CHECK(cross_neg.input_text.find(" starts after ") != std::string::npos);

  CHECK(instance_to_json(pos) ==
        R"({"input":"event: I purchased food starts before going to the park. )"
        R"(story: I purchased food before going to the park .",)"
        R"("output":"answer: positive"})");
}

TEST_CASE("negative sampling") {
  CHECK(sample_negatives(0, 7).empty());
  auto a = sample_negatives(10000, 7);
  auto b = sample_negatives(10000, 7);
  CHECK(a == b);
  const double frac =
      static_cast<double>(std::count(a.begin(), a.end(), true)) / a.size();
  CHECK(frac >= 0.48);
  CHECK(frac <= 0.52);
  CHECK(sample_negatives(10000, 8) != a);
  // A prefix of a longer run is the shorter run.
  auto prefix = sample_negatives(100, 7);
  CHECK(std::equal(prefix.begin(), prefix.end(), a.begin()));
}

TEST_CASE("duration instances") {
  auto bus = format_duration_instance({"took the bus", 0}, TemporalUnit::kHours);
  CHECK(bus.input_text == "event: [V] took the bus");
  CHECK(bus.output_text == "answer: [extra_id_1]");

  auto slept = format_duration_instance({"slept", 0}, TemporalUnit::kDays);
  CHECK(slept.input_text == "event: [V] slept");
  CHECK(slept.output_text == "answer: [extra_id_2]");

  auto mid = format_duration_instance({"the old man walked home", 3},
                                      TemporalUnit::kMinutes);
  CHECK(mid.input_text == "event: the old man [V] walked home");

  auto four = format_duration_instance({"w0 w1 w2 w3", 2},
                                       TemporalUnit::kMinutes);
  CHECK(four.input_text == "event: w0 w1 [V] w2 w3");

  CHECK_THROWS_AS(format_duration_instance({"slept", std::nullopt},
                                           TemporalUnit::kDays),
                  std::invalid_argument);
  CHECK_THROWS_AS(format_duration_instance({"slept", 1}, TemporalUnit::kDays),
                  std::invalid_argument);
}

TEST_CASE("hypothesis parsing") {
  auto h = parse_hypothesis("distracted starts before try.");
  CHECK(h.event_a.text == "distracted");
  CHECK(h.comparator == Comparator::kStart);
  CHECK(h.relation == Relation::kBefore);
  CHECK(h.event_b.text == "try");
  CHECK(h.trailing_period);

  const std::string row2 =
      "The adults laughed at the jokes ends before we watch Spongebob as a "
      "family";
  h = parse_hypothesis(row2);
  CHECK(h.event_a.text == "The adults laughed at the jokes");
  CHECK(h.comparator == Comparator::kEnd);
  CHECK(h.relation == Relation::kBefore);
  CHECK(h.event_b.text == "we watch Spongebob as a family");
  CHECK_FALSE(h.trailing_period);
  CHECK(compose_hypothesis(h) == row2);

  h = parse_hypothesis("He ate ends after she left.");
  CHECK(h.comparator == Comparator::kEnd);
  CHECK(h.relation == Relation::kAfter);

  CHECK_THROWS_AS(parse_hypothesis("nothing to see here."), DataError);
  CHECK_THROWS_AS(parse_hypothesis("a starts before b ends after c."),
                  DataError);
  try {
    parse_hypothesis("no connective");
    FAIL("expected a parse error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("no connective") != std::string::npos);
  }
}

std::string random_phrase(std::mt19937_64& rng) {
  static const char* kWords[] = {"the", "dog", "ran", "home", "she", "ate",
                                 "a", "quiet", "dinner", "starts", "ends",
                                 "we", "left", "park", "x"};
  std::string out;
  const int n = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += kWords[rng() % std::size(kWords)];
  }
  return out;
}

TEST_CASE("parse and compose round trip") {
  std::mt19937_64 rng(19);
  int checked = 0;
  for (int i = 0; i < 800; ++i) {
    ParsedHypothesis h;
    h.event_a = {random_phrase(rng), std::nullopt};
    h.event_b = {random_phrase(rng), std::nullopt};
    h.comparator = (rng() & 1) ? Comparator::kStart : Comparator::kEnd;
    h.relation = (rng() & 1) ? Relation::kBefore : Relation::kAfter;
    h.trailing_period = rng() & 1;
    const std::string text = compose_hypothesis(h);
    ParsedHypothesis back;
    try {
      back = parse_hypothesis(text);
    } catch (const DataError&) {
      // Phrases that themselves contain a connective are out of contract.
      continue;
    }
    CHECK(back == h);
    CHECK(compose_hypothesis(back) == text);
    ++checked;
  }
  CHECK(checked >= 500);
}

TEST_CASE("template grammar and flip involution") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 600; ++i) {
    extract::EventPair p = (rng() & 1) ? within_pair() : cross_pair();
    p.event_a.text = random_phrase(rng);
    p.event_b.text = random_phrase(rng);
    p.relation = (rng() & 1) ? Relation::kBefore : Relation::kAfter;
    if (p.distance) p.distance = unit_from_index(rng() % 7);
    const bool flip_it = rng() & 1;
    auto inst = format_pretraining_instance(p, flip_it);
    std::smatch m;
    REQUIRE(std::regex_match(inst.input_text, m, kInputGrammar));
    CHECK(m[4].str() == p.paragraph);
    CHECK(std::regex_match(inst.output_text, kOutputGrammar));
    CHECK((inst.output_text.find("[extra_id_") != std::string::npos) ==
          p.distance.has_value());

    extract::EventPair flipped = p;
    flipped.relation = flip(p.relation);
    auto twice = format_pretraining_instance(flipped, true);
    // Flipping the stated relation of the flipped instance restores the
    // positive input.
    CHECK(twice.input_text == format_pretraining_instance(p, false).input_text);
  }
}

TEST_CASE("pre-training stream") {
  std::ostringstream pairs;
  for (int i = 0; i < 50; ++i) {
    pairs << extract::pair_to_json(i % 2 ? within_pair() : cross_pair())
          << "\n";
  }
  pairs << "{bad\n";
  std::istringstream in1(pairs.str()), in2(pairs.str());
  std::ostringstream out1, out2;
  auto s1 = format_pretraining_stream(in1, out1, 7, false);
  auto s2 = format_pretraining_stream(in2, out2, 7, false);
  CHECK(s1.records == 50);
  CHECK(s1.record_errors == 1);
  CHECK(out1.str() == out2.str());
  auto flips = sample_negatives(50, 7);
  CHECK(s1.negatives ==
        static_cast<std::size_t>(std::count(flips.begin(), flips.end(), true)));
  std::istringstream lines(out1.str());
  std::string line;
  std::size_t i = 0;
  while (std::getline(lines, line)) {
    const bool negative = line.find("answer: negative") != std::string::npos;
    CHECK(negative == flips[i]);
    ++i;
  }
  CHECK(i == 50);

  std::istringstream strict_in(pairs.str());
  std::ostringstream strict_out;
  CHECK_THROWS_AS(format_pretraining_stream(strict_in, strict_out, 7, true),
                  DataError);
}

TEST_CASE("duration stream") {
  std::istringstream in(
      R"({"event":"took the bus","verb_index":0,"unit":"hours"})"
      "\n"
      R"({"event":"slept","verb_index":0,"unit":"days"})"
      "\n"
      R"({"event":"slept","verb_index":3,"unit":"days"})"
      "\n"
      R"({"event":"slept","verb_index":0,"unit":"fortnights"})"
      "\n");
  std::ostringstream out;
  auto stats = format_duration_stream(in, out, false);
  CHECK(stats.records == 2);
  CHECK(stats.record_errors == 2);
  CHECK(out.str() ==
        R"({"input":"event: [V] took the bus","output":"answer: [extra_id_1]"})"
        "\n"
        R"({"input":"event: [V] slept","output":"answer: [extra_id_2]"})"
        "\n");
}

}  // namespace
}  // namespace tempora::format

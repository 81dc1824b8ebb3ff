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

#ifndef TEMPORA_FORMAT_HPP_
#define TEMPORA_FORMAT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"
#include "extract.hpp"
#include "jsonl.hpp"

namespace tempora::format {

struct Seq2SeqInstance {
  std::string input_text;
  std::string output_text;
  bool operator==(const Seq2SeqInstance&) const = default;
};

// Marker inserted immediately left of the trigger verb in duration inputs.
inline constexpr std::string_view kVerbMarker = "[V]";

// input:  "event: {A} starts {relation} {B}. story: {paragraph}"
// output: "answer: positive|negative" plus " [extra_id_k]" when the pair has
// a distance. A flipped instance states the opposite relation and is
// labelled negative; it keeps the distance token.
Seq2SeqInstance format_pretraining_instance(const extract::EventPair& pair,
                                            bool flip);

// One independent fair coin per pair from a generator seeded with `seed`.
std::vector<bool> sample_negatives(std::size_t count, std::uint64_t seed);

// input: "event: {tokens with [V] before the verb}", output:
// "answer: [extra_id_k]". Throws std::invalid_argument when the phrase has
// no verb index or the index is out of range.
Seq2SeqInstance format_duration_instance(const EventPhrase& event,
                                         TemporalUnit value);

std::string instance_to_json(const Seq2SeqInstance& instance);

struct ParsedHypothesis {
  EventPhrase event_a;
  Comparator comparator = Comparator::kStart;
  Relation relation = Relation::kBefore;
  EventPhrase event_b;
  bool trailing_period = false;
  bool operator==(const ParsedHypothesis&) const = default;
};

// Splits "<A> starts|ends before|after <B>[.]". Throws DataError when the
// text holds no connective or more than one.
ParsedHypothesis parse_hypothesis(std::string_view text);
std::string compose_hypothesis(const ParsedHypothesis& h);

struct FormatStats {
  std::size_t records = 0;
  std::size_t record_errors = 0;
  std::size_t negatives = 0;
};

// EventPair lines in, {"input","output"} lines out.
FormatStats format_pretraining_stream(std::istream& in, std::ostream& out,
                                      std::uint64_t seed, bool strict,
                                      const LogFn& log = nullptr);

// {"event": str, "verb_index": n, "unit": name} lines in,
// {"input","output"} lines out.
FormatStats format_duration_stream(std::istream& in, std::ostream& out,
                                   bool strict, const LogFn& log = nullptr);

}  // namespace tempora::format

#endif  // TEMPORA_FORMAT_HPP_

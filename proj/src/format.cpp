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

#include "format.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace tempora::format {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct Connective {
  std::string_view text;
  Comparator comparator;
  Relation relation;
};

constexpr std::array<Connective, 4> kConnectives = {{
    {" starts before ", Comparator::kStart, Relation::kBefore},
    {" starts after ", Comparator::kStart, Relation::kAfter},
    {" ends before ", Comparator::kEnd, Relation::kBefore},
    {" ends after ", Comparator::kEnd, Relation::kAfter},
}};

std::string_view connective_text(Comparator c, Relation r) {
  for (const auto& k : kConnectives) {
    if (k.comparator == c && k.relation == r) return k.text;
  }
  return {};
}

// Runs a per-line transform with lenient/strict error handling.
template <typename Fn>
FormatStats for_each_record(std::istream& in, bool strict, const LogFn& log,
                            Fn&& fn) {
  FormatStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (normalize_line(line)) continue;
    try {
      fn(line, stats);
      ++stats.records;
    } catch (const DataError& e) {
      std::string msg = "line " + std::to_string(line_no) + ": " + e.what();
      if (strict) throw DataError(msg);
      if (log) log(msg);
      ++stats.record_errors;
    }
  }
  return stats;
}

}  // namespace

Seq2SeqInstance format_pretraining_instance(const extract::EventPair& pair,
                                            bool flip) {
  const Relation stated = flip ? tempora::flip(pair.relation) : pair.relation;
  Seq2SeqInstance out;
  out.input_text = "event: " + pair.event_a.text + " starts " +
                   std::string(relation_name(stated)) + " " +
                   pair.event_b.text + ". story: " + pair.paragraph;
  out.output_text = flip ? "answer: negative" : "answer: positive";
  if (pair.distance) out.output_text += " " + unit_token(*pair.distance);
  return out;
}

std::vector<bool> sample_negatives(std::size_t count, std::uint64_t seed) {
  // Top bit of each mt19937_64 draw: identical on every standard library.
  std::mt19937_64 rng(seed);
  std::vector<bool> flips(count);
  for (std::size_t i = 0; i < count; ++i) flips[i] = (rng() >> 63) != 0;
  return flips;
}

Seq2SeqInstance format_duration_instance(const EventPhrase& event,
                                         TemporalUnit value) {
  auto tokens = event.tokens();
  if (!event.verb_index) {
    throw std::invalid_argument("duration instance needs a trigger verb: '" +
                                event.text + "'");
  }
  if (*event.verb_index >= tokens.size()) {
    throw std::invalid_argument("verb index out of range: '" + event.text +
                                "'");
  }
  tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(*event.verb_index),
                std::string(kVerbMarker));
  return {"event: " + join_tokens(tokens), "answer: " + unit_token(value)};
}

std::string instance_to_json(const Seq2SeqInstance& instance) {
  ordered_json j;
  j["input"] = instance.input_text;
  j["output"] = instance.output_text;
  return j.dump();
}

ParsedHypothesis parse_hypothesis(std::string_view text) {
  std::size_t best = std::string_view::npos;
  const Connective* found = nullptr;
  std::size_t matches = 0;
  for (const auto& k : kConnectives) {
    for (std::size_t pos = text.find(k.text); pos != std::string_view::npos;
         pos = text.find(k.text, pos + 1)) {
      ++matches;
      if (pos < best) {
        best = pos;
        found = &k;
      }
    }
  }
  if (matches == 0) {
    throw DataError("hypothesis has no start/end connective: '" +
                    std::string(text) + "'");
  }
  if (matches > 1) {
    throw DataError("hypothesis has more than one connective: '" +
                    std::string(text) + "'");
  }
  ParsedHypothesis h;
  h.comparator = found->comparator;
  h.relation = found->relation;
  h.event_a.text = std::string(text.substr(0, best));
  std::string_view rest = text.substr(best + found->text.size());
  if (!rest.empty() && rest.back() == '.') {
    h.trailing_period = true;
    rest.remove_suffix(1);
  }
  h.event_b.text = std::string(rest);
  if (h.event_a.text.empty() || h.event_b.text.empty()) {
    throw DataError("hypothesis has an empty event: '" + std::string(text) +
                    "'");
  }
  return h;
}

std::string compose_hypothesis(const ParsedHypothesis& h) {
  std::string out = h.event_a.text;
  out += connective_text(h.comparator, h.relation);
  out += h.event_b.text;
  if (h.trailing_period) out += '.';
  return out;
}

FormatStats format_pretraining_stream(std::istream& in, std::ostream& out,
                                      std::uint64_t seed, bool strict,
                                      const LogFn& log) {
  // Same draw sequence as sample_negatives: one draw per valid record.
  std::mt19937_64 rng(seed);
  return for_each_record(in, strict, log, [&](const std::string& line,
                                              FormatStats& stats) {
    extract::EventPair pair = extract::pair_from_json(line);
    const bool flip = (rng() >> 63) != 0;
    if (flip) ++stats.negatives;
    out << instance_to_json(format_pretraining_instance(pair, flip)) << '\n';
  });
}

FormatStats format_duration_stream(std::istream& in, std::ostream& out,
                                   bool strict, const LogFn& log) {
  return for_each_record(in, strict, log, [&](const std::string& line,
                                              FormatStats&) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DataError("malformed JSON record");
    }
    if (!j.contains("event") || !j["event"].is_string() ||
        !j.contains("unit") || !j["unit"].is_string()) {
      throw DataError("duration record needs string fields event and unit");
    }
    EventPhrase event{j["event"].get<std::string>(), std::nullopt};
    if (j.contains("verb_index") && j["verb_index"].is_number_unsigned()) {
      event.verb_index = j["verb_index"].get<std::size_t>();
    }
    auto unit = parse_unit_name(j["unit"].get<std::string>());
    if (!unit) throw DataError("unknown unit: " + j["unit"].dump());
    try {
      out << instance_to_json(format_duration_instance(event, *unit)) << '\n';
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
  });
}

}  // namespace tempora::format

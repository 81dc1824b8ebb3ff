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

#ifndef TEMPORA_TEX_HPP_
#define TEMPORA_TEX_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace tempora::tex {

// Calendar fields, coarsest first.
enum class Field : std::uint8_t { kYear = 0, kMonth, kDay, kHour, kMinute };
inline constexpr std::size_t kFieldCount = 5;

struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  bool operator==(const TokenSpan&) const = default;
};

// A date/time mention with any subset of fields present.
struct PartialTimestamp {
  std::array<std::optional<int>, kFieldCount> fields;
  TokenSpan source_span;

  std::optional<int> get(Field f) const {
    return fields[static_cast<std::size_t>(f)];
  }
  void set(Field f, std::optional<int> v) {
    fields[static_cast<std::size_t>(f)] = v;
  }
  bool has(Field f) const { return get(f).has_value(); }

  // Empty optional when no field is present.
  std::optional<Field> coarsest() const;
  std::optional<Field> finest() const;

  // At least one field present and every present field within range.
  bool valid() const;

  // Field-wise equality; the span is ignored.
  bool same_fields(const PartialTimestamp& other) const {
    return fields == other.fields;
  }

  static PartialTimestamp make(std::optional<int> year,
                               std::optional<int> month = std::nullopt,
                               std::optional<int> day = std::nullopt,
                               std::optional<int> hour = std::nullopt,
                               std::optional<int> minute = std::nullopt);
};

std::string to_string(const PartialTimestamp& t);

struct ResolvedInstant {
  std::int64_t seconds = 0;  // relative to 1970-01-01T00:00
  Field resolution = Field::kYear;
};

// Year substituted when a timestamp carries no year of its own.
inline constexpr int kSentinelYear = 2000;

// Fills absent fields with defaults (year: kSentinelYear, month/day: 1,
// hour/minute: 0). Empty when the result is not a real calendar date.
std::optional<ResolvedInstant> resolve(const PartialTimestamp& t);

// Recognized inventory, scanning left to right:
//   month-name day [","] [year]     "January 2nd", "Jan 2, 2020"
//   day month-name [year]           "10th January", "2 May 1999"
//   ["the"] ordinal ["of" month]    "the 10th", "the 10th of January"
//   month-name year                 "January 2020"
//   clock time                      "3 pm", "3pm", "3:30 p.m.", "14:30"
//   four-digit year in [1000, 2999]
// Later matches whose fields are disjoint from the accumulated ones are
// merged in ("3 pm on January 2nd"); the span is the hull of merged matches.
std::optional<PartialTimestamp> parse_temporal_expression(
    const std::vector<std::string>& tokens);

// Copies from previous every field absent in current that is coarser than
// current's finest present field.
PartialTimestamp inherit(const PartialTimestamp& previous,
                         const PartialTimestamp& current);

struct Comparison {
  Relation order;
  TemporalUnit bucket;
  bool operator==(const Comparison&) const = default;
};

// Empty when the two timestamps do not share a coarsest field (which also
// covers one side having a year and the other not) or either fails to
// resolve. Equal instants report before.
std::optional<Comparison> distance_between(const PartialTimestamp& a,
                                           const PartialTimestamp& b);

}  // namespace tempora::tex

#endif  // TEMPORA_TEX_HPP_

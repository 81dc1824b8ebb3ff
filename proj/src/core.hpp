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

#ifndef TEMPORA_CORE_HPP_
#define TEMPORA_CORE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tempora {

// Error kinds raised by the core. The C API maps each onto a status code.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PredictorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The seven coarse magnitude buckets used for both distances and durations.
// Enumerator order is magnitude order.
enum class TemporalUnit : std::uint8_t {
  kMinutes = 0,  // <= minutes
  kHours = 1,
  kDays = 2,
  kWeeks = 3,
  kMonths = 4,
  kYears = 5,
  kDecades = 6,  // >= decades
};

inline constexpr std::size_t kUnitCount = 7;

inline constexpr std::array<TemporalUnit, kUnitCount> kAllUnits = {
    TemporalUnit::kMinutes, TemporalUnit::kHours,  TemporalUnit::kDays,
    TemporalUnit::kWeeks,   TemporalUnit::kMonths, TemporalUnit::kYears,
    TemporalUnit::kDecades};

constexpr std::size_t unit_index(TemporalUnit u) {
  return static_cast<std::size_t>(u);
}

// Throws std::out_of_range for an index outside [0, 6].
TemporalUnit unit_from_index(std::size_t index);

// Display name ("≤minutes", "hours", ..., "≥decades").
std::string_view unit_display_name(TemporalUnit u);

// ASCII identifier used in files ("minutes", "hours", ..., "decades").
std::string_view unit_name(TemporalUnit u);
std::optional<TemporalUnit> parse_unit_name(std::string_view name);

// "[extra_id_k]" for bucket index k.
std::string unit_token(TemporalUnit u);
std::optional<TemporalUnit> parse_unit_token(std::string_view token);

// Lower bounds (seconds) of each bucket; bucket k covers
// [kBucketLowerBounds[k], kBucketLowerBounds[k + 1]).
inline constexpr std::int64_t kMinute = 60;
inline constexpr std::int64_t kHour = 60 * kMinute;
inline constexpr std::int64_t kDay = 24 * kHour;
inline constexpr std::array<std::int64_t, kUnitCount> kBucketLowerBounds = {
    0, kHour, kDay, 7 * kDay, 30 * kDay, 365 * kDay, 3650 * kDay};

// Throws std::domain_error when seconds is negative or NaN.
TemporalUnit bucket_of_seconds(double seconds);

enum class Relation : std::uint8_t { kBefore = 0, kAfter = 1 };

constexpr Relation flip(Relation r) {
  return r == Relation::kBefore ? Relation::kAfter : Relation::kBefore;
}
std::string_view relation_name(Relation r);
std::optional<Relation> parse_relation(std::string_view s);

enum class Comparator : std::uint8_t { kStart = 0, kEnd = 1 };
std::string_view comparator_name(Comparator c);

enum class Label : std::uint8_t { kEntailment = 0, kContradiction = 1 };
std::string_view label_name(Label l);
std::optional<Label> parse_label(std::string_view s);

// A verb and its arguments rendered as text. Tokens are separated by single
// spaces; verb_index is the token position of the trigger verb when known.
struct EventPhrase {
  std::string text;
  std::optional<std::size_t> verb_index;

  std::vector<std::string> tokens() const;
  bool operator==(const EventPhrase&) const = default;
};

// Joins tokens with a single space.
std::string join_tokens(const std::vector<std::string>& tokens,
                        std::size_t begin, std::size_t end);
std::string join_tokens(const std::vector<std::string>& tokens);

// Splits on runs of ASCII whitespace.
std::vector<std::string> split_whitespace(std::string_view text);

std::string to_lower(std::string_view s);

}  // namespace tempora

#endif  // TEMPORA_CORE_HPP_

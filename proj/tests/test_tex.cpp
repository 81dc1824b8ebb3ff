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

#include "core.hpp"
#include "doctest.h"
#include "tex.hpp"

namespace tempora::tex {
namespace {

using P = PartialTimestamp;

std::optional<P> parse(const char* text) {
  return parse_temporal_expression(split_whitespace(text));
}

bool fields_are(const std::optional<P>& t, const P& expected) {
  return t && t->same_fields(expected);
}

TEST_CASE("recognized inventory") {
  CHECK(fields_are(parse("January 2nd"), P::make({}, 1, 2)));
  CHECK(fields_are(parse("the 10th"), P::make({}, {}, 10)));
  CHECK_FALSE(parse("very soon").has_value());
  CHECK(fields_are(parse("1990"), P::make(1990)));
  CHECK(fields_are(parse("3 pm"), P::make({}, {}, {}, 15)));
  CHECK(fields_are(parse("3pm"), P::make({}, {}, {}, 15)));
  CHECK(fields_are(parse("12 am"), P::make({}, {}, {}, 0)));
  CHECK(fields_are(parse("14:30"), P::make({}, {}, {}, 14, 30)));
  CHECK(fields_are(parse("3:30 p.m."), P::make({}, {}, {}, 15, 30)));
  CHECK(fields_are(parse("May 1999"), P::make(1999, 5)));
  CHECK(fields_are(parse("Jan 2 , 2020"), P::make(2020, 1, 2)));
  CHECK(fields_are(parse("2 May 1999"), P::make(1999, 5, 2)));
  CHECK(fields_are(parse("the 10th of January"), P::make({}, 1, 10)));
  CHECK(fields_are(parse("at 3 pm on January 2nd"), P::make({}, 1, 2, 15)));
}

TEST_CASE("non-matches never throw") {
  for (const char* text :
       {"", "soon", "may be", "the end", "25:00", "13 pm", "January 32nd",
        "999", "30000", "the 0th", "the 45th", "12:75", "the may"}) {
    CHECK_NOTHROW(parse(text));
  }
  CHECK_FALSE(parse("25:00").has_value());
  CHECK_FALSE(parse("13 pm").has_value());
  auto bad_day = parse("January 32nd");
  CHECK_FALSE((bad_day && bad_day->has(Field::kDay)));
  CHECK_FALSE(parse("the 45th").has_value());
  CHECK_FALSE(parse("we may go").has_value());
}

TEST_CASE("source span is exact") {
  auto t = parse("we went there on January 2nd .");
  REQUIRE(t);
  CHECK(t->source_span == TokenSpan{4, 6});
  t = parse("I wrote a review on the 10th");
  REQUIRE(t);
  CHECK(t->source_span == TokenSpan{5, 7});
  t = parse("in 1990 they moved");
  REQUIRE(t);
  CHECK(t->source_span == TokenSpan{1, 2});
}

TEST_CASE("inherit examples") {
  CHECK(inherit(P::make({}, 1, 2), P::make({}, {}, 10))
            .same_fields(P::make({}, 1, 10)));
  CHECK(inherit(P::make(1999), P::make(2001)).same_fields(P::make(2001)));
  CHECK(inherit(P::make({}, 5), P::make({}, {}, 3))
            .same_fields(P::make({}, 5, 3)));
  // Finer fields are not copied.
  CHECK(inherit(P::make(2020, 3, 4, 10, 30), P::make({}, 6))
            .same_fields(P::make(2020, 6)));
}

TEST_CASE("inherit is idempotent when current covers previous") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    P prev, cur;
    for (std::size_t f = 0; f < kFieldCount; ++f) {
      const bool in_prev = rng() & 1;
      const bool in_cur = in_prev || (rng() & 1);
      const int value = static_cast<int>(1 + rng() % 12);
      if (in_prev) prev.fields[f] = value;
      if (in_cur) cur.fields[f] = value + 1;
    }
    if (!cur.coarsest()) continue;
    const P once = inherit(prev, cur);
    CHECK(once.same_fields(cur));
    CHECK(inherit(prev, once).same_fields(once));
  }
}

TEST_CASE("distance examples") {
  CHECK(distance_between(P::make({}, 1, 2), P::make({}, 1, 10)) ==
        Comparison{Relation::kBefore, TemporalUnit::kWeeks});
  CHECK(distance_between(P::make({}, 1, 2), P::make({}, 1, 2)) ==
        Comparison{Relation::kBefore, TemporalUnit::kMinutes});
  CHECK(distance_between(P::make(1990), P::make(2005)) ==
        Comparison{Relation::kBefore, TemporalUnit::kDecades});
  CHECK(distance_between(P::make(2005), P::make(1990)) ==
        Comparison{Relation::kAfter, TemporalUnit::kDecades});
  CHECK(distance_between(P::make({}, {}, {}, 9), P::make({}, {}, {}, 15)) ==
        Comparison{Relation::kBefore, TemporalUnit::kHours});
}

TEST_CASE("no shared granularity") {
  CHECK_FALSE(distance_between(P::make(1999), P::make({}, 5)).has_value());
  CHECK_FALSE(
      distance_between(P::make({}, 1, 2), P::make({}, {}, {}, 3)).has_value());
  CHECK_FALSE(distance_between(P::make({}, 2, 30), P::make({}, 3, 1)));
}

TEST_CASE("resolve defaults") {
  auto a = resolve(P::make({}, 1, 2));
  auto b = resolve(P::make(kSentinelYear, 1, 2, 0, 0));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->seconds == b->seconds);
  CHECK(a->resolution == Field::kDay);
  CHECK(resolve(P::make(1970, 1, 1))->seconds == 0);
  CHECK(resolve(P::make(1970, 1, 2))->seconds == 86400);
  CHECK_FALSE(resolve(P::make(2001, 2, 29)).has_value());
  CHECK(resolve(P::make(2000, 2, 29)).has_value());
}

TEST_CASE("distance is antisymmetric except for ties") {
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    P a = P::make(static_cast<int>(1900 + rng() % 200),
                  static_cast<int>(1 + rng() % 12),
                  static_cast<int>(1 + rng() % 28),
                  static_cast<int>(rng() % 24), static_cast<int>(rng() % 60));
    P b = a;
    for (std::size_t f = 0; f < kFieldCount; ++f) {
      if (rng() % 3 == 0) b.fields[f] = a.fields[f];
    }
    b.fields[0] = static_cast<int>(1900 + rng() % 200);
    if (rng() % 4 == 0) b = a;
    auto ab = distance_between(a, b);
    auto ba = distance_between(b, a);
    REQUIRE(ab);
    REQUIRE(ba);
    CHECK(ab->bucket == ba->bucket);
    if (resolve(a)->seconds == resolve(b)->seconds) {
      CHECK(ab->order == Relation::kBefore);
      CHECK(ba->order == Relation::kBefore);
    } else {
      CHECK(ab->order == flip(ba->order));
    }
    ++compared;
  }
  CHECK(compared >= 500);
}

}  // namespace
}  // namespace tempora::tex

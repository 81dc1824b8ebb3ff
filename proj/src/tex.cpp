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

#include "tex.hpp"

#include <cctype>
#include <chrono>
#include <sstream>
#include <string_view>

namespace tempora::tex {

namespace {

constexpr std::array<int, kFieldCount> kFieldMin = {1, 1, 1, 0, 0};
constexpr std::array<int, kFieldCount> kFieldMax = {9999, 12, 31, 23, 59};

constexpr std::array<std::string_view, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

constexpr std::array<std::string_view, 12> kMonthAbbrevs = {
    "jan", "feb", "mar", "apr", "may", "jun",
    "jul", "aug", "sep", "oct", "nov", "dec"};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<int> to_int(std::string_view s) {
  if (!all_digits(s) || s.size() > 6) return std::nullopt;
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

// "May" and "March" double as ordinary words, so they must be capitalized;
// abbreviations must be capitalized too.
std::optional<int> month_of(std::string_view token) {
  if (token.empty()) return std::nullopt;
  bool capitalized = std::isupper(static_cast<unsigned char>(token[0])) != 0;
  std::string_view body = token;
  if (body.size() > 1 && body.back() == '.') body.remove_suffix(1);
  std::string lower = to_lower(body);
  for (std::size_t i = 0; i < kMonthNames.size(); ++i) {
    if (lower == kMonthNames[i]) {
      if ((i == 2 || i == 4) && !capitalized) return std::nullopt;
      return static_cast<int>(i) + 1;
    }
  }
  if (!capitalized) return std::nullopt;
  for (std::size_t i = 0; i < kMonthAbbrevs.size(); ++i) {
    if (lower == kMonthAbbrevs[i] || (i == 8 && lower == "sept")) {
      return static_cast<int>(i) + 1;
    }
  }
  return std::nullopt;
}

std::optional<int> ordinal_of(std::string_view token) {
  if (token.size() < 3) return std::nullopt;
  std::string suffix = to_lower(token.substr(token.size() - 2));
  if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") {
    return std::nullopt;
  }
  auto v = to_int(token.substr(0, token.size() - 2));
  if (!v || *v < 1 || *v > 31) return std::nullopt;
  return v;
}

// Ordinal ("2nd") or bare number ("2") in day range.
std::optional<int> day_of(std::string_view token) {
  if (auto v = ordinal_of(token)) return v;
  auto v = to_int(token);
  if (v && token.size() <= 2 && *v >= 1 && *v <= 31) return v;
  return std::nullopt;
}

std::optional<int> year_of(std::string_view token) {
  if (token.size() != 4) return std::nullopt;
  auto v = to_int(token);
  if (!v || *v < 1000 || *v > 2999) return std::nullopt;
  return v;
}

// 0 = am, 1 = pm.
std::optional<int> meridiem_of(std::string_view token) {
  std::string lower = to_lower(token);
  if (lower == "am" || lower == "a.m." || lower == "a.m") return 0;
  if (lower == "pm" || lower == "p.m." || lower == "p.m") return 1;
  return std::nullopt;
}

int apply_meridiem(int hour12, int meridiem) {
  int h = hour12 % 12;
  return meridiem == 1 ? h + 12 : h;
}

struct Match {
  PartialTimestamp ts;
  std::size_t length = 0;
};

// "H", "HH:MM", optionally with a fused or following meridiem.
std::optional<Match> match_clock(const std::vector<std::string>& tokens,
                                 std::size_t i) {
  std::string_view tok = tokens[i];
  std::optional<int> fused_meridiem;
  for (std::string_view suffix : {"am", "pm", "a.m.", "p.m."}) {
    if (tok.size() > suffix.size() &&
        to_lower(tok.substr(tok.size() - suffix.size())) == suffix) {
      fused_meridiem = meridiem_of(suffix);
      tok.remove_suffix(suffix.size());
      break;
    }
  }

  std::optional<int> hour, minute;
  auto colon = tok.find(':');
  if (colon != std::string_view::npos) {
    std::string_view hh = tok.substr(0, colon), mm = tok.substr(colon + 1);
    if (hh.empty() || hh.size() > 2 || mm.size() != 2) return std::nullopt;
    hour = to_int(hh);
    minute = to_int(mm);
    if (!hour || !minute || *hour > 23 || *minute > 59) return std::nullopt;
  } else {
    if (tok.empty() || tok.size() > 2) return std::nullopt;
    hour = to_int(tok);
    if (!hour) return std::nullopt;
  }

  std::size_t length = 1;
  std::optional<int> meridiem = fused_meridiem;
  if (!meridiem && i + 1 < tokens.size()) {
    meridiem = meridiem_of(tokens[i + 1]);
    if (meridiem) length = 2;
  }
  if (meridiem) {
    if (*hour < 1 || *hour > 12) return std::nullopt;
    hour = apply_meridiem(*hour, *meridiem);
  } else if (colon == std::string_view::npos) {
    return std::nullopt;  // a bare number is not a clock time
  }
  Match m;
  m.ts.set(Field::kHour, hour);
  if (minute) m.ts.set(Field::kMinute, minute);
  m.length = length;
  return m;
}

// Trailing optional [","] year after position j; extends the match.
void take_year(const std::vector<std::string>& tokens, std::size_t j,
               Match& m) {
  if (j < tokens.size() && tokens[j] == "," && j + 1 < tokens.size()) {
    if (auto y = year_of(tokens[j + 1])) {
      m.ts.set(Field::kYear, y);
      m.length += 2;
      return;
    }
  }
  if (j < tokens.size()) {
    if (auto y = year_of(tokens[j])) {
      m.ts.set(Field::kYear, y);
      m.length += 1;
    }
  }
}

std::optional<Match> match_at(const std::vector<std::string>& tokens,
                              std::size_t i) {
  const std::size_t n = tokens.size();
  auto at = [&](std::size_t k) -> std::string_view {
    return k < n ? std::string_view(tokens[k]) : std::string_view();
  };

  if (auto month = month_of(at(i))) {
    if (auto day = day_of(at(i + 1))) {
      Match m;
      m.ts.set(Field::kMonth, month);
      m.ts.set(Field::kDay, day);
      m.length = 2;
      take_year(tokens, i + 2, m);
      return m;
    }
    if (auto year = year_of(at(i + 1))) {
      Match m;
      m.ts.set(Field::kMonth, month);
      m.ts.set(Field::kYear, year);
      m.length = 2;
      return m;
    }
    return std::nullopt;
  }

  bool has_the = to_lower(at(i)) == "the";
  std::size_t d = has_the ? i + 1 : i;
  std::optional<int> day = has_the ? ordinal_of(at(d)) : day_of(at(d));
  if (day) {
    // "10th January", "the 10th of January"
    std::size_t mpos = d + 1;
    if (to_lower(at(mpos)) == "of") ++mpos;
    if (auto month = month_of(at(mpos))) {
      Match m;
      m.ts.set(Field::kDay, day);
      m.ts.set(Field::kMonth, month);
      m.length = mpos + 1 - i;
      take_year(tokens, mpos + 1, m);
      return m;
    }
    if (ordinal_of(at(d))) {
      Match m;
      m.ts.set(Field::kDay, day);
      m.length = d + 1 - i;
      return m;
    }
  }

  if (auto clock = match_clock(tokens, i)) return clock;

  if (auto year = year_of(at(i))) {
    Match m;
    m.ts.set(Field::kYear, year);
    m.length = 1;
    return m;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Field> PartialTimestamp::coarsest() const {
  for (std::size_t f = 0; f < kFieldCount; ++f) {
    if (fields[f]) return static_cast<Field>(f);
  }
  return std::nullopt;
}

std::optional<Field> PartialTimestamp::finest() const {
  for (std::size_t f = kFieldCount; f-- > 0;) {
    if (fields[f]) return static_cast<Field>(f);
  }
  return std::nullopt;
}

bool PartialTimestamp::valid() const {
  bool any = false;
  for (std::size_t f = 0; f < kFieldCount; ++f) {
    if (!fields[f]) continue;
    any = true;
    if (*fields[f] < kFieldMin[f] || *fields[f] > kFieldMax[f]) return false;
  }
  return any;
}

PartialTimestamp PartialTimestamp::make(std::optional<int> year,
                                        std::optional<int> month,
                                        std::optional<int> day,
                                        std::optional<int> hour,
                                        std::optional<int> minute) {
  PartialTimestamp t;
  t.fields = {year, month, day, hour, minute};
  return t;
}

std::string to_string(const PartialTimestamp& t) {
  static constexpr std::array<std::string_view, kFieldCount> kKeys = {
      "y", "m", "d", "h", "min"};
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t f = 0; f < kFieldCount; ++f) {
    if (!t.fields[f]) continue;
    if (!first) os << ", ";
    os << kKeys[f] << ':' << *t.fields[f];
    first = false;
  }
  os << '}';
  return os.str();
}

std::optional<ResolvedInstant> resolve(const PartialTimestamp& t) {
  if (!t.valid()) return std::nullopt;
  using namespace std::chrono;
  const year_month_day date{year{t.get(Field::kYear).value_or(kSentinelYear)},
                            month{static_cast<unsigned>(
                                t.get(Field::kMonth).value_or(1))},
                            day{static_cast<unsigned>(
                                t.get(Field::kDay).value_or(1))}};
  if (!date.ok()) return std::nullopt;
  const auto day_seconds =
      duration_cast<seconds>(sys_days{date}.time_since_epoch()).count();
  ResolvedInstant r;
  r.seconds = day_seconds + t.get(Field::kHour).value_or(0) * kHour +
              t.get(Field::kMinute).value_or(0) * kMinute;
  r.resolution = *t.finest();
  return r;
}

std::optional<PartialTimestamp> parse_temporal_expression(
    const std::vector<std::string>& tokens) {
  std::optional<PartialTimestamp> result;
  std::size_t i = 0;
  while (i < tokens.size()) {
    auto m = match_at(tokens, i);
    if (!m) {
      ++i;
      continue;
    }
    if (!result) {
      result = m->ts;
      result->source_span = {i, i + m->length};
    } else {
      bool disjoint = true;
      for (std::size_t f = 0; f < kFieldCount; ++f) {
        if (result->fields[f] && m->ts.fields[f]) disjoint = false;
      }
      if (!disjoint) break;
      for (std::size_t f = 0; f < kFieldCount; ++f) {
        if (m->ts.fields[f]) result->fields[f] = m->ts.fields[f];
      }
      result->source_span.end = i + m->length;
    }
    i += m->length;
  }
  if (result && !result->valid()) return std::nullopt;
  return result;
}

PartialTimestamp inherit(const PartialTimestamp& previous,
                         const PartialTimestamp& current) {
  PartialTimestamp out = current;
  auto finest = current.finest();
  if (!finest) return out;
  for (std::size_t f = 0; f < static_cast<std::size_t>(*finest); ++f) {
    if (!out.fields[f]) out.fields[f] = previous.fields[f];
  }
  return out;
}

std::optional<Comparison> distance_between(const PartialTimestamp& a,
                                           const PartialTimestamp& b) {
  auto ca = a.coarsest(), cb = b.coarsest();
  if (!ca || !cb || *ca != *cb) return std::nullopt;
  auto ra = resolve(a), rb = resolve(b);
  if (!ra || !rb) return std::nullopt;
  const std::int64_t diff = rb->seconds - ra->seconds;
  Comparison c;
  c.order = diff >= 0 ? Relation::kBefore : Relation::kAfter;
  c.bucket = bucket_of_seconds(static_cast<double>(diff >= 0 ? diff : -diff));
  return c;
}

}  // namespace tempora::tex

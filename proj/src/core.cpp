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

#include "core.hpp"

#include <cctype>
#include <cmath>

namespace tempora {

namespace {

constexpr std::array<std::string_view, kUnitCount> kDisplayNames = {
    "≤minutes", "hours", "days", "weeks", "months", "years", "≥decades"};

constexpr std::array<std::string_view, kUnitCount> kNames = {
    "minutes", "hours", "days", "weeks", "months", "years", "decades"};

constexpr std::string_view kTokenPrefix = "[extra_id_";

}  // namespace

TemporalUnit unit_from_index(std::size_t index) {
  if (index >= kUnitCount) {
    throw std::out_of_range("temporal unit index out of range: " +
                            std::to_string(index));
  }
  return static_cast<TemporalUnit>(index);
}

std::string_view unit_display_name(TemporalUnit u) {
  return kDisplayNames[unit_index(u)];
}

std::string_view unit_name(TemporalUnit u) { return kNames[unit_index(u)]; }

std::optional<TemporalUnit> parse_unit_name(std::string_view name) {
  for (std::size_t i = 0; i < kUnitCount; ++i) {
    if (name == kNames[i] || name == kDisplayNames[i]) {
      return static_cast<TemporalUnit>(i);
    }
  }
  return std::nullopt;
}

std::string unit_token(TemporalUnit u) {
  return std::string(kTokenPrefix) + std::to_string(unit_index(u)) + "]";
}

std::optional<TemporalUnit> parse_unit_token(std::string_view token) {
  // Exactly "[extra_id_" + one digit 0-6 + "]".
  if (token.size() != kTokenPrefix.size() + 2) return std::nullopt;
  if (token.substr(0, kTokenPrefix.size()) != kTokenPrefix) return std::nullopt;
  if (token.back() != ']') return std::nullopt;
  char digit = token[kTokenPrefix.size()];
  if (digit < '0' || digit > '6') return std::nullopt;
  return static_cast<TemporalUnit>(digit - '0');
}

TemporalUnit bucket_of_seconds(double seconds) {
  if (std::isnan(seconds) || seconds < 0.0) {
    throw std::domain_error("bucket_of_seconds: negative or NaN duration");
  }
  std::size_t k = kUnitCount - 1;
  while (k > 0 && seconds < static_cast<double>(kBucketLowerBounds[k])) --k;
  return static_cast<TemporalUnit>(k);
}

std::string_view relation_name(Relation r) {
  return r == Relation::kBefore ? "before" : "after";
}

std::optional<Relation> parse_relation(std::string_view s) {
  if (s == "before") return Relation::kBefore;
  if (s == "after") return Relation::kAfter;
  return std::nullopt;
}

std::string_view comparator_name(Comparator c) {
  return c == Comparator::kStart ? "start" : "end";
}

std::string_view label_name(Label l) {
  return l == Label::kEntailment ? "entailment" : "contradiction";
}

std::optional<Label> parse_label(std::string_view s) {
  if (s == "entailment") return Label::kEntailment;
  if (s == "contradiction") return Label::kContradiction;
  return std::nullopt;
}

std::vector<std::string> EventPhrase::tokens() const {
  return split_whitespace(text);
}

std::string join_tokens(const std::vector<std::string>& tokens,
                        std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  return join_tokens(tokens, 0, tokens.size());
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace tempora

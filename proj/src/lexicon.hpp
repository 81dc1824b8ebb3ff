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

#ifndef TEMPORA_LEXICON_HPP_
#define TEMPORA_LEXICON_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

// Small closed word lists backing the fallback annotator and the baseline
// predictor. Everything here is lowercase ASCII.
namespace tempora::lexicon {

// Candidate base forms for an inflected word, most specific first. The word
// itself (lowercased) is always the first candidate.
std::vector<std::string> lemma_candidates(std::string_view word);

// Base form if any candidate is a known verb.
std::optional<std::string> verb_lemma(std::string_view word);

// Known verb, or an -ed/-ing form that passes the suffix heuristic.
bool looks_like_verb(std::string_view word);

// Bundled typical-duration bucket of a verb lemma.
std::optional<TemporalUnit> typical_duration(std::string_view lemma);

bool is_stopword(std::string_view lowercase_word);

// Splits text into word and punctuation tokens. Apostrophes and hyphens
// inside a word, and the ':' and '.' of "3:30" / "p.m." are kept.
std::vector<std::string> tokenize(std::string_view text);

bool is_punctuation(std::string_view token);

}  // namespace tempora::lexicon

#endif  // TEMPORA_LEXICON_HPP_

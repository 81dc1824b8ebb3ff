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

// Deterministic rule-based annotator used when no external semantic-role
// labels are available.
//
//   paragraphs   blank-line separated blocks of text
//   sentences    token runs closed by '.', '!' or '?'
//   verbs        lexicon forms plus -ed/-ing words (lexicon::looks_like_verb)
//   ARGM-TMP     a "before"/"after" token up to the next clause punctuation,
//                or a parseable date/time with its leading preposition;
//                attached to the nearest verb on its left, else the first
//                verb on its right
//   ARG1         tokens after the verb up to the next boundary
//   ARG0         tokens before the verb back to the previous boundary,
//                skipping auxiliaries next to the verb

#include <algorithm>
#include <cctype>
#include <set>

#include "extract.hpp"
#include "lexicon.hpp"

namespace tempora::extract {

namespace {

const std::set<std::string, std::less<>> kClausePunctuation = {
    ",", ";", ":", ".", "!", "?", "(", ")", "\""};

const std::set<std::string, std::less<>> kConjunctions = {
    "and", "but", "then", "so", "because", "while", "when", "or",
    "until", "since", "before", "after"};

const std::set<std::string, std::less<>> kAuxiliaries = {
    "am",   "is",    "are",   "was",    "were",  "be",    "been",
    "being", "had",  "has",   "have",   "did",   "do",    "does",
    "will", "would", "could", "should", "can",   "may",   "might",
    "must", "to",    "not",   "never",  "just",  "also"};

const std::set<std::string, std::less<>> kTemporalPrepositions = {
    "on", "in", "at", "by", "during", "around", "from"};

bool is_sentence_end(const std::string& t) {
  return t == "." || t == "!" || t == "?";
}

std::vector<std::vector<std::string>> split_paragraphs(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::string current;
  std::size_t pos = 0;
  auto flush = [&] {
    auto tokens = lexicon::tokenize(current);
    if (!tokens.empty()) out.push_back(std::move(tokens));
    current.clear();
  };
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    bool blank = std::all_of(line.begin(), line.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c));
    });
    if (blank) {
      flush();
    } else {
      current.append(line);
      current += '\n';
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  return out;
}

Sentence annotate_sentence(std::vector<std::string> tokens) {
  const std::size_t n = tokens.size();
  std::vector<std::string> lower(n);
  for (std::size_t i = 0; i < n; ++i) lower[i] = to_lower(tokens[i]);

  std::vector<bool> is_verb(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    // Capitalized words past the first position are treated as names.
    bool capitalized = std::isupper(static_cast<unsigned char>(tokens[i][0]));
    if (capitalized && i > 0) continue;
    is_verb[i] = lexicon::looks_like_verb(tokens[i]);
  }

  auto is_clause_end = [&](std::size_t i) {
    return kClausePunctuation.count(tokens[i]) > 0;
  };

  // Temporal spans.
  std::vector<TokenSpan> temporal;
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i] != "before" && lower[i] != "after") continue;
    std::size_t j = i + 1;
    while (j < n && !is_clause_end(j)) ++j;
    if (j - i >= 2) {
      temporal.push_back({i, j});
      i = j - 1;
    }
  }
  auto in_temporal = [&](std::size_t i) {
    return std::any_of(temporal.begin(), temporal.end(),
                       [&](const TokenSpan& s) {
                         return s.begin <= i && i < s.end;
                       });
  };
  {
    std::size_t start = 0;
    while (start < n) {
      std::vector<std::string> rest(tokens.begin() + start, tokens.end());
      auto ts = tex::parse_temporal_expression(rest);
      if (!ts) break;
      TokenSpan span{ts->source_span.begin + start,
                     ts->source_span.end + start};
      start = span.end;
      if (in_temporal(span.begin)) continue;
      if (span.begin > 0 &&
          kTemporalPrepositions.count(lower[span.begin - 1])) {
        --span.begin;
      }
      temporal.push_back(span);
    }
  }
  std::sort(temporal.begin(), temporal.end(),
            [](const TokenSpan& a, const TokenSpan& b) {
              return a.begin < b.begin;
            });

  std::vector<std::size_t> verbs;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_verb[i]) verbs.push_back(i);
  }

  Sentence sent;
  if (verbs.empty()) {
    sent.tokens = std::move(tokens);
    return sent;
  }

  std::vector<VerbFrame> frames(verbs.size());
  for (std::size_t k = 0; k < verbs.size(); ++k) {
    frames[k].verb = {verbs[k], verbs[k] + 1};
  }

  // Attach temporal spans.
  for (const auto& span : temporal) {
    std::optional<std::size_t> owner;
    for (std::size_t k = verbs.size(); k-- > 0;) {
      if (verbs[k] < span.begin) {
        owner = k;
        break;
      }
    }
    if (!owner) {
      for (std::size_t k = 0; k < verbs.size(); ++k) {
        if (verbs[k] >= span.end) {
          owner = k;
          break;
        }
      }
    }
    if (owner) frames[*owner].args.push_back({std::string(kTemporalRole), span});
  }

  auto starts_temporal = [&](std::size_t i) {
    return std::any_of(temporal.begin(), temporal.end(),
                       [&](const TokenSpan& s) { return s.begin == i; });
  };
  auto is_boundary = [&](std::size_t i) {
    return is_verb[i] || is_clause_end(i) || kConjunctions.count(lower[i]) ||
           starts_temporal(i);
  };

  for (std::size_t k = 0; k < verbs.size(); ++k) {
    const std::size_t v = verbs[k];
    VerbFrame& f = frames[k];

    // ARG1: forward to the next boundary, staying inside the verb's own
    // temporal span when the verb sits in one.
    std::size_t end = v + 1;
    while (end < n && !is_boundary(end)) ++end;
    for (const auto& s : temporal) {
      if (s.begin <= v && v < s.end) end = std::min(end, s.end);
    }
    if (end > v + 1) f.args.push_back({"ARG1", {v + 1, end}});

    // ARG0: backward, skipping auxiliaries next to the verb.
    std::size_t stop = v;
    while (stop > 0 && kAuxiliaries.count(lower[stop - 1])) --stop;
    std::size_t begin = stop;
    while (begin > 0 && !is_boundary(begin - 1) &&
           !kAuxiliaries.count(lower[begin - 1]) &&
           in_temporal(begin - 1) == in_temporal(v)) {
      --begin;
    }
    if (begin < stop) f.args.push_back({"ARG0", {begin, stop}});

    std::sort(f.args.begin(), f.args.end(),
              [](const Argument& a, const Argument& b) {
                return a.span.begin < b.span.begin;
              });
  }

  // Drop any argument that would overlap another span of the same frame.
  for (auto& f : frames) {
    std::vector<Argument> kept;
    std::vector<TokenSpan> used{f.verb};
    for (auto& a : f.args) {
      bool clash = std::any_of(used.begin(), used.end(), [&](auto& u) {
        return a.span.begin < u.end && u.begin < a.span.end;
      });
      if (!clash) {
        used.push_back(a.span);
        kept.push_back(std::move(a));
      }
    }
    f.args = std::move(kept);
  }
  sent.tokens = std::move(tokens);
  sent.frames = std::move(frames);
  return sent;
}

}  // namespace

AnnotatedDocument fallback_annotate(std::string_view text,
                                    std::string doc_id) {
  AnnotatedDocument doc;
  doc.doc_id = std::move(doc_id);
  for (auto& tokens : split_paragraphs(text)) {
    Paragraph para;
    std::vector<std::string> current;
    for (auto& t : tokens) {
      bool end = is_sentence_end(t);
      current.push_back(std::move(t));
      if (end) {
        para.push_back(annotate_sentence(std::move(current)));
        current.clear();
      }
    }
    if (!current.empty()) para.push_back(annotate_sentence(std::move(current)));
    doc.paragraphs.push_back(std::move(para));
  }
  return doc;
}

}  // namespace tempora::extract

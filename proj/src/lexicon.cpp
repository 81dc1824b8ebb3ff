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

#include "lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace tempora::lexicon {

namespace {

const std::set<std::string, std::less<>>& base_verbs() {
  static const std::set<std::string, std::less<>> kVerbs = {
      "add",     "agree",   "answer",  "apply",   "argue",   "arrive",
      "ask",     "assure",  "attend",  "avoid",   "bake",    "be",
      "become",  "begin",   "believe", "blink",   "boil",    "borrow",
      "break",   "bring",   "build",   "buy",     "call",    "camp",
      "carry",   "catch",   "celebrate", "change", "chase",   "check",
      "choose",  "clean",   "climb",   "close",   "come",    "cook",
      "count",   "cry",     "cut",     "dance",   "decide",  "deliver",
      "die",     "dig",     "discover", "do",     "draw",    "dream",
      "drink",   "drive",   "drop",    "eat",     "enjoy",   "enter",
      "explain", "fall",    "feed",    "feel",    "fight",   "fill",
      "find",    "finish",  "fix",     "fly",     "follow",  "forget",
      "get",     "give",    "go",      "graduate", "grab",
      "grow",    "hang",    "happen",  "hate",    "have",    "heal",
      "hear",
      "help",    "hide",    "hike",    "hire",    "hit",     "hold",
      "hope",    "hug",     "hurry",   "invite",  "join",    "jump",
      "keep",    "kick",    "kill",    "knock",   "know",    "land",
      "laugh",   "launch",  "learn",   "leave",   "lend",    "lie",
      "like",    "listen",  "live",    "look",    "lose",    "love",
      "make",    "marry",   "meet",    "miss",    "move",    "need",
      "notice",  "offer",   "open",    "order",   "paint",   "pass",
      "pay",     "pick",    "plan",    "plant",   "play",    "practice",
      "prepare", "publish", "pull",    "purchase", "push",   "put",
      "rain",    "reach",   "read",    "realize", "receive", "recover",
      "release", "remember", "remove", "rent",    "repair",  "reply",
      "rest",    "retire",  "return",  "ride",    "ring",    "rise",
      "run",     "save",    "say",     "see",     "sell",    "send",
      "serve",   "set",     "shout",   "show",    "shower",  "sign",
      "sing",    "sit",     "sleep",   "smile",   "sneeze",  "speak",
      "spend",   "stand",   "start",   "stay",    "steal",   "stop",
      "study",   "swim",    "take",    "talk",    "teach",   "tell",
      "thank",   "think",   "throw",   "touch",   "train",   "travel",
      "try",     "turn",    "visit",   "wait",    "wake",    "walk",
      "want",    "wash",    "watch",   "wear",    "win",     "work",
      "worry",   "write",   "yell"};
  return kVerbs;
}

const std::map<std::string, std::string, std::less<>>& irregular_forms() {
  static const std::map<std::string, std::string, std::less<>> kForms = {
      {"am", "be"},        {"are", "be"},       {"ate", "eat"},
      {"became", "become"}, {"began", "begin"}, {"begun", "begin"},
      {"been", "be"},      {"bought", "buy"},   {"broke", "break"},
      {"broken", "break"}, {"brought", "bring"}, {"built", "build"},
      {"came", "come"},    {"caught", "catch"}, {"chose", "choose"},
      {"chosen", "choose"}, {"did", "do"},      {"done", "do"},
      {"drank", "drink"},  {"drawn", "draw"},   {"drew", "draw"},
      {"driven", "drive"}, {"drove", "drive"},  {"eaten", "eat"},
      {"fallen", "fall"},  {"fed", "feed"},     {"fell", "fall"},
      {"felt", "feel"},    {"flew", "fly"},     {"fought", "fight"},
      {"forgot", "forget"}, {"forgotten", "forget"}, {"found", "find"},
      {"gave", "give"},    {"given", "give"},   {"gone", "go"},
      {"got", "get"},      {"gotten", "get"},   {"grew", "grow"},
      {"grown", "grow"},   {"had", "have"},     {"has", "have"},
      {"heard", "hear"},   {"held", "hold"},    {"hid", "hide"},
      {"hidden", "hide"},  {"hung", "hang"},    {"is", "be"},
      {"kept", "keep"},    {"knew", "know"},    {"known", "know"},
      {"lay", "lie"},      {"left", "leave"},   {"lent", "lend"},
      {"lost", "lose"},    {"made", "make"},    {"met", "meet"},
      {"paid", "pay"},     {"ran", "run"},      {"rang", "ring"},
      {"rode", "ride"},    {"rose", "rise"},    {"said", "say"},
      {"sang", "sing"},    {"sat", "sit"},      {"saw", "see"},
      {"seen", "see"},     {"sent", "send"},    {"slept", "sleep"},
      {"sold", "sell"},    {"spent", "spend"},  {"spoke", "speak"},
      {"spoken", "speak"}, {"stole", "steal"},  {"stood", "stand"},
      {"swam", "swim"},    {"taken", "take"},   {"taught", "teach"},
      {"thought", "think"}, {"threw", "throw"}, {"thrown", "throw"},
      {"told", "tell"},    {"took", "take"},    {"was", "be"},
      {"were", "be"},      {"went", "go"},      {"woke", "wake"},
      {"won", "win"},      {"wore", "wear"},    {"written", "write"},
      {"wrote", "write"}};
  return kForms;
}

// Typical durations for the baseline predictor.
const std::map<std::string, TemporalUnit, std::less<>>& durations() {
  using U = TemporalUnit;
  static const std::map<std::string, TemporalUnit, std::less<>> kDurations = {
      {"answer", U::kMinutes},  {"arrive", U::kMinutes},
      {"ask", U::kMinutes},     {"blink", U::kMinutes},
      {"buy", U::kMinutes},     {"call", U::kMinutes},
      {"catch", U::kMinutes},   {"close", U::kMinutes},
      {"drop", U::kMinutes},    {"fall", U::kMinutes},
      {"grab", U::kMinutes},    {"hit", U::kMinutes},
      {"hug", U::kMinutes},     {"jump", U::kMinutes},
      {"kick", U::kMinutes},    {"knock", U::kMinutes},
      {"laugh", U::kMinutes},   {"leave", U::kMinutes},
      {"notice", U::kMinutes},  {"open", U::kMinutes},
      {"pay", U::kMinutes},     {"purchase", U::kMinutes},
      {"reach", U::kMinutes},   {"realize", U::kMinutes},
      {"say", U::kMinutes},     {"shout", U::kMinutes},
      {"smile", U::kMinutes},   {"sneeze", U::kMinutes},
      {"throw", U::kMinutes},   {"wake", U::kMinutes},
      {"yell", U::kMinutes},
      {"bake", U::kHours},      {"clean", U::kHours},
      {"cook", U::kHours},      {"dance", U::kHours},
      {"drive", U::kHours},     {"eat", U::kHours},
      {"hike", U::kHours},      {"meet", U::kHours},
      {"play", U::kHours},      {"read", U::kHours},
      {"shower", U::kHours},    {"sleep", U::kHours},
      {"swim", U::kHours},      {"walk", U::kHours},
      {"watch", U::kHours},     {"work", U::kHours},
      {"write", U::kHours},
      {"camp", U::kDays},       {"recover", U::kDays},
      {"stay", U::kDays},       {"travel", U::kDays},
      {"visit", U::kDays},
      {"heal", U::kWeeks},      {"practice", U::kWeeks},
      {"build", U::kMonths},    {"learn", U::kMonths},
      {"save", U::kMonths},     {"train", U::kMonths},
      {"attend", U::kYears},    {"study", U::kYears},
      {"grow", U::kYears},      {"teach", U::kYears},
      {"live", U::kDecades},    {"marry", U::kDecades}};
  return kDurations;
}

const std::set<std::string, std::less<>>& stopwords() {
  static const std::set<std::string, std::less<>> kStop = {
      "a",     "an",    "and",   "are",  "as",    "at",    "be",   "been",
      "but",   "by",    "did",   "do",   "for",   "from",  "had",  "has",
      "have",  "he",    "her",   "him",  "his",   "i",     "in",   "is",
      "it",    "its",   "me",    "my",   "of",    "on",    "or",   "our",
      "she",   "so",    "that",  "the",  "their", "them",  "then", "they",
      "this",  "to",    "us",    "was",  "we",    "were",  "with", "you",
      "your",  "all",   "one",   "up",   "out",   "into",  "very", "some"};
  return kStop;
}

// -ed/-ing words that are not verb forms.
const std::set<std::string, std::less<>>& suffix_exceptions() {
  static const std::set<std::string, std::less<>> kExceptions = {
      "bed",      "red",     "seed",    "speed",   "hundred",  "sacred",  "wicked",  "naked",   "during",  "morning",
      "evening",  "nothing", "something", "anything", "everything",
      "thing",    "king",    "spring",  "string",  "wing",
      "ceiling",  "building", "wedding", "pudding", "sibling", "darling",
      "swing",    "sting",   "ding",    "ping",    "shed",    "led",
      "wed",      "bled"};
  return kExceptions;
}

void add_unique(std::vector<std::string>& out, std::string s) {
  if (!s.empty() && std::find(out.begin(), out.end(), s) == out.end()) {
    out.push_back(std::move(s));
  }
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// stem after removing an -ed/-ing suffix: "stopp" -> "stop", "bak" -> "bake".
void add_stem_variants(std::vector<std::string>& out, const std::string& stem) {
  add_unique(out, stem);
  add_unique(out, stem + "e");
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1])) {
    add_unique(out, stem.substr(0, n - 1));
  }
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<std::string> lemma_candidates(std::string_view word) {
  std::vector<std::string> out;
  const std::string w = to_lower(word);
  add_unique(out, w);
  if (auto it = irregular_forms().find(w); it != irregular_forms().end()) {
    add_unique(out, it->second);
  }
  if (ends_with(w, "ied") || ends_with(w, "ies")) {
    add_unique(out, w.substr(0, w.size() - 3) + "y");
  }
  if (ends_with(w, "ing") && w.size() > 4) {
    add_stem_variants(out, w.substr(0, w.size() - 3));
  }
  if (ends_with(w, "ed") && w.size() > 3) {
    add_unique(out, w.substr(0, w.size() - 1));  // "baked" -> "bake"
    add_stem_variants(out, w.substr(0, w.size() - 2));
  }
  if (ends_with(w, "es") && w.size() > 3) {
    add_unique(out, w.substr(0, w.size() - 2));
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() > 2) {
    add_unique(out, w.substr(0, w.size() - 1));
  }
  return out;
}

std::optional<std::string> verb_lemma(std::string_view word) {
  const std::string lower = to_lower(word);
  if (auto it = irregular_forms().find(lower); it != irregular_forms().end()) {
    return it->second;
  }
  for (const auto& c : lemma_candidates(word)) {
    if (base_verbs().count(c)) return c;
  }
  return std::nullopt;
}

bool looks_like_verb(std::string_view word) {
  if (word.empty() || !std::isalpha(static_cast<unsigned char>(word[0]))) {
    return false;
  }
  const std::string w = to_lower(word);
  if (stopwords().count(w)) return false;
  if (verb_lemma(w)) return true;
  if (suffix_exceptions().count(w)) return false;
  return (ends_with(w, "ed") && w.size() >= 5) ||
         (ends_with(w, "ing") && w.size() >= 6);
}

std::optional<TemporalUnit> typical_duration(std::string_view lemma) {
  if (auto it = durations().find(lemma); it != durations().end()) {
    return it->second;
  }
  return std::nullopt;
}

bool is_stopword(std::string_view lowercase_word) {
  return stopwords().count(lowercase_word) > 0;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto is_word = [](unsigned char c) { return std::isalnum(c) || c >= 0x80; };
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (!is_word(c)) {
      out.emplace_back(1, static_cast<char>(c));
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < n) {
      unsigned char d = static_cast<unsigned char>(text[i]);
      if (is_word(d)) {
        ++i;
        continue;
      }
      // Word-internal joiners: "don't", "well-known", "3:30", "p.m.".
      bool joiner = (d == '\'' || d == '-' || d == ':' || d == '.') &&
                    i + 1 < n &&
                    is_word(static_cast<unsigned char>(text[i + 1]));
      if (d == ':' &&
          !std::isdigit(static_cast<unsigned char>(text[i - 1]))) {
        joiner = false;
      }
      if (d == '.' && !(i - start == 1 && std::isalpha(text[start]))) {
        joiner = false;
      }
      if (!joiner) break;
      ++i;
    }
    std::string word(text.substr(start, i - start));
    // Abbreviation dots: "a.m." / "p.m." keep their final period.
    if (i < n && text[i] == '.' && word.find('.') != std::string::npos) {
      word += '.';
      ++i;
    }
    out.push_back(std::move(word));
  }
  return out;
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (std::isalnum(static_cast<unsigned char>(c)) ||
        static_cast<unsigned char>(c) >= 0x80) {
      return false;
    }
  }
  return true;
}

}  // namespace tempora::lexicon

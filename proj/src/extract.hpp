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

#ifndef TEMPORA_EXTRACT_HPP_
#define TEMPORA_EXTRACT_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "jsonl.hpp"
#include "tex.hpp"

namespace tempora::extract {

using tex::TokenSpan;

// Argument role tags follow PropBank conventions: ARG0..ARG5 are core
// arguments, ARGM-TMP is the temporal argument.
inline constexpr std::string_view kTemporalRole = "ARGM-TMP";

bool is_core_role(std::string_view role);
bool is_temporal_role(std::string_view role);

struct Argument {
  std::string role;
  TokenSpan span;
};

struct VerbFrame {
  TokenSpan verb;
  std::vector<Argument> args;
};

struct Sentence {
  std::vector<std::string> tokens;
  std::vector<VerbFrame> frames;
};

using Paragraph = std::vector<Sentence>;

struct AnnotatedDocument {
  std::string doc_id;
  std::vector<Paragraph> paragraphs;
};

enum class Provenance { kWithinSentence, kCrossSentence };
std::string_view provenance_name(Provenance p);

struct PairSource {
  Provenance kind = Provenance::kWithinSentence;
  std::string doc_id;
  std::size_t paragraph = 0;
  std::size_t sentence_a = 0;  // indices within the paragraph
  std::size_t sentence_b = 0;
};

// Start of event_a stands in `relation` to start of event_b. distance is
// present exactly for cross-sentence pairs.
struct EventPair {
  EventPhrase event_a;
  EventPhrase event_b;
  Relation relation = Relation::kBefore;
  std::optional<TemporalUnit> distance;
  std::string paragraph;
  PairSource provenance;
};

// Returns an empty string when the sentence is well formed, otherwise a
// description of the first violated invariant.
std::string validate_sentence(const Sentence& s);

// Parses one corpus record; throws DataError on schema or invariant
// violations.
AnnotatedDocument parse_document(std::string_view json_line);
std::string document_to_json(const AnnotatedDocument& doc);

struct RecordError {
  std::size_t line = 0;
  std::string doc_id;  // empty if the record had none
  std::string message;
};

std::string to_string(const RecordError& e);

// Streams documents from one-record-per-line input, in input order.
// Lenient mode records each bad line and moves on; strict mode throws
// DataError on the first one. Duplicate doc_ids are record errors.
class CorpusReader {
 public:
  CorpusReader(std::istream& in, bool strict, LogFn log = nullptr);

  std::optional<AnnotatedDocument> next();
  const std::vector<RecordError>& errors() const { return errors_; }

 private:
  std::istream& in_;
  bool strict_;
  LogFn log_;
  std::size_t line_no_ = 0;
  std::vector<std::string> seen_ids_;
  std::vector<RecordError> errors_;
};

std::vector<AnnotatedDocument> load_corpus(std::istream& in, bool strict,
                                           std::vector<RecordError>* errors);

// Verb plus core arguments in token order; temporal and other modifier
// arguments are left out. Throws DataError for an empty verb span.
EventPhrase render_event_phrase(const VerbFrame& frame,
                                const std::vector<std::string>& tokens);

// Pairs from temporal arguments headed by "before"/"after" that contain at
// least one other verb.
std::vector<EventPair> extract_within_sentence(const AnnotatedDocument& doc);

// Pairs between narratively adjacent verbs whose temporal arguments carry a
// parseable date/time, with missing fields inherited from the previous one.
// Arguments headed by "before"/"after" do not date their verb.
std::vector<EventPair> extract_cross_sentence(const AnnotatedDocument& doc);

enum class Mode { kWithin, kCross, kBoth };
std::optional<Mode> parse_mode(std::string_view s);

// Within-sentence pairs first, then cross-sentence pairs.
std::vector<EventPair> extract_document(const AnnotatedDocument& doc,
                                        Mode mode);

std::string pair_to_json(const EventPair& pair);
EventPair pair_from_json(std::string_view json_line);

// Rule-based stand-in for an external semantic-role labeler; see
// fallback.cpp for the rules.
AnnotatedDocument fallback_annotate(std::string_view text,
                                    std::string doc_id = "doc");

struct ExtractOptions {
  Mode mode = Mode::kBoth;
  bool strict = false;
  unsigned workers = 1;
  std::size_t batch_size = 64;
};

struct ExtractStats {
  std::size_t documents = 0;
  std::size_t record_errors = 0;
  std::size_t within_pairs = 0;
  std::size_t cross_pairs = 0;
};

// Reads a corpus, extracts pairs with up to `workers` threads and writes
// one JSON pair per line in input document order. Output bytes do not
// depend on the worker count.
ExtractStats run_extraction(std::istream& corpus, std::ostream& out,
                            const ExtractOptions& options,
                            const LogFn& log = nullptr);

}  // namespace tempora::extract

#endif  // TEMPORA_EXTRACT_HPP_

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

#include "extract.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace tempora::extract {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::size_t span_length(const TokenSpan& s) { return s.end - s.begin; }

bool contains(const TokenSpan& outer, const TokenSpan& inner) {
  return outer.begin <= inner.begin && inner.end <= outer.end;
}

bool overlaps(const TokenSpan& a, const TokenSpan& b) {
  return a.begin < b.end && b.begin < a.end;
}

std::string paragraph_text(const Paragraph& p) {
  std::string out;
  for (const auto& s : p) {
    for (const auto& t : s.tokens) {
      if (!out.empty()) out += ' ';
      out += t;
    }
  }
  return out;
}

TokenSpan span_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() ||
      !j[1].is_number_unsigned()) {
    throw DataError(std::string(what) + " must be [start, end)");
  }
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

ordered_json span_to_json(const TokenSpan& s) {
  return ordered_json::array({s.begin, s.end});
}

ordered_json phrase_to_json(const EventPhrase& e) {
  ordered_json j;
  j["text"] = e.text;
  j["verb_index"] = e.verb_index ? ordered_json(*e.verb_index)
                                 : ordered_json(nullptr);
  return j;
}

EventPhrase phrase_from_json(const json& j) {
  EventPhrase e;
  e.text = j.at("text").get<std::string>();
  if (j.contains("verb_index") && !j.at("verb_index").is_null()) {
    e.verb_index = j.at("verb_index").get<std::size_t>();
  }
  return e;
}

// Number of argument tokens attached to a frame.
std::size_t argument_tokens(const VerbFrame& f) {
  std::size_t n = 0;
  for (const auto& a : f.args) n += span_length(a.span);
  return n;
}

}  // namespace

bool is_core_role(std::string_view role) {
  return role.size() == 4 && role.substr(0, 3) == "ARG" && role[3] >= '0' &&
         role[3] <= '5';
}

bool is_temporal_role(std::string_view role) { return role == kTemporalRole; }

std::string_view provenance_name(Provenance p) {
  return p == Provenance::kWithinSentence ? "within_sentence"
                                          : "cross_sentence";
}

std::string validate_sentence(const Sentence& s) {
  const std::size_t n = s.tokens.size();
  for (const auto& t : s.tokens) {
    if (t.empty()) return "empty token";
    for (char c : t) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        return "token contains whitespace: '" + t + "'";
      }
    }
  }
  for (const auto& f : s.frames) {
    if (span_length(f.verb) == 0 || f.verb.begin > f.verb.end) {
      return "frame has an empty verb span";
    }
    if (f.verb.end > n) return "verb span out of sentence bounds";
    std::vector<TokenSpan> spans{f.verb};
    for (const auto& a : f.args) {
      if (a.span.begin >= a.span.end) {
        return "argument " + a.role + " has an empty span";
      }
      if (a.span.end > n) {
        return "argument " + a.role + " out of sentence bounds";
      }
      spans.push_back(a.span);
    }
    for (std::size_t i = 0; i < spans.size(); ++i) {
      for (std::size_t j = i + 1; j < spans.size(); ++j) {
        if (overlaps(spans[i], spans[j])) return "overlapping spans in frame";
      }
    }
  }
  return {};
}

AnnotatedDocument parse_document(std::string_view json_line) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("record is not an object");
  AnnotatedDocument doc;
  if (!j.contains("doc_id") || !j["doc_id"].is_string() ||
      j["doc_id"].get<std::string>().empty()) {
    throw DataError("missing or empty doc_id");
  }
  doc.doc_id = j["doc_id"].get<std::string>();
  if (!j.contains("paragraphs") || !j["paragraphs"].is_array()) {
    throw DataError("missing paragraphs array");
  }
  try {
    for (const auto& jp : j["paragraphs"]) {
      if (!jp.is_array()) throw DataError("paragraph is not an array");
      Paragraph para;
      for (const auto& js : jp) {
        Sentence s;
        s.tokens = js.at("tokens").get<std::vector<std::string>>();
        if (js.contains("frames")) {
          for (const auto& jf : js.at("frames")) {
            VerbFrame f;
            f.verb = span_from_json(jf.at("verb"), "verb");
            if (jf.contains("args")) {
              for (const auto& ja : jf.at("args")) {
                Argument a;
                a.role = ja.at("role").get<std::string>();
                a.span = span_from_json(ja.at("span"), "span");
                f.args.push_back(std::move(a));
              }
            }
            s.frames.push_back(std::move(f));
          }
        }
        if (auto err = validate_sentence(s); !err.empty()) {
          throw DataError(err);
        }
        para.push_back(std::move(s));
      }
      doc.paragraphs.push_back(std::move(para));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("schema violation: ") + e.what());
  }
  return doc;
}

std::string document_to_json(const AnnotatedDocument& doc) {
  ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["paragraphs"] = ordered_json::array();
  for (const auto& p : doc.paragraphs) {
    ordered_json jp = ordered_json::array();
    for (const auto& s : p) {
      ordered_json js;
      js["tokens"] = s.tokens;
      js["frames"] = ordered_json::array();
      for (const auto& f : s.frames) {
        ordered_json jf;
        jf["verb"] = span_to_json(f.verb);
        jf["args"] = ordered_json::array();
        for (const auto& a : f.args) {
          ordered_json ja;
          ja["role"] = a.role;
          ja["span"] = span_to_json(a.span);
          jf["args"].push_back(std::move(ja));
        }
        js["frames"].push_back(std::move(jf));
      }
      jp.push_back(std::move(js));
    }
    j["paragraphs"].push_back(std::move(jp));
  }
  return j.dump();
}

std::string to_string(const RecordError& e) {
  std::ostringstream os;
  os << "line " << e.line;
  if (!e.doc_id.empty()) os << " (doc_id " << e.doc_id << ")";
  os << ": " << e.message;
  return os.str();
}

CorpusReader::CorpusReader(std::istream& in, bool strict, LogFn log)
    : in_(in), strict_(strict), log_(std::move(log)) {}

std::optional<AnnotatedDocument> CorpusReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (normalize_line(line)) continue;
    RecordError err;
    err.line = line_no_;
    try {
      AnnotatedDocument doc = parse_document(line);
      if (std::find(seen_ids_.begin(), seen_ids_.end(), doc.doc_id) !=
          seen_ids_.end()) {
        err.doc_id = doc.doc_id;
        throw DataError("duplicate doc_id");
      }
      seen_ids_.push_back(doc.doc_id);
      return doc;
    } catch (const DataError& e) {
      if (err.doc_id.empty()) {
        // Best effort: recover the id for the message.
        auto j = json::parse(line, nullptr, false);
        if (j.is_object() && j.contains("doc_id") && j["doc_id"].is_string()) {
          err.doc_id = j["doc_id"].get<std::string>();
        }
      }
      err.message = e.what();
      if (strict_) throw DataError(to_string(err));
      if (log_) log_(to_string(err));
      errors_.push_back(std::move(err));
    }
  }
  return std::nullopt;
}

std::vector<AnnotatedDocument> load_corpus(std::istream& in, bool strict,
                                           std::vector<RecordError>* errors) {
  CorpusReader reader(in, strict);
  std::vector<AnnotatedDocument> docs;
  while (auto doc = reader.next()) docs.push_back(std::move(*doc));
  if (errors) *errors = reader.errors();
  return docs;
}

EventPhrase render_event_phrase(const VerbFrame& frame,
                                const std::vector<std::string>& tokens) {
  if (span_length(frame.verb) == 0 || frame.verb.begin > frame.verb.end) {
    throw DataError("invalid frame: empty verb span");
  }
  std::vector<TokenSpan> spans{frame.verb};
  for (const auto& a : frame.args) {
    if (is_core_role(a.role)) spans.push_back(a.span);
  }
  std::sort(spans.begin(), spans.end(),
            [](const TokenSpan& x, const TokenSpan& y) {
              return x.begin < y.begin;
            });
  EventPhrase e;
  std::size_t count = 0;
  for (const auto& s : spans) {
    if (s == frame.verb) e.verb_index = count;
    for (std::size_t i = s.begin; i < s.end && i < tokens.size(); ++i) {
      if (!e.text.empty()) e.text += ' ';
      e.text += tokens[i];
      ++count;
    }
  }
  return e;
}

std::vector<EventPair> extract_within_sentence(const AnnotatedDocument& doc) {
  std::vector<EventPair> out;
  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    const Paragraph& para = doc.paragraphs[p];
    std::optional<std::string> text;
    for (std::size_t s = 0; s < para.size(); ++s) {
      const Sentence& sent = para[s];
      for (std::size_t fi = 0; fi < sent.frames.size(); ++fi) {
        const VerbFrame& main = sent.frames[fi];
        for (const auto& arg : main.args) {
          if (!is_temporal_role(arg.role)) continue;
          const std::string head = to_lower(sent.tokens[arg.span.begin]);
          auto relation = parse_relation(head);
          if (!relation) continue;

          // Argument-internal verb with the most argument tokens; the
          // earliest one wins a tie.
          const VerbFrame* inner = nullptr;
          for (std::size_t gi = 0; gi < sent.frames.size(); ++gi) {
            const VerbFrame& g = sent.frames[gi];
            if (gi == fi || g.verb == main.verb) continue;
            if (!contains(arg.span, g.verb)) continue;
            if (!inner || argument_tokens(g) > argument_tokens(*inner) ||
                (argument_tokens(g) == argument_tokens(*inner) &&
                 g.verb.begin < inner->verb.begin)) {
              inner = &g;
            }
          }
          if (!inner) continue;

          if (!text) text = paragraph_text(para);
          EventPair pair;
          pair.event_a = render_event_phrase(main, sent.tokens);
          pair.event_b = render_event_phrase(*inner, sent.tokens);
          pair.relation = *relation;
          pair.paragraph = *text;
          pair.provenance = {Provenance::kWithinSentence, doc.doc_id, p, s, s};
          out.push_back(std::move(pair));
        }
      }
    }
  }
  return out;
}

std::vector<EventPair> extract_cross_sentence(const AnnotatedDocument& doc) {
  struct Dated {
    std::size_t sentence;
    const VerbFrame* frame;
    tex::PartialTimestamp when;
  };

  std::vector<EventPair> out;
  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    const Paragraph& para = doc.paragraphs[p];

    std::vector<std::pair<std::size_t, const VerbFrame*>> order;
    for (std::size_t s = 0; s < para.size(); ++s) {
      for (const auto& f : para[s].frames) order.emplace_back(s, &f);
    }
    std::stable_sort(order.begin(), order.end(), [](auto& x, auto& y) {
      return x.first != y.first ? x.first < y.first
                                : x.second->verb.begin < y.second->verb.begin;
    });

    std::vector<Dated> dated;
    for (const auto& [s, frame] : order) {
      const auto& tokens = para[s].tokens;
      for (const auto& arg : frame->args) {
        if (!is_temporal_role(arg.role)) continue;
        // A date inside "before X ..." / "after X ..." belongs to X.
        if (parse_relation(to_lower(tokens[arg.span.begin]))) continue;
        std::vector<std::string> arg_tokens(tokens.begin() + arg.span.begin,
                                            tokens.begin() + arg.span.end);
        auto ts = tex::parse_temporal_expression(arg_tokens);
        if (!ts) continue;
        ts->source_span = {ts->source_span.begin + arg.span.begin,
                           ts->source_span.end + arg.span.begin};
        tex::PartialTimestamp resolved =
            dated.empty() ? *ts : tex::inherit(dated.back().when, *ts);
        if (!tex::resolve(resolved)) continue;
        dated.push_back({s, frame, resolved});
        break;  // one temporal argument per verb
      }
    }
    if (dated.size() < 2) continue;

    const std::string text = paragraph_text(para);
    for (std::size_t i = 0; i + 1 < dated.size(); ++i) {
      const Dated& a = dated[i];
      const Dated& b = dated[i + 1];
      auto cmp = tex::distance_between(a.when, b.when);
      if (!cmp) continue;
      EventPair pair;
      pair.event_a = render_event_phrase(*a.frame, para[a.sentence].tokens);
      pair.event_b = render_event_phrase(*b.frame, para[b.sentence].tokens);
      pair.relation = cmp->order;
      pair.distance = cmp->bucket;
      pair.paragraph = text;
      pair.provenance = {Provenance::kCrossSentence, doc.doc_id, p,
                         a.sentence, b.sentence};
      out.push_back(std::move(pair));
    }
  }
  return out;
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "within") return Mode::kWithin;
  if (s == "cross") return Mode::kCross;
  if (s == "both") return Mode::kBoth;
  return std::nullopt;
}

std::vector<EventPair> extract_document(const AnnotatedDocument& doc,
                                        Mode mode) {
  std::vector<EventPair> out;
  if (mode != Mode::kCross) out = extract_within_sentence(doc);
  if (mode != Mode::kWithin) {
    auto cross = extract_cross_sentence(doc);
    out.insert(out.end(), std::make_move_iterator(cross.begin()),
               std::make_move_iterator(cross.end()));
  }
  return out;
}

std::string pair_to_json(const EventPair& pair) {
  ordered_json j;
  j["event_a"] = phrase_to_json(pair.event_a);
  j["event_b"] = phrase_to_json(pair.event_b);
  j["relation"] = relation_name(pair.relation);
  j["distance"] = pair.distance ? ordered_json(unit_name(*pair.distance))
                                : ordered_json(nullptr);
  j["paragraph"] = pair.paragraph;
  ordered_json prov;
  prov["kind"] = provenance_name(pair.provenance.kind);
  prov["doc_id"] = pair.provenance.doc_id;
  prov["paragraph"] = pair.provenance.paragraph;
  prov["sentences"] =
      ordered_json::array({pair.provenance.sentence_a,
                           pair.provenance.sentence_b});
  j["provenance"] = std::move(prov);
  return j.dump();
}

EventPair pair_from_json(std::string_view json_line) {
  try {
    json j = json::parse(json_line);
    EventPair pair;
    pair.event_a = phrase_from_json(j.at("event_a"));
    pair.event_b = phrase_from_json(j.at("event_b"));
    auto rel = parse_relation(j.at("relation").get<std::string>());
    if (!rel) throw DataError("relation must be before or after");
    pair.relation = *rel;
    if (!j.at("distance").is_null()) {
      auto unit = parse_unit_name(j.at("distance").get<std::string>());
      if (!unit) throw DataError("unknown distance unit");
      pair.distance = unit;
    }
    pair.paragraph = j.at("paragraph").get<std::string>();
    const json& prov = j.at("provenance");
    const std::string kind = prov.at("kind").get<std::string>();
    if (kind == "within_sentence") {
      pair.provenance.kind = Provenance::kWithinSentence;
    } else if (kind == "cross_sentence") {
      pair.provenance.kind = Provenance::kCrossSentence;
    } else {
      throw DataError("unknown provenance kind: " + kind);
    }
    pair.provenance.doc_id = prov.at("doc_id").get<std::string>();
    pair.provenance.paragraph = prov.at("paragraph").get<std::size_t>();
    const auto& sents = prov.at("sentences");
    pair.provenance.sentence_a = sents.at(0).get<std::size_t>();
    pair.provenance.sentence_b = sents.at(1).get<std::size_t>();
    if (pair.event_a.text.empty() || pair.event_b.text.empty()) {
      throw DataError("empty event phrase");
    }
    return pair;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed pair record: ") + e.what());
  }
}

ExtractStats run_extraction(std::istream& corpus, std::ostream& out,
                            const ExtractOptions& options, const LogFn& log) {
  CorpusReader reader(corpus, options.strict, log);
  ExtractStats stats;
  const unsigned workers = std::max(1u, options.workers);
  const std::size_t batch_size = std::max<std::size_t>(1, options.batch_size);

  std::vector<AnnotatedDocument> batch;
  std::vector<std::vector<std::string>> rendered;
  bool done = false;
  while (!done) {
    batch.clear();
    while (batch.size() < batch_size) {
      auto doc = reader.next();
      if (!doc) {
        done = true;
        break;
      }
      batch.push_back(std::move(*doc));
    }
    if (batch.empty()) break;

    // Each slot is owned by exactly one worker; the sink below walks the
    // slots in input order.
    rendered.assign(batch.size(), {});
    std::vector<std::size_t> within(batch.size(), 0);
    std::vector<std::exception_ptr> failures(batch.size());
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
      for (std::size_t i = cursor.fetch_add(1); i < batch.size();
           i = cursor.fetch_add(1)) {
        try {
          for (const auto& pair : extract_document(batch[i], options.mode)) {
            if (pair.provenance.kind == Provenance::kWithinSentence) {
              ++within[i];
            }
            rendered[i].push_back(pair_to_json(pair));
          }
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(workers, batch.size()));
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (failures[i]) std::rethrow_exception(failures[i]);
      for (const auto& line : rendered[i]) out << line << '\n';
      stats.within_pairs += within[i];
      stats.cross_pairs += rendered[i].size() - within[i];
    }
    stats.documents += batch.size();
  }
  stats.record_errors = reader.errors().size();
  return stats;
}

}  // namespace tempora::extract

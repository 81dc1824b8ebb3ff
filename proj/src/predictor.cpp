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

#include "predictor.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <set>
#include <stdexcept>

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include "httplib.h"
#include "json.hpp"
#include "lexicon.hpp"

namespace tempora::predictor {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::set<std::string> content_tokens(std::string_view text) {
  std::set<std::string> out;
  for (const auto& tok : lexicon::tokenize(text)) {
    if (lexicon::is_punctuation(tok)) continue;
    std::string w = to_lower(tok);
    if (lexicon::is_stopword(w)) continue;
    out.insert(lexicon::verb_lemma(w).value_or(w));
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view premise) {
  std::vector<std::string> out;
  std::string current;
  for (const auto& tok : lexicon::tokenize(premise)) {
    if (!current.empty()) current += ' ';
    current += tok;
    if (tok == "." || tok == "!" || tok == "?") {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) /
         static_cast<double>(a.size() + b.size() - common);
}

std::vector<double> probability_vector(const json& j, const char* key,
                                       std::size_t size) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != size) {
    throw PredictorError(std::string("response field '") + key +
                         "' must be an array of " + std::to_string(size) +
                         " numbers");
  }
  std::vector<double> out;
  for (const auto& x : j[key]) {
    if (!x.is_number()) {
      throw PredictorError(std::string("non-numeric entry in '") + key + "'");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw PredictorError(std::string("response field '") + key +
                         "' must be a number");
  }
  return j[key].get<double>();
}

json parse_response(std::string_view line, std::uint64_t expected_id) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw PredictorError("malformed response line: " + std::string(line));
  }
  if (!j.contains("id") || !j["id"].is_number_unsigned() ||
      j["id"].get<std::uint64_t>() != expected_id) {
    throw PredictorError("response id does not match request " +
                         std::to_string(expected_id));
  }
  if (j.contains("error")) {
    throw PredictorError("predictor error: " +
                         (j["error"].is_string() ? j["error"].get<std::string>()
                                                 : j["error"].dump()));
  }
  return j;
}

// Rethrows simplex violations as predictor errors.
template <typename Fn>
auto as_predictor_error(Fn&& fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    throw PredictorError(e.what());
  }
}

}  // namespace

// --- baseline ---------------------------------------------------------------

std::optional<std::size_t> BaselinePredictor::locate(std::string_view event,
                                                     std::string_view premise) {
  const auto needle = content_tokens(event);
  const auto sentences = split_sentences(premise);
  std::optional<std::size_t> best;
  double best_score = 0.0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const double score = jaccard(needle, content_tokens(sentences[i]));
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

std::optional<std::string> BaselinePredictor::head_verb(
    std::string_view event) {
  std::optional<std::string> first;
  for (const auto& tok : lexicon::tokenize(event)) {
    auto lemma = lexicon::verb_lemma(tok);
    if (!lemma) continue;
    if (*lemma != "be" && *lemma != "have" && *lemma != "do") return lemma;
    if (!first) first = lemma;
  }
  return first;
}

Predictor::DistAnswer BaselinePredictor::query_dist(std::string_view event_a,
                                                    std::string_view event_b,
                                                    std::string_view context) {
  DistAnswer out;
  const auto ia = locate(event_a, context);
  const auto ib = locate(event_b, context);
  if (ia && ib) {
    out.start = *ia <= *ib
                    ? engine::StartOrderProbs{kLocatedBefore,
                                               1.0 - kLocatedBefore}
                    : engine::StartOrderProbs{1.0 - kLocatedBefore,
                                               kLocatedBefore};
  } else {
    out.start = {0.5 + kUnlocatedLean, 0.5 - kUnlocatedLean};
  }
  out.distance = engine::one_hot_distance(kDistanceUnit);
  return out;
}

DurationDist BaselinePredictor::query_dur(std::string_view event) {
  TemporalUnit unit = kDefaultDuration;
  if (auto verb = head_verb(event)) {
    unit = lexicon::typical_duration(*verb).value_or(kDefaultDuration);
  }
  return engine::one_hot_duration(unit);
}

// --- wire codec -------------------------------------------------------------

namespace wire {

std::string encode_dist_request(std::uint64_t id, std::string_view event_a,
                                std::string_view event_b,
                                std::string_view context) {
  ordered_json j;
  j["id"] = id;
  j["type"] = "dist";
  j["event_a"] = event_a;
  j["event_b"] = event_b;
  j["context"] = context;
  return j.dump();
}

std::string encode_dur_request(std::uint64_t id, std::string_view event) {
  ordered_json j;
  j["id"] = id;
  j["type"] = "dur";
  j["event"] = event;
  return j.dump();
}

std::optional<std::uint64_t> response_id(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw PredictorError("malformed response line: " + std::string(line));
  }
  if (j.contains("id") && j["id"].is_number_unsigned()) {
    return j["id"].get<std::uint64_t>();
  }
  return std::nullopt;
}

Predictor::DistAnswer decode_dist_response(std::string_view line,
                                           std::uint64_t expected_id) {
  const json j = parse_response(line, expected_id);
  return as_predictor_error([&] {
    Predictor::DistAnswer out;
    out.start = engine::make_start_order(number_field(j, "p_before"),
                                          number_field(j, "p_after"));
    out.distance = engine::make_distance(probability_vector(j, "d", 7));
    return out;
  });
}

DurationDist decode_dur_response(std::string_view line,
                                 std::uint64_t expected_id) {
  const json j = parse_response(line, expected_id);
  return as_predictor_error(
      [&] { return engine::make_duration(probability_vector(j, "v", 7)); });
}

}  // namespace wire

// --- subprocess -------------------------------------------------------------

SubprocessTransport::SubprocessTransport(const std::string& command,
                                         std::chrono::milliseconds timeout)
    : command_(command), timeout_(timeout) {
  // A socket pair instead of pipes so writes can use MSG_NOSIGNAL.
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw PredictorError(std::string("socketpair: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw PredictorError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(fds[1]);
  fd_ = fds[0];
  pid_ = pid;
}

SubprocessTransport::~SubprocessTransport() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
  }
  if (pid_ > 0) {
    // Give the child a moment to exit on EOF before forcing it.
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) == pid_) return;
      ::usleep(10000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }
}

std::string SubprocessTransport::read_line() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      throw PredictorError("timed out waiting for '" + command_ + "'");
    }
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) continue;
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw PredictorError("predictor process '" + command_ +
                           "' closed its output");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::string SubprocessTransport::round_trip(const std::string& request_line,
                                            std::uint64_t id) {
  if (auto it = stray_.find(id); it != stray_.end()) {
    std::string line = std::move(it->second);
    stray_.erase(it);
    return line;
  }
  std::string data = request_line + "\n";
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n =
        ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw PredictorError("cannot write to predictor process '" + command_ +
                           "': " + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(n);
  }
  for (;;) {
    std::string line = read_line();
    if (line.empty()) continue;
    auto rid = wire::response_id(line);
    if (!rid || *rid == id) return line;
    stray_[*rid] = std::move(line);
  }
}

// --- http -------------------------------------------------------------------

struct HttpTransport::Impl {
  std::unique_ptr<httplib::Client> client;
  std::string path;
  std::string url;
};

HttpTransport::HttpTransport(const std::string& url,
                             std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>()) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) {
    throw std::invalid_argument("HTTP predictor URL must start with http://");
  }
  const std::size_t slash = url.find('/', kScheme.size());
  const std::string origin = url.substr(0, slash);
  impl_->path = slash == std::string::npos ? "/" : url.substr(slash);
  impl_->url = url;
  if (origin.size() == kScheme.size()) {
    throw std::invalid_argument("HTTP predictor URL has no host: " + url);
  }
  impl_->client = std::make_unique<httplib::Client>(origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  impl_->client->set_read_timeout(secs.count(), 0);
  impl_->client->set_write_timeout(secs.count(), 0);
  impl_->client->set_connection_timeout(10, 0);
}

HttpTransport::~HttpTransport() = default;

std::string HttpTransport::round_trip(const std::string& request_line,
                                      std::uint64_t) {
  auto res =
      impl_->client->Post(impl_->path, request_line + "\n", "application/json");
  if (!res) {
    throw PredictorError("HTTP request to " + impl_->url +
                         " failed: " + httplib::to_string(res.error()));
  }
  std::string body = res->body;
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) {
    body.pop_back();
  }
  if (res->status != 200 && body.empty()) {
    throw PredictorError("HTTP " + std::to_string(res->status) + " from " +
                         impl_->url);
  }
  return body;
}

// --- wire predictor ---------------------------------------------------------

WirePredictor::WirePredictor(std::unique_ptr<Transport> transport)
    : transport_(std::move(transport)) {}

Predictor::DistAnswer WirePredictor::query_dist(std::string_view event_a,
                                                std::string_view event_b,
                                                std::string_view context) {
  std::lock_guard lock(mu_);
  const std::uint64_t id = next_id_++;
  const std::string line = transport_->round_trip(
      wire::encode_dist_request(id, event_a, event_b, context), id);
  return wire::decode_dist_response(line, id);
}

DurationDist WirePredictor::query_dur(std::string_view event) {
  std::lock_guard lock(mu_);
  const std::uint64_t id = next_id_++;
  const std::string line =
      transport_->round_trip(wire::encode_dur_request(id, event), id);
  return wire::decode_dur_response(line, id);
}

std::unique_ptr<Predictor> make_predictor(std::string_view spec) {
  if (spec == "baseline") return std::make_unique<BaselinePredictor>();
  if (spec.rfind("cmd:", 0) == 0) {
    std::string command(spec.substr(4));
    if (command.empty()) {
      throw std::invalid_argument("cmd: predictor needs a command");
    }
    return std::make_unique<WirePredictor>(
        std::make_unique<SubprocessTransport>(command));
  }
  if (spec.rfind("http://", 0) == 0) {
    return std::make_unique<WirePredictor>(
        std::make_unique<HttpTransport>(std::string(spec)));
  }
  throw std::invalid_argument(
      "unknown predictor '" + std::string(spec) +
      "' (expected baseline, cmd:<command> or http://host:port/path)");
}

}  // namespace tempora::predictor

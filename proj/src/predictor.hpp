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

#ifndef TEMPORA_PREDICTOR_HPP_
#define TEMPORA_PREDICTOR_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "engine.hpp"

namespace tempora::predictor {

using engine::DistanceDist;
using engine::DurationDist;
using engine::Predictor;

// Deterministic model-free predictor.
//
// Start order: each event is located in the premise sentence with the
// highest Jaccard overlap of content tokens (lowercased, stopwords
// dropped, verbs lemmatized; ties go to the earliest sentence). A located
// no later than B gives (0.8, 0.2), otherwise (0.2, 0.8). If either event
// cannot be located the answer leans by kUnlocatedLean toward the order of
// mention, i.e. (0.5 + lean, 0.5 - lean).
// Distance: one-hot at hours. Duration: one-hot from the head verb's entry
// in the duration lexicon, days when absent.
class BaselinePredictor final : public Predictor {
 public:
  static constexpr double kLocatedBefore = 0.8;
  static constexpr double kUnlocatedLean = 1e-6;
  static constexpr TemporalUnit kDistanceUnit = TemporalUnit::kHours;
  static constexpr TemporalUnit kDefaultDuration = TemporalUnit::kDays;

  DistAnswer query_dist(std::string_view event_a, std::string_view event_b,
                        std::string_view context) override;
  DurationDist query_dur(std::string_view event) override;

  // Index of the best-matching premise sentence, if any overlaps.
  static std::optional<std::size_t> locate(std::string_view event,
                                           std::string_view premise);
  static std::optional<std::string> head_verb(std::string_view event);
};

// Line-delimited JSON wire protocol.
namespace wire {

std::string encode_dist_request(std::uint64_t id, std::string_view event_a,
                                std::string_view event_b,
                                std::string_view context);
std::string encode_dur_request(std::uint64_t id, std::string_view event);

// Extracts the id of a response line; empty when absent or null. Throws
// PredictorError for a line that is not a JSON object.
std::optional<std::uint64_t> response_id(std::string_view line);

// Decode a response to the request with `expected_id`. Error responses,
// id mismatches, missing fields, non-finite values and vectors off by more
// than the normalization tolerance raise PredictorError.
Predictor::DistAnswer decode_dist_response(std::string_view line,
                                           std::uint64_t expected_id);
DurationDist decode_dur_response(std::string_view line,
                                 std::uint64_t expected_id);

}  // namespace wire

// Carries one request line and returns the response line with the same id.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string round_trip(const std::string& request_line,
                                 std::uint64_t id) = 0;
};

// Child process running `sh -c command`, speaking the protocol on its
// standard input and output.
class SubprocessTransport final : public Transport {
 public:
  explicit SubprocessTransport(
      const std::string& command,
      std::chrono::milliseconds timeout = std::chrono::seconds(120));
  ~SubprocessTransport() override;

  SubprocessTransport(const SubprocessTransport&) = delete;
  SubprocessTransport& operator=(const SubprocessTransport&) = delete;

  std::string round_trip(const std::string& request_line,
                         std::uint64_t id) override;

 private:
  std::string read_line();

  std::string command_;
  std::chrono::milliseconds timeout_;
  int fd_ = -1;
  int pid_ = -1;
  std::string buffer_;
  std::map<std::uint64_t, std::string> stray_;
};

// One POST per request to a single endpoint; the body is the request line
// and the response body is the response line.
class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(
      const std::string& url,
      std::chrono::milliseconds timeout = std::chrono::seconds(120));
  ~HttpTransport() override;

  std::string round_trip(const std::string& request_line,
                         std::uint64_t id) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Predictor over any transport. Requests are serialized; ids increase from 1.
class WirePredictor final : public Predictor {
 public:
  explicit WirePredictor(std::unique_ptr<Transport> transport);

  DistAnswer query_dist(std::string_view event_a, std::string_view event_b,
                        std::string_view context) override;
  DurationDist query_dur(std::string_view event) override;

 private:
  std::unique_ptr<Transport> transport_;
  std::mutex mu_;
  std::uint64_t next_id_ = 1;
};

// "baseline", "cmd:<shell command>" or "http://host[:port][/path]".
// Throws std::invalid_argument for anything else.
std::unique_ptr<Predictor> make_predictor(std::string_view spec);

}  // namespace tempora::predictor

#endif  // TEMPORA_PREDICTOR_HPP_

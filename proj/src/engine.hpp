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

#ifndef TEMPORA_ENGINE_HPP_
#define TEMPORA_ENGINE_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "core.hpp"
#include "format.hpp"

// Symbolic composition of start-order, distance and duration probabilities
// into end-time decisions.
//
//   dist = c.d * tanh(int_max * (p_after - p_before))
//   dur  = c.v
//   end of A is before start of B  <=>  dist + dur < 0
//
// with c = [0, 1, ..., 6] the bucket scale.
namespace tempora::engine {

inline constexpr double kDefaultIntMax = 1000.0;
inline constexpr std::array<double, kUnitCount> kBucketScale = {0, 1, 2, 3,
                                                                4, 5, 6};
// Inputs whose mass is off by more than this are rejected, smaller errors
// are renormalized away.
inline constexpr double kNormalizationTolerance = 1e-6;

struct SymConfig {
  double int_max = kDefaultIntMax;
};

// Throws std::invalid_argument unless int_max is finite and positive.
void validate(const SymConfig& cfg);

struct StartOrderProbs {
  double before = 0.5;
  double after = 0.5;
};

struct DistanceDist {
  std::array<double, kUnitCount> d{};
};

struct DurationDist {
  std::array<double, kUnitCount> v{};
};

// Checked constructors: every entry finite and within tolerance of [0, 1],
// total mass within kNormalizationTolerance of 1. The result is clamped and
// renormalized. Throws DataError otherwise.
StartOrderProbs make_start_order(double before, double after);
DistanceDist make_distance(std::span<const double> probs);
DurationDist make_duration(std::span<const double> probs);

DistanceDist one_hot_distance(TemporalUnit u);
DurationDist one_hot_duration(TemporalUnit u);

struct PredictorOutput {
  StartOrderProbs start;
  DistanceDist distance;
  DurationDist duration;
};

double dist_value(const StartOrderProbs& p, const DistanceDist& d,
                  const SymConfig& cfg = {});
double dur_value(const DurationDist& v);

// before iff dist + dur < 0; a zero sum counts as after. Throws
// std::domain_error for non-finite input.
Relation infer_end_label(double dist, double dur);

// Flat layout of the 16 probability inputs: p_before, p_after, d[0..6],
// v[0..6]. The flat functions do not validate, so they can be evaluated off
// the probability simplex (finite differences need that).
inline constexpr std::size_t kInputCount = 2 + 2 * kUnitCount;
using FlatInputs = std::array<double, kInputCount>;

FlatInputs flatten(const StartOrderProbs& p, const DistanceDist& d,
                   const DurationDist& v);

// Two-class cross-entropy over logits [pred, -pred] (index 0 = after,
// index 1 = before), pred = dist + dur.
double end_loss_flat(const FlatInputs& x, Relation gold,
                     const SymConfig& cfg = {});
FlatInputs end_loss_grad_flat(const FlatInputs& x, Relation gold,
                              const SymConfig& cfg = {});

double end_loss(const StartOrderProbs& p, const DistanceDist& d,
                const DurationDist& v, Relation gold,
                const SymConfig& cfg = {});
FlatInputs end_loss_grad(const StartOrderProbs& p, const DistanceDist& d,
                         const DurationDist& v, Relation gold,
                         const SymConfig& cfg = {});

// Probability source for the engine. Implementations: the in-process
// baseline, and wire-protocol clients (subprocess, HTTP) in predictor.hpp.
// Implementations must tolerate concurrent calls.
class Predictor {
 public:
  struct DistAnswer {
    StartOrderProbs start;
    DistanceDist distance;
  };

  virtual ~Predictor() = default;

  // Start order of A relative to B in context, queried with the relation
  // fixed to "before".
  virtual DistAnswer query_dist(std::string_view event_a,
                                std::string_view event_b,
                                std::string_view context) = 0;
  virtual DurationDist query_dur(std::string_view event) = 0;
};

struct Prediction {
  Label label = Label::kEntailment;
  Relation predicted = Relation::kBefore;
  StartOrderProbs start;
  double dist = 0.0;
  double dur = 0.0;  // end comparator only
};

// Start hypotheses: argmax over (p_before, p_after), ties to before.
// End hypotheses: infer_end_label over a dist query and a dur query on A.
// Entailment iff the predicted relation is the stated one. Predictor
// failures surface as PredictorError carrying the query.
Prediction predict(const format::ParsedHypothesis& hypothesis,
                   std::string_view premise, Predictor& predictor,
                   const SymConfig& cfg = {});

}  // namespace tempora::engine

#endif  // TEMPORA_ENGINE_HPP_

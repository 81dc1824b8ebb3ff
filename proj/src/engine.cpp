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

#include "engine.hpp"

#include <cmath>
#include <stdexcept>

namespace tempora::engine {

namespace {

template <std::size_t N>
std::array<double, N> checked_simplex(std::span<const double> probs,
                                      const char* what) {
  if (probs.size() != N) {
    throw DataError(std::string(what) + ": expected " + std::to_string(N) +
                    " probabilities, got " + std::to_string(probs.size()));
  }
  std::array<double, N> out{};
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double x = probs[i];
    if (!std::isfinite(x) || x < -kNormalizationTolerance ||
        x > 1.0 + kNormalizationTolerance) {
      throw DataError(std::string(what) + ": probability out of range");
    }
    out[i] = x < 0.0 ? 0.0 : x;
    sum += out[i];
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw DataError(std::string(what) + ": probabilities sum to " +
                    std::to_string(sum));
  }
  for (double& x : out) x /= sum;
  return out;
}

double scaled(const std::array<double, kUnitCount>& probs) {
  double s = 0.0;
  for (std::size_t i = 0; i < kUnitCount; ++i) s += kBucketScale[i] * probs[i];
  return s;
}

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  return (x > 0.0 ? x : 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

struct Forward {
  double scale;  // c.d
  double tanh_term;
  double argument;  // int_max * (p_after - p_before)
  double pred;
};

Forward forward(const FlatInputs& x, const SymConfig& cfg) {
  Forward f{};
  f.scale = 0.0;
  double dur = 0.0;
  for (std::size_t i = 0; i < kUnitCount; ++i) {
    f.scale += kBucketScale[i] * x[2 + i];
    dur += kBucketScale[i] * x[2 + kUnitCount + i];
  }
  f.argument = cfg.int_max * (x[1] - x[0]);
  f.tanh_term = std::tanh(f.argument);
  f.pred = f.scale * f.tanh_term + dur;
  return f;
}

}  // namespace

void validate(const SymConfig& cfg) {
  if (!std::isfinite(cfg.int_max) || cfg.int_max <= 0.0) {
    throw std::invalid_argument("int_max must be finite and positive");
  }
}

StartOrderProbs make_start_order(double before, double after) {
  const std::array<double, 2> raw{before, after};
  auto p = checked_simplex<2>(raw, "start-order probabilities");
  return {p[0], p[1]};
}

DistanceDist make_distance(std::span<const double> probs) {
  return {checked_simplex<kUnitCount>(probs, "distance distribution")};
}

DurationDist make_duration(std::span<const double> probs) {
  return {checked_simplex<kUnitCount>(probs, "duration distribution")};
}

DistanceDist one_hot_distance(TemporalUnit u) {
  DistanceDist d;
  d.d[unit_index(u)] = 1.0;
  return d;
}

DurationDist one_hot_duration(TemporalUnit u) {
  DurationDist v;
  v.v[unit_index(u)] = 1.0;
  return v;
}

double dist_value(const StartOrderProbs& p, const DistanceDist& d,
                  const SymConfig& cfg) {
  return scaled(d.d) * std::tanh(cfg.int_max * (p.after - p.before));
}

double dur_value(const DurationDist& v) { return scaled(v.v); }

Relation infer_end_label(double dist, double dur) {
  if (!std::isfinite(dist) || !std::isfinite(dur)) {
    throw std::domain_error("infer_end_label: non-finite input");
  }
  return dist + dur < 0.0 ? Relation::kBefore : Relation::kAfter;
}

FlatInputs flatten(const StartOrderProbs& p, const DistanceDist& d,
                   const DurationDist& v) {
  FlatInputs x{};
  x[0] = p.before;
  x[1] = p.after;
  for (std::size_t i = 0; i < kUnitCount; ++i) {
    x[2 + i] = d.d[i];
    x[2 + kUnitCount + i] = v.v[i];
  }
  return x;
}

double end_loss_flat(const FlatInputs& x, Relation gold,
                     const SymConfig& cfg) {
  const double pred = forward(x, cfg).pred;
  // -log softmax([pred, -pred])[gold] reduces to a softplus.
  return gold == Relation::kBefore ? softplus(2.0 * pred)
                                   : softplus(-2.0 * pred);
}

FlatInputs end_loss_grad_flat(const FlatInputs& x, Relation gold,
                              const SymConfig& cfg) {
  const Forward f = forward(x, cfg);
  const double dloss_dpred = gold == Relation::kBefore
                                 ? 2.0 * sigmoid(2.0 * f.pred)
                                 : -2.0 * sigmoid(-2.0 * f.pred);
  // sech^2 via cosh so saturated arguments give an exact 0.
  const double c = std::cosh(f.argument);
  const double sech2 = 1.0 / (c * c);
  const double dpred_dafter = f.scale * cfg.int_max * sech2;

  FlatInputs g{};
  g[0] = -dloss_dpred * dpred_dafter;
  g[1] = dloss_dpred * dpred_dafter;
  for (std::size_t i = 0; i < kUnitCount; ++i) {
    g[2 + i] = dloss_dpred * kBucketScale[i] * f.tanh_term;
    g[2 + kUnitCount + i] = dloss_dpred * kBucketScale[i];
  }
  return g;
}

double end_loss(const StartOrderProbs& p, const DistanceDist& d,
                const DurationDist& v, Relation gold, const SymConfig& cfg) {
  return end_loss_flat(flatten(p, d, v), gold, cfg);
}

FlatInputs end_loss_grad(const StartOrderProbs& p, const DistanceDist& d,
                         const DurationDist& v, Relation gold,
                         const SymConfig& cfg) {
  return end_loss_grad_flat(flatten(p, d, v), gold, cfg);
}

Prediction predict(const format::ParsedHypothesis& hypothesis,
                   std::string_view premise, Predictor& predictor,
                   const SymConfig& cfg) {
  const std::string& a = hypothesis.event_a.text;
  const std::string& b = hypothesis.event_b.text;
  Prediction out;
  Predictor::DistAnswer answer;
  try {
    answer = predictor.query_dist(a, b, premise);
  } catch (const PredictorError& e) {
    throw PredictorError("dist query ('" + a + "' vs '" + b +
                         "'): " + e.what());
  }
  out.start = answer.start;
  out.dist = dist_value(answer.start, answer.distance, cfg);

  if (hypothesis.comparator == Comparator::kStart) {
    out.predicted = answer.start.before >= answer.start.after
                        ? Relation::kBefore
                        : Relation::kAfter;
  } else {
    DurationDist v;
    try {
      v = predictor.query_dur(a);
    } catch (const PredictorError& e) {
      throw PredictorError("dur query ('" + a + "'): " + e.what());
    }
    out.dur = dur_value(v);
    out.predicted = infer_end_label(out.dist, out.dur);
  }
  out.label = out.predicted == hypothesis.relation ? Label::kEntailment
                                                   : Label::kContradiction;
  return out;
}

}  // namespace tempora::engine

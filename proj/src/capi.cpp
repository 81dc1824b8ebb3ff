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

#include "tempora/tempora.h"

#include <chrono>
#include <cstdio>
#include <exception>
#include <memory>
#include <mutex>
#include <new>
#include <span>
#include <sstream>
#include <string>

#include "core.hpp"
#include "eval.hpp"
#include "extract.hpp"
#include "format.hpp"
#include "jsonl.hpp"
#include "predictor.hpp"
#include "engine.hpp"

struct tempora_predictor {
  std::unique_ptr<tempora::engine::Predictor> impl;
};

struct tempora_report {
  tempora::eval::MetricsReport report;
  std::string json;
  std::string table;
};

namespace {

using namespace tempora;

thread_local std::string g_last_error;

std::mutex g_log_mu;
tempora_log_fn g_log_fn = nullptr;
void* g_log_user = nullptr;

void log_message(std::string_view msg) {
  std::lock_guard lock(g_log_mu);
  const std::string text(msg);
  if (g_log_fn) {
    g_log_fn(g_log_user, text.c_str());
  } else {
    std::fprintf(stderr, "tempora: %s\n", text.c_str());
  }
}

const LogFn& logger() {
  static const LogFn fn = [](std::string_view m) { log_message(m); };
  return fn;
}

tempora_status fail(tempora_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
tempora_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return TEMPORA_OK;
  } catch (const IoError& e) {
    return fail(TEMPORA_ERR_IO, e.what());
  } catch (const DataError& e) {
    return fail(TEMPORA_ERR_DATA, e.what());
  } catch (const PredictorError& e) {
    return fail(TEMPORA_ERR_PREDICTOR, e.what());
  } catch (const std::domain_error& e) {
    return fail(TEMPORA_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TEMPORA_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(TEMPORA_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TEMPORA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TEMPORA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TEMPORA_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

engine::SymConfig config_for(double int_max) {
  engine::SymConfig cfg;
  if (int_max > 0.0) cfg.int_max = int_max;
  engine::validate(cfg);
  return cfg;
}

Relation relation_arg(int r) {
  require(r == TEMPORA_BEFORE || r == TEMPORA_AFTER,
          "relation must be TEMPORA_BEFORE or TEMPORA_AFTER");
  return r == TEMPORA_BEFORE ? Relation::kBefore : Relation::kAfter;
}

engine::FlatInputs raw_inputs(const double p[2], const double d[7],
                               const double v[7]) {
  require(p && d && v, "probability arrays must not be null");
  engine::FlatInputs x{};
  x[0] = p[0];
  x[1] = p[1];
  for (std::size_t i = 0; i < kUnitCount; ++i) {
    x[2 + i] = d[i];
    x[2 + kUnitCount + i] = v[i];
  }
  return x;
}

}  // namespace

extern "C" {

const char* tempora_version(void) { return "0.1.0"; }

const char* tempora_status_string(tempora_status status) {
  switch (status) {
    case TEMPORA_OK: return "ok";
    case TEMPORA_ERR_ARGUMENT: return "invalid argument";
    case TEMPORA_ERR_IO: return "i/o error";
    case TEMPORA_ERR_DATA: return "data error";
    case TEMPORA_ERR_PREDICTOR: return "predictor error";
    case TEMPORA_ERR_DOMAIN: return "domain error";
    case TEMPORA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tempora_last_error(void) { return g_last_error.c_str(); }

void tempora_set_log_callback(tempora_log_fn fn, void* user_data) {
  std::lock_guard lock(g_log_mu);
  g_log_fn = fn;
  g_log_user = user_data;
}

tempora_status tempora_bucket_of_seconds(double seconds, int* unit_out) {
  return guarded([&] {
    require(unit_out != nullptr, "unit_out must not be null");
    *unit_out = static_cast<int>(unit_index(bucket_of_seconds(seconds)));
  });
}

const char* tempora_unit_name(int unit) {
  if (unit < 0 || unit >= TEMPORA_UNIT_COUNT) return nullptr;
  return unit_name(static_cast<TemporalUnit>(unit)).data();
}

const char* tempora_unit_token(int unit) {
  static const std::array<std::string, kUnitCount> kTokens = [] {
    std::array<std::string, kUnitCount> t;
    for (std::size_t i = 0; i < kUnitCount; ++i) {
      t[i] = unit_token(static_cast<TemporalUnit>(i));
    }
    return t;
  }();
  if (unit < 0 || unit >= TEMPORA_UNIT_COUNT) return nullptr;
  return kTokens[static_cast<std::size_t>(unit)].c_str();
}

int tempora_parse_unit_token(const char* token) {
  if (!token) return -1;
  auto u = parse_unit_token(token);
  return u ? static_cast<int>(unit_index(*u)) : -1;
}

tempora_status tempora_dist_value(const double p[2], const double d[7],
                                  double int_max, double* out) {
  return guarded([&] {
    require(p && d && out, "null pointer argument");
    auto start = engine::make_start_order(p[0], p[1]);
    auto dist = engine::make_distance(std::span<const double>(d, 7));
    *out = engine::dist_value(start, dist, config_for(int_max));
  });
}

tempora_status tempora_dur_value(const double v[7], double* out) {
  return guarded([&] {
    require(v && out, "null pointer argument");
    *out = engine::dur_value(
        engine::make_duration(std::span<const double>(v, 7)));
  });
}

tempora_status tempora_infer_end_label(double dist, double dur,
                                       int* relation_out) {
  return guarded([&] {
    require(relation_out != nullptr, "relation_out must not be null");
    *relation_out = engine::infer_end_label(dist, dur) == Relation::kBefore
                        ? TEMPORA_BEFORE
                        : TEMPORA_AFTER;
  });
}

tempora_status tempora_end_loss(const double p[2], const double d[7],
                                const double v[7], int gold, double int_max,
                                double* loss_out) {
  return guarded([&] {
    require(loss_out != nullptr, "loss_out must not be null");
    *loss_out = engine::end_loss_flat(raw_inputs(p, d, v), relation_arg(gold),
                                       config_for(int_max));
  });
}

tempora_status tempora_end_loss_grad(const double p[2], const double d[7],
                                     const double v[7], int gold,
                                     double int_max, double grad_out[16]) {
  return guarded([&] {
    require(grad_out != nullptr, "grad_out must not be null");
    auto g = engine::end_loss_grad_flat(raw_inputs(p, d, v),
                                         relation_arg(gold),
                                         config_for(int_max));
    std::copy(g.begin(), g.end(), grad_out);
  });
}

tempora_status tempora_predictor_open(const char* spec,
                                      tempora_predictor** out) {
  return guarded([&] {
    require(spec && out, "null pointer argument");
    *out = nullptr;
    auto handle = std::make_unique<tempora_predictor>();
    handle->impl = predictor::make_predictor(spec);
    *out = handle.release();
  });
}

void tempora_predictor_close(tempora_predictor* predictor) {
  delete predictor;
}

tempora_status tempora_predictor_query_dist(tempora_predictor* predictor,
                                            const char* event_a,
                                            const char* event_b,
                                            const char* context,
                                            double p_out[2],
                                            double d_out[7]) {
  return guarded([&] {
    require(predictor && event_a && event_b && context && p_out && d_out,
            "null pointer argument");
    auto answer = predictor->impl->query_dist(event_a, event_b, context);
    p_out[0] = answer.start.before;
    p_out[1] = answer.start.after;
    std::copy(answer.distance.d.begin(), answer.distance.d.end(), d_out);
  });
}

tempora_status tempora_predictor_query_dur(tempora_predictor* predictor,
                                           const char* event, double v_out[7]) {
  return guarded([&] {
    require(predictor && event && v_out, "null pointer argument");
    auto v = predictor->impl->query_dur(event);
    std::copy(v.v.begin(), v.v.end(), v_out);
  });
}

tempora_status tempora_predictor_ping(tempora_predictor* predictor,
                                      double* dist_ms_out,
                                      double* dur_ms_out) {
  return guarded([&] {
    require(predictor && dist_ms_out && dur_ms_out, "null pointer argument");
    using clock = std::chrono::steady_clock;
    using ms = std::chrono::duration<double, std::milli>;
    auto t0 = clock::now();
    predictor->impl->query_dist("I woke up", "I ate breakfast",
                                "I woke up. I ate breakfast.");
    auto t1 = clock::now();
    predictor->impl->query_dur("ate breakfast");
    auto t2 = clock::now();
    *dist_ms_out = ms(t1 - t0).count();
    *dur_ms_out = ms(t2 - t1).count();
  });
}

tempora_status tempora_predict_hypothesis(tempora_predictor* predictor,
                                          const char* premise,
                                          const char* hypothesis,
                                          double int_max, int* label_out) {
  return guarded([&] {
    require(predictor && premise && hypothesis && label_out,
            "null pointer argument");
    auto h = format::parse_hypothesis(hypothesis);
    auto p = engine::predict(h, premise, *predictor->impl,
                              config_for(int_max));
    *label_out = p.label == Label::kEntailment ? TEMPORA_ENTAILMENT
                                               : TEMPORA_CONTRADICTION;
  });
}

tempora_status tempora_extract_file(const tempora_extract_options* options,
                                    tempora_extract_stats* stats_out) {
  return guarded([&] {
    require(options && options->corpus_path && options->out_path,
            "extract options need corpus_path and out_path");
    extract::ExtractOptions opts;
    switch (options->mode) {
      case TEMPORA_EXTRACT_WITHIN: opts.mode = extract::Mode::kWithin; break;
      case TEMPORA_EXTRACT_CROSS: opts.mode = extract::Mode::kCross; break;
      case TEMPORA_EXTRACT_BOTH: opts.mode = extract::Mode::kBoth; break;
      default: throw std::invalid_argument("unknown extraction mode");
    }
    opts.strict = options->strict != 0;
    opts.workers = options->workers == 0 ? 1 : options->workers;

    auto in = open_input(options->corpus_path);
    AtomicFileWriter out(options->out_path);
    extract::ExtractStats stats;
    if (options->plain_text) {
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      std::string doc_id =
          std::filesystem::path(options->corpus_path).stem().string();
      std::istringstream corpus(extract::document_to_json(
                                    extract::fallback_annotate(text, doc_id)) +
                                "\n");
      stats = extract::run_extraction(corpus, out.stream(), opts, logger());
    } else {
      stats = extract::run_extraction(in, out.stream(), opts, logger());
    }
    out.commit();
    if (stats_out) {
      *stats_out = {stats.documents, stats.record_errors, stats.within_pairs,
                    stats.cross_pairs};
    }
  });
}

tempora_status tempora_annotate_file(const char* text_path, const char* doc_id,
                                     const char* out_path) {
  return guarded([&] {
    require(text_path && out_path, "null pointer argument");
    auto in = open_input(text_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    std::string id = doc_id ? doc_id
                            : std::filesystem::path(text_path).stem().string();
    AtomicFileWriter out(out_path);
    out.stream() << extract::document_to_json(
                        extract::fallback_annotate(text, id))
                 << '\n';
    out.commit();
  });
}

tempora_status tempora_format_pretraining_file(const char* in_path,
                                               const char* out_path,
                                               uint64_t seed, int strict,
                                               tempora_format_stats* stats_out) {
  return guarded([&] {
    require(in_path && out_path, "null pointer argument");
    auto in = open_input(in_path);
    AtomicFileWriter out(out_path);
    auto stats = format::format_pretraining_stream(in, out.stream(), seed,
                                                   strict != 0, logger());
    out.commit();
    if (stats_out) {
      *stats_out = {stats.records, stats.record_errors, stats.negatives};
    }
  });
}

tempora_status tempora_format_duration_file(const char* in_path,
                                            const char* out_path, int strict,
                                            tempora_format_stats* stats_out) {
  return guarded([&] {
    require(in_path && out_path, "null pointer argument");
    auto in = open_input(in_path);
    AtomicFileWriter out(out_path);
    auto stats = format::format_duration_stream(in, out.stream(), strict != 0,
                                                logger());
    out.commit();
    if (stats_out) {
      *stats_out = {stats.records, stats.record_errors, stats.negatives};
    }
  });
}

tempora_status tempora_predict_file(tempora_predictor* predictor,
                                    const char* dataset_path,
                                    const char* out_path, double int_max,
                                    int strict,
                                    tempora_predict_stats* stats_out) {
  return guarded([&] {
    require(predictor && dataset_path && out_path, "null pointer argument");
    auto cfg = config_for(int_max);
    auto in = open_input(dataset_path);
    AtomicFileWriter out(out_path);
    auto stats = eval::predict_stream(in, out.stream(), *predictor->impl, cfg,
                                      strict != 0, logger());
    out.commit();
    if (stats_out) {
      *stats_out = {stats.instances, stats.record_errors, stats.entailments};
    }
  });
}

tempora_status tempora_split_file(const char* dataset_path,
                                  const char* train_path, const char* test_path,
                                  uint64_t seed, double ratio, int strict,
                                  tempora_split_stats* stats_out) {
  return guarded([&] {
    require(dataset_path && train_path && test_path, "null pointer argument");
    require(ratio >= 0.0 && ratio <= 1.0, "ratio must be within [0, 1]");
    auto in = open_input(dataset_path);
    AtomicFileWriter train(train_path);
    AtomicFileWriter test(test_path);
    auto stats = eval::split_stream(in, train.stream(), test.stream(), seed,
                                    ratio, strict != 0, logger());
    train.commit();
    test.commit();
    if (stats_out) {
      *stats_out = {stats.train_stories, stats.test_stories,
                    stats.train_instances, stats.test_instances,
                    stats.record_errors};
    }
  });
}

tempora_status tempora_evaluate_files(const char* predictions_path,
                                      const char* gold_path,
                                      const char* difficulty, int strict,
                                      tempora_report** out) {
  return guarded([&] {
    require(predictions_path && gold_path && out, "null pointer argument");
    *out = nullptr;
    eval::EvalOptions opts;
    opts.strict = strict != 0;
    if (difficulty) {
      opts.only = eval::parse_difficulty(difficulty);
      require(opts.only.has_value(), "difficulty must be easy or hard");
    }
    auto preds = open_input(predictions_path);
    auto gold = open_input(gold_path);
    auto handle = std::make_unique<tempora_report>();
    handle->report = eval::evaluate(preds, gold, opts, logger());
    handle->json = eval::report_to_json(handle->report);
    handle->table = eval::report_table(handle->report);
    *out = handle.release();
  });
}

void tempora_report_free(tempora_report* report) { delete report; }

int tempora_report_metric(const tempora_report* report, tempora_metric metric,
                          double* value_out) {
  if (!report) return 0;
  std::optional<double> v;
  switch (metric) {
    case TEMPORA_METRIC_START: v = report->report.start_accuracy(); break;
    case TEMPORA_METRIC_END: v = report->report.end_accuracy(); break;
    case TEMPORA_METRIC_ALL: v = report->report.all_accuracy(); break;
    case TEMPORA_METRIC_STORY_EM: v = report->report.story_exact_match(); break;
  }
  if (!v) return 0;
  if (value_out) *value_out = *v;
  return 1;
}

const char* tempora_report_json(const tempora_report* report) {
  return report ? report->json.c_str() : "";
}

const char* tempora_report_table(const tempora_report* report) {
  return report ? report->table.c_str() : "";
}

}  // extern "C"

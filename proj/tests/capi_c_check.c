/*
 * Copyright 2026 The Tempora Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Compiles the public header as C and makes a few calls through it. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include <tempora/tempora.h>

int main(void) {
  int unit = -1;
  double p[2] = {0.5, 0.5};
  double d[7] = {0, 0, 0, 0, 0, 0, 1};
  double v[7] = {1, 0, 0, 0, 0, 0, 0};
  double dist = 1.0;
  double grad[TEMPORA_GRADIENT_SIZE];
  tempora_predictor* pred = NULL;
  int label = -1;

  if (tempora_bucket_of_seconds(7200.0, &unit) != TEMPORA_OK || unit != 1) {
    fprintf(stderr, "bucket: %s\n", tempora_last_error());
    return 1;
  }
  if (strcmp(tempora_unit_token(3), "[extra_id_3]") != 0) return 1;
  if (tempora_dist_value(p, d, 0, &dist) != TEMPORA_OK || dist != 0.0) {
    return 1;
  }
  if (tempora_end_loss_grad(p, d, v, TEMPORA_BEFORE, 0, grad) != TEMPORA_OK ||
      !isfinite(grad[0])) {
    return 1;
  }
  if (tempora_predictor_open("baseline", &pred) != TEMPORA_OK) return 1;
  if (tempora_predict_hypothesis(pred, "He ate. He slept.",
                                 "he ate starts before he slept", 0,
                                 &label) != TEMPORA_OK ||
      label != TEMPORA_ENTAILMENT) {
    tempora_predictor_close(pred);
    return 1;
  }
  tempora_predictor_close(pred);
  puts("ok");
  return 0;
}

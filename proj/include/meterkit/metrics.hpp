/*
 * Copyright 2026 The meterkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "meterkit/error.hpp"

namespace meterkit {

struct Evaluation {
  double overall_accuracy = 0.0;
  std::vector<double> per_class_accuracy;  // recall; NaN for classes absent from the set
  std::vector<std::size_t> class_counts;
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
  std::size_t total = 0;
  std::size_t correct = 0;
};

inline Evaluation evaluate_predictions(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                                       std::size_t classes) {
  if (truth.size() != predicted.size()) throw Error("truth and prediction counts differ");
  if (truth.empty()) throw EmptySet();
  Evaluation e;
  e.total = truth.size();
  e.class_counts.assign(classes, 0);
  e.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= classes || predicted[i] >= classes) throw LabelOutOfRange(std::max(truth[i], predicted[i]), classes);
    ++e.confusion[truth[i]][predicted[i]];
    ++e.class_counts[truth[i]];
    if (truth[i] == predicted[i]) ++e.correct;
  }
  e.overall_accuracy = static_cast<double>(e.correct) / static_cast<double>(e.total);
  e.per_class_accuracy.resize(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    e.per_class_accuracy[c] = e.class_counts[c] == 0
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : static_cast<double>(e.confusion[c][c]) / static_cast<double>(e.class_counts[c]);
  }
  return e;
}

}  // namespace meterkit

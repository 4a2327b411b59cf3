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

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "meterkit/error.hpp"

namespace meterkit::rnn {

// Max-subtracted softmax.
inline Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double m = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - m).exp().matrix();
  return e / e.sum();
}

inline double log_softmax_at(const Eigen::VectorXd& logits, std::size_t k) {
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  return logits[static_cast<Eigen::Index>(k)] - lse;
}

// Inverse-frequency class weights, normalized to sum to one:
//   w_c = (1/n_c) / sum_c' (1/n_c')
inline Eigen::VectorXd class_weights(std::span<const std::size_t> counts) {
  if (counts.empty()) throw NoClasses();
  Eigen::VectorXd w(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) throw EmptyClass(c);
    w[static_cast<Eigen::Index>(c)] = 1.0 / static_cast<double>(counts[c]);
  }
  return w / w.sum();
}

// -w_label * log softmax(logits)[label]; w = 1 without weights.
inline double weighted_cross_entropy(const Eigen::VectorXd& logits, std::size_t label,
                                     const std::optional<Eigen::VectorXd>& weights = std::nullopt) {
  const auto classes = static_cast<std::size_t>(logits.size());
  if (label >= classes) throw LabelOutOfRange(label, classes);
  const double w = weights ? (*weights)[static_cast<Eigen::Index>(label)] : 1.0;
  return -w * log_softmax_at(logits, label);
}

// d loss / d logits = w_label * (softmax - onehot(label))
inline Eigen::VectorXd weighted_cross_entropy_grad(const Eigen::VectorXd& logits, std::size_t label,
                                                   const std::optional<Eigen::VectorXd>& weights = std::nullopt) {
  const auto classes = static_cast<std::size_t>(logits.size());
  if (label >= classes) throw LabelOutOfRange(label, classes);
  const double w = weights ? (*weights)[static_cast<Eigen::Index>(label)] : 1.0;
  Eigen::VectorXd g = softmax(logits);
  g[static_cast<Eigen::Index>(label)] -= 1.0;
  return w * g;
}

}  // namespace meterkit::rnn

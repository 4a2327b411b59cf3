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

// Mini-batch training loop and evaluation.
//
// Per-example forward/backward passes inside a batch may run on several
// threads; each example writes its own gradient buffer and the buffers are
// summed in example order, so results do not depend on the thread count.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "meterkit/error.hpp"
#include "meterkit/metrics.hpp"
#include "meterkit/random.hpp"
#include "meterkit/rnn/adam.hpp"
#include "meterkit/rnn/loss.hpp"
#include "meterkit/rnn/stack.hpp"

namespace meterkit::rnn {

struct Example {
  MatrixXd input;  // n x p encoded verse
  std::size_t label = 0;
};

struct TrainConfig {
  std::size_t epochs = 10;
  std::size_t batch_size = 64;
  AdamConfig adam;
  double dropout = 0.2;
  double validation_fraction = 0.1;
  double test_fraction = 0.1;
  std::uint64_t seed = 42;
  bool use_weights = false;
  double clip_norm = 0.0;  // global gradient-norm clip; 0 disables
  std::size_t threads = 1;

  void validate() const {
    if (batch_size == 0) throw ConfigError("batch size must be positive");
    if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must be in [0, 1)");
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0) ||
        !(test_fraction > 0.0 && test_fraction < 1.0) || validation_fraction + test_fraction >= 1.0)
      throw ConfigError("validation and test fractions must lie in (0, 1) and sum below 1");
    if (!(adam.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
    if (clip_norm < 0.0) throw ConfigError("clip norm must be non-negative");
  }
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double validation_accuracy = 0.0;  // NaN without a validation set

  friend bool operator==(const EpochRecord& a, const EpochRecord& b) {
    const auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
    return a.epoch == b.epoch && same(a.train_loss, b.train_loss) &&
           same(a.validation_accuracy, b.validation_accuracy);
  }
};

struct LearningCurve {
  std::vector<EpochRecord> records;

  friend bool operator==(const LearningCurve&, const LearningCurve&) = default;
};

// epoch,train_loss,val_accuracy with 17 significant digits.
inline void write_curve_csv(std::ostream& os, const LearningCurve& curve) {
  const auto old_precision = os.precision(17);
  os << "epoch,train_loss,val_accuracy\n";
  for (const EpochRecord& r : curve.records) {
    os << r.epoch << ',' << r.train_loss << ',';
    if (std::isnan(r.validation_accuracy)) {
      os << "nan";
    } else {
      os << r.validation_accuracy;
    }
    os << '\n';
  }
  os.precision(old_precision);
}

inline std::size_t argmax(const VectorXd& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return static_cast<std::size_t>(best);
}

inline std::size_t predict(const RecurrentStack& stack, const MatrixXd& input) {
  return argmax(logits(stack, input));
}

inline std::vector<std::size_t> predict_all(const RecurrentStack& stack, const std::vector<Example>& set,
                                            std::size_t threads = 1) {
  std::vector<std::size_t> out(set.size());
  const auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < set.size(); i += stride) out[i] = predict(stack, set[i].input);
  };
  threads = std::max<std::size_t>(1, std::min(threads, set.size()));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  return out;
}

inline Evaluation evaluate(const RecurrentStack& stack, const std::vector<Example>& set, std::size_t threads = 1) {
  if (set.empty()) throw EmptySet();
  std::vector<std::size_t> truth;
  truth.reserve(set.size());
  for (const Example& e : set) truth.push_back(e.label);
  const auto predicted = predict_all(stack, set, threads);
  return evaluate_predictions(truth, predicted, stack.config.classes);
}

// Loss and parameter gradient of one example.
inline double loss_and_gradient(const RecurrentStack& stack, const Example& ex,
                                const std::optional<VectorXd>& weights, ForwardMode mode, Parameters& grads) {
  const ForwardResult fr = forward_sequence(ex.input, stack, mode);
  const double loss = weighted_cross_entropy(fr.logits, ex.label, weights);
  grads = backward(stack, fr.cache, weighted_cross_entropy_grad(fr.logits, ex.label, weights));
  return loss;
}

inline std::vector<std::size_t> label_counts(const std::vector<Example>& set, std::size_t classes) {
  std::vector<std::size_t> counts(classes, 0);
  for (const Example& e : set) {
    if (e.label >= classes) throw LabelOutOfRange(e.label, classes);
    ++counts[e.label];
  }
  return counts;
}

struct TrainResult {
  RecurrentStack stack;
  LearningCurve curve;
};

// Called after each epoch; returning true ends training early.
using EpochHook = std::function<bool(const EpochRecord&, const RecurrentStack&)>;

inline TrainResult train(const std::vector<Example>& train_set, const std::vector<Example>& validation_set,
                         StackConfig stack_config, const TrainConfig& cfg, const EpochHook& on_epoch = {}) {
  cfg.validate();
  stack_config.dropout = cfg.dropout;
  TrainResult result{initialize(stack_config, mix_seed(cfg.seed, 0)), {}};
  if (cfg.epochs == 0) return result;
  if (train_set.empty()) throw EmptySet();

  RecurrentStack& stack = result.stack;
  std::optional<VectorXd> weights;
  if (cfg.use_weights) {
    const auto counts = label_counts(train_set, stack_config.classes);
    weights = class_weights(counts);
  } else {
    label_counts(train_set, stack_config.classes);
  }

  AdamState adam = AdamState::for_stack(stack);
  Rng shuffler(mix_seed(cfg.seed, 1));
  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  const std::size_t batch_cap = std::min(cfg.batch_size, train_set.size());
  std::vector<Parameters> buffers(batch_cap, Parameters::zeros(stack_config));
  std::vector<double> losses(batch_cap, 0.0);
  Parameters total = Parameters::zeros(stack_config);
  const std::size_t threads = std::max<std::size_t>(1, cfg.threads);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffler.shuffle(order);
    const std::uint64_t epoch_seed = mix_seed(cfg.seed, 1 + epoch);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t count = std::min(cfg.batch_size, order.size() - start);
      const auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t k = begin; k < count; k += stride) {
          const std::size_t position = start + k;
          const ForwardMode mode = ForwardMode::training(mix_seed(epoch_seed, position));
          losses[k] = loss_and_gradient(stack, train_set[order[position]], weights, mode, buffers[k]);
        }
      };
      const std::size_t workers = std::min(threads, count);
      if (workers <= 1) {
        work(0, 1);
      } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
        for (auto& th : pool) th.join();
      }
      set_zero(total);
      double batch_loss = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        add_into(total, buffers[k]);
        batch_loss += losses[k];
      }
      loss_sum += batch_loss;
      scale(total, 1.0 / static_cast<double>(count));
      if (cfg.clip_norm > 0.0) {
        const double norm = std::sqrt(squared_norm(total));
        if (norm > cfg.clip_norm) scale(total, cfg.clip_norm / norm);
      }
      adam_step(stack, total, adam, cfg.adam);
    }
    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(order.size());
    record.validation_accuracy = validation_set.empty()
                                     ? std::numeric_limits<double>::quiet_NaN()
                                     : evaluate(stack, validation_set, threads).overall_accuracy;
    result.curve.records.push_back(record);
    if (on_epoch && on_epoch(record, stack)) break;
  }
  return result;
}

}  // namespace meterkit::rnn

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

// Finite-difference gradient check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "meterkit/error.hpp"
#include "meterkit/random.hpp"
#include "meterkit/rnn/loss.hpp"
#include "meterkit/rnn/stack.hpp"
#include "meterkit/rnn/train.hpp"

namespace meterkit::rnn {

struct GradcheckOptions {
  double epsilon = 1e-5;
  // Denominator floor for the relative error, so entries whose true
  // gradient is ~0 are judged by absolute error instead.
  double floor = 1e-6;
  // Entries checked per tensor; 0 checks every entry.
  std::size_t max_entries_per_tensor = 0;
  std::optional<VectorXd> class_weights;
  ForwardMode mode = ForwardMode::eval();
};

struct TensorCheck {
  std::string name;
  std::size_t checked = 0;
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
};

struct GradcheckReport {
  std::vector<TensorCheck> tensors;

  double max_relative_error() const {
    double m = 0.0;
    for (const TensorCheck& t : tensors) m = std::max(m, t.max_relative_error);
    return m;
  }
};

// |a - n| / max(|a|, |n|, floor)
inline double relative_error(double analytic, double numeric, double floor) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

// Summed loss of a set of examples with a fixed forward mode.
inline double total_loss(const RecurrentStack& stack, const std::vector<Example>& set, const GradcheckOptions& opt) {
  double s = 0.0;
  for (const Example& e : set)
    s += weighted_cross_entropy(forward_sequence(e.input, stack, opt.mode).logits, e.label, opt.class_weights);
  return s;
}

inline Parameters total_gradient(const RecurrentStack& stack, const std::vector<Example>& set,
                                 const GradcheckOptions& opt) {
  Parameters g = Parameters::zeros(stack.config);
  Parameters one;
  for (const Example& e : set) {
    loss_and_gradient(stack, e, opt.class_weights, opt.mode, one);
    add_into(g, one);
  }
  return g;
}

// `analytic_hook` may alter the analytic gradient before comparison; used
// to confirm the check detects a broken backward pass.
inline GradcheckReport gradcheck(RecurrentStack stack, const std::vector<Example>& set,
                                 const GradcheckOptions& opt = {},
                                 const std::function<void(Parameters&)>& analytic_hook = {}) {
  if (set.empty()) throw EmptySet();
  Parameters analytic = total_gradient(stack, set, opt);
  if (analytic_hook) analytic_hook(analytic);
  const auto a_views = tensors(std::as_const(analytic));
  auto p_views = tensors(stack.params);
  GradcheckReport report;
  for (std::size_t t = 0; t < p_views.size(); ++t) {
    TensorCheck check{p_views[t].name};
    const Index n = p_views[t].size();
    const Index stride =
        opt.max_entries_per_tensor == 0 || static_cast<std::size_t>(n) <= opt.max_entries_per_tensor
            ? 1
            : (n + static_cast<Index>(opt.max_entries_per_tensor) - 1) / static_cast<Index>(opt.max_entries_per_tensor);
    for (Index k = 0; k < n; k += stride) {
      double& w = p_views[t].data[k];
      const double saved = w;
      w = saved + opt.epsilon;
      stack.touch();
      const double up = total_loss(stack, set, opt);
      w = saved - opt.epsilon;
      stack.touch();
      const double down = total_loss(stack, set, opt);
      w = saved;
      stack.touch();
      const double numeric = (up - down) / (2.0 * opt.epsilon);
      const double a = a_views[t].data[k];
      check.max_relative_error = std::max(check.max_relative_error, relative_error(a, numeric, opt.floor));
      check.max_absolute_error = std::max(check.max_absolute_error, std::abs(a - numeric));
      ++check.checked;
    }
    report.tensors.push_back(std::move(check));
  }
  return report;
}

struct GradcheckProblem {
  RecurrentStack stack;
  std::vector<Example> examples;
  GradcheckOptions options;
};

// Seeded small problem: hidden 2..8, input 2..6, classes 2..4, three
// sequences of length 1..6 with entries in [-1, 1], random class weights,
// and (for stacked configurations) dropout 0.3 with a fixed training mask.
inline GradcheckProblem random_gradcheck_problem(CellKind cell, Direction direction, std::size_t layers,
                                                 std::uint64_t seed) {
  Rng rng(seed);
  StackConfig cfg;
  cfg.cell = cell;
  cfg.direction = direction;
  cfg.layers = layers;
  cfg.hidden_size = 2 + rng.below(7);
  cfg.input_size = 2 + rng.below(5);
  cfg.classes = 2 + rng.below(3);
  cfg.dropout = layers > 1 ? 0.3 : 0.0;
  GradcheckProblem problem{initialize(cfg, mix_seed(seed, 1)), {}, {}};
  for (int e = 0; e < 3; ++e) {
    const auto length = static_cast<Index>(1 + rng.below(6));
    MatrixXd x(static_cast<Index>(cfg.input_size), length);
    for (Index c = 0; c < x.cols(); ++c)
      for (Index r = 0; r < x.rows(); ++r) x(r, c) = rng.uniform(-1.0, 1.0);
    problem.examples.push_back({std::move(x), static_cast<std::size_t>(rng.below(cfg.classes))});
  }
  std::vector<std::size_t> counts(cfg.classes);
  for (auto& n : counts) n = 1 + rng.below(20);
  problem.options.class_weights = class_weights(counts);
  problem.options.mode = ForwardMode::training(mix_seed(seed, 2));
  return problem;
}

}  // namespace meterkit::rnn

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
#include <cstdint>

#include "meterkit/error.hpp"
#include "meterkit/rnn/stack.hpp"

namespace meterkit::rnn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  Parameters m;
  Parameters v;
  std::uint64_t step = 0;

  static AdamState for_stack(const RecurrentStack& stack) {
    return {Parameters::zeros(stack.config), Parameters::zeros(stack.config), 0};
  }
};

// Bias-corrected Adam update, in place.
inline void adam_step(RecurrentStack& stack, const Parameters& grads, AdamState& state, const AdamConfig& cfg) {
  if (!same_shapes(stack.params, grads) || !same_shapes(stack.params, state.m) ||
      !same_shapes(stack.params, state.v))
    throw ShapeMismatch("Adam step: parameter, gradient and moment shapes differ");
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  auto p = tensors(stack.params);
  const auto g = tensors(grads);
  auto m = tensors(state.m);
  auto v = tensors(state.v);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (Index k = 0; k < p[i].size(); ++k) {
      const double gk = g[i].data[k];
      m[i].data[k] = cfg.beta1 * m[i].data[k] + (1.0 - cfg.beta1) * gk;
      v[i].data[k] = cfg.beta2 * v[i].data[k] + (1.0 - cfg.beta2) * gk * gk;
      const double m_hat = m[i].data[k] / c1;
      const double v_hat = v[i].data[k] / c2;
      p[i].data[k] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
  }
  stack.touch();
}

}  // namespace meterkit::rnn

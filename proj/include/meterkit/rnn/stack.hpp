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

// Layered (bi)directional recurrent stack with a dense classifier head.
//
// Layer l consumes an (in x p) sequence and emits (dirs*H x p): forward
// states on top, backward states below. Between layers the sequence goes
// through inverted dropout in training mode. The head reads the final state
// of each direction: column p-1 of the forward half, column 0 of the
// backward half.

#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "meterkit/error.hpp"
#include "meterkit/random.hpp"
#include "meterkit/rnn/cells.hpp"

namespace meterkit::rnn {

struct StackConfig {
  CellKind cell = CellKind::Lstm;
  Direction direction = Direction::Uni;
  std::size_t layers = 1;
  std::size_t input_size = 1;
  std::size_t hidden_size = 8;  // per direction
  std::size_t classes = 2;
  double dropout = 0.0;

  std::size_t directions() const { return direction == Direction::Bi ? 2 : 1; }
  std::size_t output_width() const { return directions() * hidden_size; }

  void validate() const {
    if (layers == 0) throw ConfigError("stack needs at least one layer");
    if (input_size == 0 || hidden_size == 0) throw ConfigError("input and hidden sizes must be positive");
    if (classes == 0) throw NoClasses();
    if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must be in [0, 1)");
  }

  friend bool operator==(const StackConfig&, const StackConfig&) = default;
};

struct LayerParams {
  std::vector<CellParams> directions;  // [forward] or [forward, backward]
};

struct Parameters {
  std::vector<LayerParams> layers;
  MatrixXd head_W;  // classes x output_width
  VectorXd head_b;  // classes

  static Parameters zeros(const StackConfig& cfg) {
    Parameters p;
    Index in = static_cast<Index>(cfg.input_size);
    const Index H = static_cast<Index>(cfg.hidden_size);
    for (std::size_t l = 0; l < cfg.layers; ++l) {
      LayerParams layer;
      for (std::size_t d = 0; d < cfg.directions(); ++d)
        layer.directions.push_back(CellParams::zeros(cfg.cell, in, H));
      p.layers.push_back(std::move(layer));
      in = static_cast<Index>(cfg.output_width());
    }
    p.head_W = MatrixXd::Zero(static_cast<Index>(cfg.classes), in);
    p.head_b = VectorXd::Zero(static_cast<Index>(cfg.classes));
    return p;
  }
};

struct TensorView {
  std::string name;
  double* data;
  Index rows;
  Index cols;
  Index size() const { return rows * cols; }
};

struct ConstTensorView {
  std::string name;
  const double* data;
  Index rows;
  Index cols;
  Index size() const { return rows * cols; }
};

namespace detail {

template <typename View, typename P>
std::vector<View> views(P& params) {
  std::vector<View> out;
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    for (std::size_t d = 0; d < params.layers[l].directions.size(); ++d) {
      auto& cell = params.layers[l].directions[d];
      const std::string prefix = "layer" + std::to_string(l) + (d == 0 ? ".fwd." : ".bwd.");
      out.push_back({prefix + "W", cell.W.data(), cell.W.rows(), cell.W.cols()});
      out.push_back({prefix + "U", cell.U.data(), cell.U.rows(), cell.U.cols()});
      out.push_back({prefix + "b", cell.b.data(), cell.b.rows(), 1});
    }
  }
  out.push_back({"head.W", params.head_W.data(), params.head_W.rows(), params.head_W.cols()});
  out.push_back({"head.b", params.head_b.data(), params.head_b.rows(), 1});
  return out;
}

}  // namespace detail

// Every tensor in a fixed order; data is column-major (Eigen storage).
inline std::vector<TensorView> tensors(Parameters& p) { return detail::views<TensorView>(p); }
inline std::vector<ConstTensorView> tensors(const Parameters& p) {
  return detail::views<ConstTensorView>(p);
}

inline bool same_shapes(const Parameters& a, const Parameters& b) {
  const auto ta = tensors(a);
  const auto tb = tensors(b);
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i)
    if (ta[i].rows != tb[i].rows || ta[i].cols != tb[i].cols) return false;
  return true;
}

inline void add_into(Parameters& acc, const Parameters& g) {
  if (!same_shapes(acc, g)) throw ShapeMismatch("gradient shapes differ");
  auto ta = tensors(acc);
  const auto tg = tensors(g);
  for (std::size_t i = 0; i < ta.size(); ++i)
    for (Index k = 0; k < ta[i].size(); ++k) ta[i].data[k] += tg[i].data[k];
}

inline void scale(Parameters& p, double s) {
  for (auto& t : tensors(p))
    for (Index k = 0; k < t.size(); ++k) t.data[k] *= s;
}

inline void set_zero(Parameters& p) {
  for (auto& t : tensors(p)) std::fill(t.data, t.data + t.size(), 0.0);
}

inline double squared_norm(const Parameters& p) {
  double s = 0.0;
  for (const auto& t : tensors(p))
    for (Index k = 0; k < t.size(); ++k) s += t.data[k] * t.data[k];
  return s;
}

inline std::size_t parameter_count(const Parameters& p) {
  std::size_t n = 0;
  for (const auto& t : tensors(p)) n += static_cast<std::size_t>(t.size());
  return n;
}

inline std::uint64_t next_generation() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

struct RecurrentStack {
  StackConfig config;
  Parameters params;
  std::uint64_t generation = next_generation();

  // Call after mutating params in place; invalidates outstanding caches.
  void touch() { generation = next_generation(); }
};

// Uniform in +-1/sqrt(fan_in) per matrix, biases zero, LSTM forget bias +1.
inline RecurrentStack initialize(const StackConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  RecurrentStack stack{cfg, Parameters::zeros(cfg)};
  Rng rng(seed);
  const auto fill = [&rng](MatrixXd& m) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(m.cols()));
    for (Index c = 0; c < m.cols(); ++c)
      for (Index r = 0; r < m.rows(); ++r) m(r, c) = rng.uniform(-bound, bound);
  };
  for (auto& layer : stack.params.layers) {
    for (auto& cell : layer.directions) {
      fill(cell.W);
      fill(cell.U);
      if (cell.kind == CellKind::Lstm) cell.bias(LstmGate::Forget).setOnes();
    }
  }
  fill(stack.params.head_W);
  return stack;
}

struct ForwardMode {
  bool train = false;
  std::uint64_t seed = 0;  // dropout mask stream

  static ForwardMode eval() { return {}; }
  static ForwardMode training(std::uint64_t seed) { return {true, seed}; }
};

struct DirectionCache {
  MatrixXd gates;  // post-activation gate values per step
  MatrixXd h;      // H x p, column t = state after consuming x_t
  MatrixXd c;      // LSTM cell state, H x p
};

struct LayerCache {
  MatrixXd input;  // what the layer consumed (after dropout)
  MatrixXd mask;   // dropout mask applied to the previous layer's output; empty if none
  std::vector<DirectionCache> directions;
  MatrixXd output;
};

struct ForwardCache {
  std::uint64_t generation = 0;
  std::vector<LayerCache> layers;
  VectorXd readout;
  VectorXd logits;
};

namespace detail {

inline DirectionCache run_direction(const CellParams& p, const MatrixXd& X, bool reverse) {
  const Index H = p.hidden();
  const Index T = X.cols();
  DirectionCache dc;
  MatrixXd proj = p.W * X;
  proj.colwise() += p.b;
  dc.gates.resize(p.W.rows(), T);
  dc.h.resize(H, T);
  VectorXd h = VectorXd::Zero(H);
  if (p.kind == CellKind::Lstm) {
    dc.c.resize(H, T);
    VectorXd c = VectorXd::Zero(H);
    VectorXd a(4 * H);
    for (Index s = 0; s < T; ++s) {
      const Index t = reverse ? T - 1 - s : s;
      a.noalias() = proj.col(t);
      a.noalias() += p.U * h;
      auto gates = dc.gates.col(t);
      for (Index k = 0; k < 3 * H; ++k) gates[k] = sigmoid(a[k]);
      for (Index k = 3 * H; k < 4 * H; ++k) gates[k] = std::tanh(a[k]);
      for (Index k = 0; k < H; ++k) {
        c[k] = gates[k] * c[k] + gates[H + k] * gates[3 * H + k];
        h[k] = gates[2 * H + k] * std::tanh(c[k]);
      }
      dc.c.col(t) = c;
      dc.h.col(t) = h;
    }
  } else {
    VectorXd zr(2 * H), rh(H), n(H);
    for (Index s = 0; s < T; ++s) {
      const Index t = reverse ? T - 1 - s : s;
      zr.noalias() = proj.col(t).head(2 * H);
      zr.noalias() += p.U.topRows(2 * H) * h;
      auto gates = dc.gates.col(t);
      for (Index k = 0; k < 2 * H; ++k) gates[k] = sigmoid(zr[k]);
      rh = gates.segment(H, H).cwiseProduct(h);
      n.noalias() = proj.col(t).tail(H);
      n.noalias() += p.U.bottomRows(H) * rh;
      for (Index k = 0; k < H; ++k) {
        gates[2 * H + k] = std::tanh(n[k]);
        h[k] = (1.0 - gates[k]) * h[k] + gates[k] * gates[2 * H + k];
      }
      dc.h.col(t) = h;
    }
  }
  return dc;
}

// Backpropagates dH (gradient w.r.t. every emitted state) through one
// direction. Accumulates parameter gradients into g, returns dX.
inline MatrixXd backprop_direction(const CellParams& p, const MatrixXd& X, const DirectionCache& dc,
                                   const MatrixXd& dH, bool reverse, CellParams& g) {
  const Index H = p.hidden();
  const Index T = X.cols();
  MatrixXd dA(p.W.rows(), T);
  VectorXd dh_next = VectorXd::Zero(H);
  if (p.kind == CellKind::Lstm) {
    VectorXd dc_next = VectorXd::Zero(H);
    VectorXd da(4 * H);
    for (Index s = T - 1; s >= 0; --s) {
      const Index t = reverse ? T - 1 - s : s;
      const bool first = s == 0;
      const Index tp = reverse ? t + 1 : t - 1;
      const auto gates = dc.gates.col(t);
      for (Index k = 0; k < H; ++k) {
        const double f = gates[k], i = gates[H + k], o = gates[2 * H + k], gg = gates[3 * H + k];
        const double c = dc.c(k, t);
        const double c_prev = first ? 0.0 : dc.c(k, tp);
        const double tc = std::tanh(c);
        const double dh = dH(k, t) + dh_next[k];
        const double d_o = dh * tc;
        const double d_c = dc_next[k] + dh * o * (1.0 - tc * tc);
        da[k] = d_c * c_prev * f * (1.0 - f);
        da[H + k] = d_c * gg * i * (1.0 - i);
        da[2 * H + k] = d_o * o * (1.0 - o);
        da[3 * H + k] = d_c * i * (1.0 - gg * gg);
        dc_next[k] = d_c * f;
      }
      dA.col(t) = da;
      if (!first) g.U.noalias() += da * dc.h.col(tp).transpose();
      dh_next.noalias() = p.U.transpose() * da;
    }
  } else {
    VectorXd da(3 * H), dh_prev(H), drh(H), h_prev(H);
    for (Index s = T - 1; s >= 0; --s) {
      const Index t = reverse ? T - 1 - s : s;
      const bool first = s == 0;
      const Index tp = reverse ? t + 1 : t - 1;
      const auto gates = dc.gates.col(t);
      if (first) {
        h_prev.setZero();
      } else {
        h_prev = dc.h.col(tp);
      }
      for (Index k = 0; k < H; ++k) {
        const double z = gates[k], n = gates[2 * H + k];
        const double dh = dH(k, t) + dh_next[k];
        da[k] = dh * (n - h_prev[k]) * z * (1.0 - z);
        da[2 * H + k] = dh * z * (1.0 - n * n);
        dh_prev[k] = dh * (1.0 - z);
      }
      drh.noalias() = p.U.bottomRows(H).transpose() * da.tail(H);
      for (Index k = 0; k < H; ++k) {
        const double r = gates[H + k];
        da[H + k] = drh[k] * h_prev[k] * r * (1.0 - r);
        dh_prev[k] += drh[k] * r;
      }
      if (!first) {
        g.U.topRows(2 * H).noalias() += da.head(2 * H) * h_prev.transpose();
        g.U.bottomRows(H).noalias() +=
            da.tail(H) * gates.segment(H, H).cwiseProduct(h_prev).transpose();
      }
      dh_prev.noalias() += p.U.topRows(2 * H).transpose() * da.head(2 * H);
      dA.col(t) = da;
      dh_next = dh_prev;
    }
  }
  g.W.noalias() += dA * X.transpose();
  g.b += dA.rowwise().sum();
  return p.W.transpose() * dA;
}

}  // namespace detail

struct ForwardResult {
  VectorXd logits;
  ForwardCache cache;
};

inline ForwardResult forward_sequence(const MatrixXd& X, const RecurrentStack& stack, ForwardMode mode) {
  const StackConfig& cfg = stack.config;
  if (X.cols() == 0) throw EmptySequence();
  if (static_cast<std::size_t>(X.rows()) != cfg.input_size)
    throw ShapeMismatch("input height " + std::to_string(X.rows()) + " does not match stack input size " +
                        std::to_string(cfg.input_size));
  const Index T = X.cols();
  const Index H = static_cast<Index>(cfg.hidden_size);
  ForwardResult result;
  ForwardCache& cache = result.cache;
  cache.generation = stack.generation;
  cache.layers.resize(cfg.layers);
  Rng rng(mode.seed);
  for (std::size_t l = 0; l < cfg.layers; ++l) {
    LayerCache& lc = cache.layers[l];
    if (l == 0) {
      lc.input = X;
    } else {
      const MatrixXd& prev = cache.layers[l - 1].output;
      if (mode.train && cfg.dropout > 0.0) {
        const double keep = 1.0 - cfg.dropout;
        lc.mask.resize(prev.rows(), prev.cols());
        for (Index c = 0; c < prev.cols(); ++c)
          for (Index r = 0; r < prev.rows(); ++r) lc.mask(r, c) = rng.bernoulli(keep) ? 1.0 / keep : 0.0;
        lc.input = prev.cwiseProduct(lc.mask);
      } else {
        lc.input = prev;
      }
    }
    const auto& cells = stack.params.layers[l].directions;
    lc.output.resize(static_cast<Index>(cfg.output_width()), T);
    for (std::size_t d = 0; d < cells.size(); ++d) {
      lc.directions.push_back(detail::run_direction(cells[d], lc.input, d == 1));
      lc.output.middleRows(static_cast<Index>(d) * H, H) = lc.directions.back().h;
    }
  }
  const LayerCache& last = cache.layers.back();
  cache.readout.resize(static_cast<Index>(cfg.output_width()));
  cache.readout.head(H) = last.directions[0].h.col(T - 1);
  if (cfg.direction == Direction::Bi) cache.readout.tail(H) = last.directions[1].h.col(0);
  cache.logits = stack.params.head_W * cache.readout + stack.params.head_b;
  result.logits = cache.logits;
  return result;
}

inline VectorXd logits(const RecurrentStack& stack, const MatrixXd& X) {
  return forward_sequence(X, stack, ForwardMode::eval()).logits;
}

inline Parameters backward(const RecurrentStack& stack, const ForwardCache& cache, const VectorXd& dlogits) {
  if (cache.layers.empty() || cache.generation != stack.generation) throw StaleCache();
  const StackConfig& cfg = stack.config;
  if (static_cast<std::size_t>(dlogits.size()) != cfg.classes)
    throw ShapeMismatch("logit gradient has the wrong length");
  Parameters g = Parameters::zeros(cfg);
  g.head_W.noalias() = dlogits * cache.readout.transpose();
  g.head_b = dlogits;
  const VectorXd dreadout = stack.params.head_W.transpose() * dlogits;

  const Index H = static_cast<Index>(cfg.hidden_size);
  const Index T = cache.layers.front().input.cols();
  MatrixXd dOut = MatrixXd::Zero(static_cast<Index>(cfg.output_width()), T);
  dOut.col(T - 1).head(H) = dreadout.head(H);
  if (cfg.direction == Direction::Bi) dOut.col(0).segment(H, H) = dreadout.tail(H);

  for (std::size_t l = cfg.layers; l-- > 0;) {
    const LayerCache& lc = cache.layers[l];
    const auto& cells = stack.params.layers[l].directions;
    MatrixXd dIn = MatrixXd::Zero(lc.input.rows(), T);
    for (std::size_t d = 0; d < cells.size(); ++d) {
      const MatrixXd dH = dOut.middleRows(static_cast<Index>(d) * H, H);
      dIn += detail::backprop_direction(cells[d], lc.input, lc.directions[d], dH, d == 1,
                                        g.layers[l].directions[d]);
    }
    if (l == 0) break;
    dOut = lc.mask.size() > 0 ? MatrixXd(dIn.cwiseProduct(lc.mask)) : dIn;
  }
  return g;
}

}  // namespace meterkit::rnn

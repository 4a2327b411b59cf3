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

// Scalar reference implementation of the recurrent classifier, written with
// plain loops over std::vector and per-gate matrices. Tests compare the
// Eigen implementation against it.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "meterkit/rnn/stack.hpp"

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major

inline double sig(double v) { return 1.0 / (1.0 + std::exp(-v)); }

inline Vec matvec(const Mat& m, const Vec& v) {
  Vec out(m.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  return out;
}

struct Gate {
  Mat W, U;
  Vec b;

  double pre(std::size_t k, const Vec& x, const Vec& h) const {
    double s = b[k];
    for (std::size_t c = 0; c < x.size(); ++c) s += W[k][c] * x[c];
    for (std::size_t c = 0; c < h.size(); ++c) s += U[k][c] * h[c];
    return s;
  }
};

// Gate `g` of a stacked library cell, copied element by element.
inline Gate gate_of(const meterkit::rnn::CellParams& p, std::size_t g) {
  const auto H = static_cast<std::size_t>(p.hidden());
  const auto I = static_cast<std::size_t>(p.input());
  Gate out{Mat(H, Vec(I)), Mat(H, Vec(H)), Vec(H)};
  for (std::size_t k = 0; k < H; ++k) {
    const auto row = static_cast<Eigen::Index>(g * H + k);
    for (std::size_t c = 0; c < I; ++c) out.W[k][c] = p.W(row, static_cast<Eigen::Index>(c));
    for (std::size_t c = 0; c < H; ++c) out.U[k][c] = p.U(row, static_cast<Eigen::Index>(c));
    out.b[k] = p.b[row];
  }
  return out;
}

inline void lstm_step(const meterkit::rnn::CellParams& p, const Vec& x, Vec& h, Vec& c) {
  const Gate f = gate_of(p, 0), i = gate_of(p, 1), o = gate_of(p, 2), g = gate_of(p, 3);
  const std::size_t H = h.size();
  Vec h_new(H), c_new(H);
  for (std::size_t k = 0; k < H; ++k) {
    const double fk = sig(f.pre(k, x, h));
    const double ik = sig(i.pre(k, x, h));
    const double ok = sig(o.pre(k, x, h));
    const double gk = std::tanh(g.pre(k, x, h));
    c_new[k] = fk * c[k] + ik * gk;
    h_new[k] = ok * std::tanh(c_new[k]);
  }
  h = h_new;
  c = c_new;
}

inline void gru_step(const meterkit::rnn::CellParams& p, const Vec& x, Vec& h) {
  const Gate z = gate_of(p, 0), r = gate_of(p, 1), n = gate_of(p, 2);
  const std::size_t H = h.size();
  Vec rh(H);
  for (std::size_t k = 0; k < H; ++k) rh[k] = sig(r.pre(k, x, h)) * h[k];
  Vec h_new(H);
  for (std::size_t k = 0; k < H; ++k) {
    const double zk = sig(z.pre(k, x, h));
    double s = n.b[k];
    for (std::size_t c = 0; c < x.size(); ++c) s += n.W[k][c] * x[c];
    for (std::size_t c = 0; c < H; ++c) s += n.U[k][c] * rh[c];
    h_new[k] = (1.0 - zk) * h[k] + zk * std::tanh(s);
  }
  h = h_new;
}

// Hidden states of one direction over a sequence of columns.
inline std::vector<Vec> run(const meterkit::rnn::CellParams& p, const std::vector<Vec>& xs, bool reverse) {
  const auto H = static_cast<std::size_t>(p.hidden());
  std::vector<Vec> hs(xs.size());
  Vec h(H, 0.0), c(H, 0.0);
  for (std::size_t s = 0; s < xs.size(); ++s) {
    const std::size_t t = reverse ? xs.size() - 1 - s : s;
    if (p.kind == meterkit::rnn::CellKind::Lstm) {
      lstm_step(p, xs[t], h, c);
    } else {
      gru_step(p, xs[t], h);
    }
    hs[t] = h;
  }
  return hs;
}

// Eval-mode logits: each layer concatenates forward and backward states per
// time step; the head reads the forward state at the last step and the
// backward state at the first.
inline Vec logits(const meterkit::rnn::RecurrentStack& stack, const Eigen::MatrixXd& X) {
  std::vector<Vec> seq(static_cast<std::size_t>(X.cols()));
  for (std::size_t t = 0; t < seq.size(); ++t)
    for (Eigen::Index r = 0; r < X.rows(); ++r) seq[t].push_back(X(r, static_cast<Eigen::Index>(t)));
  Vec readout;
  for (const auto& layer : stack.params.layers) {
    const std::vector<Vec> fwd = run(layer.directions[0], seq, false);
    std::vector<Vec> bwd;
    if (layer.directions.size() == 2) bwd = run(layer.directions[1], seq, true);
    for (std::size_t t = 0; t < seq.size(); ++t) {
      seq[t] = fwd[t];
      if (!bwd.empty()) seq[t].insert(seq[t].end(), bwd[t].begin(), bwd[t].end());
    }
    readout = fwd.back();
    if (!bwd.empty()) readout.insert(readout.end(), bwd.front().begin(), bwd.front().end());
  }
  Vec out(static_cast<std::size_t>(stack.params.head_b.size()));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = stack.params.head_b[static_cast<Eigen::Index>(k)];
    for (std::size_t c = 0; c < readout.size(); ++c)
      out[k] += stack.params.head_W(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) * readout[c];
  }
  return out;
}

}  // namespace oracle

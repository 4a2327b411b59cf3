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

// LSTM and GRU cell parameters and single-step forward evaluation.
//
// Gate weights are stored stacked, one row block per gate, so one
// matrix-vector product serves every gate:
//   LSTM rows: [forget; input; output; candidate]   (4H)
//   GRU rows:  [update z; reset r; candidate h~]    (3H)
//
//   LSTM  f = s(Wf x + Uf h + bf)   i = s(Wi x + Ui h + bi)
//         o = s(Wo x + Uo h + bo)   c' = f*c + i*tanh(Wc x + Uc h + bc)
//         h' = o*tanh(c')
//   GRU   z = s(Wz x + Uz h + bz)   r = s(Wr x + Ur h + br)
//         n = tanh(Wh x + Uh (r*h) + bh)
//         h' = (1-z)*h + z*n

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "meterkit/error.hpp"

namespace meterkit::rnn {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class CellKind : std::uint8_t { Lstm, Gru };
enum class Direction : std::uint8_t { Uni, Bi };

inline std::string to_string(CellKind k) { return k == CellKind::Lstm ? "lstm" : "gru"; }
inline std::string to_string(Direction d) { return d == Direction::Uni ? "uni" : "bi"; }

inline CellKind parse_cell_kind(const std::string& s) {
  if (s == "lstm" || s == "LSTM") return CellKind::Lstm;
  if (s == "gru" || s == "GRU") return CellKind::Gru;
  throw ConfigError("unknown cell '" + s + "'");
}

inline Direction parse_direction(const std::string& s) {
  if (s == "uni" || s == "unidirectional") return Direction::Uni;
  if (s == "bi" || s == "bidirectional") return Direction::Bi;
  throw ConfigError("unknown direction '" + s + "'");
}

constexpr Index gate_count(CellKind k) { return k == CellKind::Lstm ? 4 : 3; }

enum class LstmGate : Index { Forget = 0, Input = 1, Output = 2, Candidate = 3 };
enum class GruGate : Index { Update = 0, Reset = 1, Candidate = 2 };

struct CellParams {
  CellKind kind = CellKind::Lstm;
  MatrixXd W;  // gates*H x input
  MatrixXd U;  // gates*H x H
  VectorXd b;  // gates*H

  static CellParams zeros(CellKind kind, Index input, Index hidden) {
    const Index rows = gate_count(kind) * hidden;
    return {kind, MatrixXd::Zero(rows, input), MatrixXd::Zero(rows, hidden), VectorXd::Zero(rows)};
  }

  Index hidden() const { return U.cols(); }
  Index input() const { return W.cols(); }

  // Row block of one gate: W_f = input_weights(LstmGate::Forget), etc.
  template <typename Gate>
  auto input_weights(Gate g) { return W.middleRows(static_cast<Index>(g) * hidden(), hidden()); }
  template <typename Gate>
  auto input_weights(Gate g) const { return W.middleRows(static_cast<Index>(g) * hidden(), hidden()); }
  template <typename Gate>
  auto recurrent_weights(Gate g) { return U.middleRows(static_cast<Index>(g) * hidden(), hidden()); }
  template <typename Gate>
  auto recurrent_weights(Gate g) const { return U.middleRows(static_cast<Index>(g) * hidden(), hidden()); }
  template <typename Gate>
  auto bias(Gate g) { return b.segment(static_cast<Index>(g) * hidden(), hidden()); }
  template <typename Gate>
  auto bias(Gate g) const { return b.segment(static_cast<Index>(g) * hidden(), hidden()); }

  void check_shapes() const {
    const Index rows = gate_count(kind) * hidden();
    if (W.rows() != rows || U.rows() != rows || b.size() != rows || U.cols() != hidden())
      throw ShapeMismatch("cell parameter shapes are inconsistent");
  }
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

template <typename Derived>
VectorXd sigmoid(const Eigen::MatrixBase<Derived>& x) {
  return x.unaryExpr([](double v) { return sigmoid(v); });
}

template <typename Derived>
VectorXd tanh(const Eigen::MatrixBase<Derived>& x) {
  return x.array().tanh().matrix();
}

struct LstmState {
  VectorXd h;
  VectorXd c;
};

inline LstmState lstm_cell_forward(const VectorXd& x, const VectorXd& h_prev, const VectorXd& c_prev,
                                   const CellParams& p) {
  p.check_shapes();
  if (p.kind != CellKind::Lstm) throw ShapeMismatch("LSTM step on non-LSTM parameters");
  const Index H = p.hidden();
  if (x.size() != p.input() || h_prev.size() != H || c_prev.size() != H)
    throw ShapeMismatch("LSTM step input shapes do not match parameters");
  const VectorXd a = p.W * x + p.U * h_prev + p.b;
  const VectorXd f = sigmoid(a.segment(0, H));
  const VectorXd i = sigmoid(a.segment(H, H));
  const VectorXd o = sigmoid(a.segment(2 * H, H));
  const VectorXd g = tanh(a.segment(3 * H, H));
  LstmState out;
  out.c = f.cwiseProduct(c_prev) + i.cwiseProduct(g);
  out.h = o.cwiseProduct(tanh(out.c));
  return out;
}

inline VectorXd gru_cell_forward(const VectorXd& x, const VectorXd& h_prev, const CellParams& p) {
  p.check_shapes();
  if (p.kind != CellKind::Gru) throw ShapeMismatch("GRU step on non-GRU parameters");
  const Index H = p.hidden();
  if (x.size() != p.input() || h_prev.size() != H)
    throw ShapeMismatch("GRU step input shapes do not match parameters");
  const VectorXd xw = p.W * x + p.b;
  const VectorXd zr = xw.head(2 * H) + p.U.topRows(2 * H) * h_prev;
  const VectorXd z = sigmoid(zr.head(H));
  const VectorXd r = sigmoid(zr.tail(H));
  const VectorXd n = tanh(xw.tail(H) + p.U.bottomRows(H) * r.cwiseProduct(h_prev));
  return (VectorXd::Ones(H) - z).cwiseProduct(h_prev) + z.cwiseProduct(n);
}

}  // namespace meterkit::rnn

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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "meterkit/metrics.hpp"
#include "meterkit/rnn/checkpoint.hpp"
#include "meterkit/rnn/gradcheck.hpp"
#include "meterkit/rnn/train.hpp"

namespace mk = meterkit;
namespace rnn = meterkit::rnn;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kGradTolerance = 1e-4;

// Each class is a distinct random template; examples are noisy copies.
std::vector<rnn::Example> toy_set(std::size_t n, std::size_t classes, std::size_t input, std::uint64_t seed) {
  mk::Rng rng(seed);
  std::vector<MatrixXd> templates;
  for (std::size_t c = 0; c < classes; ++c) {
    MatrixXd t(static_cast<Eigen::Index>(input), 5);
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = rng.uniform(-1.0, 1.0);
    templates.push_back(t);
  }
  std::vector<rnn::Example> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = i % classes;
    MatrixXd x = templates[label];
    for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] += rng.uniform(-0.3, 0.3);
    out.push_back({x, label});
  }
  return out;
}

rnn::StackConfig small_stack(std::size_t input, std::size_t classes) {
  rnn::StackConfig cfg;
  cfg.direction = rnn::Direction::Bi;
  cfg.input_size = input;
  cfg.hidden_size = 8;
  cfg.classes = classes;
  return cfg;
}

std::string checkpoint_bytes(const rnn::RecurrentStack& s, const std::string& meta = {}) {
  std::ostringstream os;
  rnn::save_checkpoint(os, s, meta);
  return os.str();
}

}  // namespace

TEST(Softmax, Properties) {
  mk::Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    VectorXd z(5);
    for (auto& v : z) v = rng.uniform(-30.0, 30.0);
    const VectorXd p = rnn::softmax(z);
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
    const VectorXd shifted = rnn::softmax((z.array() + 1000.0).matrix());
    EXPECT_NEAR((shifted - p).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    EXPECT_NEAR(rnn::weighted_cross_entropy(z, 2), -std::log(p[2]), 1e-9);
  }
}

TEST(Loss, GradientMatchesFiniteDifferences) {
  mk::Rng rng(2);
  VectorXd z(4);
  for (auto& v : z) v = rng.uniform(-2.0, 2.0);
  const VectorXd w = (VectorXd(4) << 0.1, 0.2, 0.3, 0.4).finished();
  const VectorXd g = rnn::weighted_cross_entropy_grad(z, 1, w);
  for (Eigen::Index k = 0; k < 4; ++k) {
    VectorXd up = z, down = z;
    up[k] += 1e-6;
    down[k] -= 1e-6;
    const double numeric = (rnn::weighted_cross_entropy(up, 1, w) - rnn::weighted_cross_entropy(down, 1, w)) / 2e-6;
    EXPECT_NEAR(g[k], numeric, 1e-8);
  }
  EXPECT_THROW(rnn::weighted_cross_entropy(z, 4), mk::LabelOutOfRange);
}

TEST(Loss, ClassWeights) {
  const std::array<std::size_t, 2> counts{100, 50};
  const VectorXd w = rnn::class_weights(counts);
  EXPECT_NEAR(w[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(w[1], 2.0 / 3.0, 1e-15);
  const std::array<std::size_t, 2> scaled{1000, 500};
  EXPECT_NEAR((rnn::class_weights(scaled) - w).norm(), 0.0, 1e-15);
  const std::array<std::size_t, 4> uneven{3, 9, 1, 27};
  const VectorXd u = rnn::class_weights(uneven);
  EXPECT_NEAR(u.sum(), 1.0, 1e-15);
  EXPECT_GT(u[2], u[0]);
  EXPECT_GT(u[0], u[1]);
  EXPECT_GT(u[1], u[3]);
  const std::array<std::size_t, 2> zero{3, 0};
  EXPECT_THROW(rnn::class_weights(zero), mk::EmptyClass);
  EXPECT_THROW(rnn::class_weights(std::span<const std::size_t>{}), mk::NoClasses);
}

TEST(Gradcheck, AllConfigurationsPass) {
  std::uint64_t seed = 100;
  for (auto cell : {rnn::CellKind::Lstm, rnn::CellKind::Gru})
    for (auto dir : {rnn::Direction::Uni, rnn::Direction::Bi})
      for (std::size_t layers : {1u, 2u, 3u})
        for (int rep = 0; rep < 3; ++rep) {
          const auto problem = rnn::random_gradcheck_problem(cell, dir, layers, seed++);
          const auto report = rnn::gradcheck(problem.stack, problem.examples, problem.options);
          EXPECT_LT(report.max_relative_error(), kGradTolerance)
              << rnn::to_string(cell) << " " << rnn::to_string(dir) << " layers " << layers << " seed " << seed - 1;
        }
}

TEST(Gradcheck, DetectsABrokenGradient) {
  const auto problem = rnn::random_gradcheck_problem(rnn::CellKind::Lstm, rnn::Direction::Uni, 1, 7);
  const auto report = rnn::gradcheck(problem.stack, problem.examples, problem.options,
                                     [](rnn::Parameters& g) { g.head_b[0] += 1e-2; });
  EXPECT_GT(report.max_relative_error(), kGradTolerance);
  EXPECT_GT(report.tensors.back().max_relative_error, kGradTolerance);
  EXPECT_EQ(report.tensors.back().name, "head.b");
}

TEST(Gradcheck, RelativeErrorFloor) {
  EXPECT_EQ(rnn::relative_error(0.0, 0.0, 1e-6), 0.0);
  EXPECT_NEAR(rnn::relative_error(1e-9, 2e-9, 1e-6), 1e-3, 1e-15);
  EXPECT_NEAR(rnn::relative_error(2.0, 1.0, 1e-6), 0.5, 1e-15);
}

TEST(Adam, ZeroGradientLeavesParametersAlone) {
  auto stack = rnn::initialize(small_stack(3, 2), 1);
  const auto before = stack.params;
  auto state = rnn::AdamState::for_stack(stack);
  for (int i = 0; i < 3; ++i) rnn::adam_step(stack, rnn::Parameters::zeros(stack.config), state, {});
  EXPECT_EQ(checkpoint_bytes(stack), [&] {
    auto copy = stack;
    copy.params = before;
    return checkpoint_bytes(copy);
  }());
}

TEST(Adam, FirstStepMovesByLearningRate) {
  auto stack = rnn::initialize(small_stack(3, 2), 2);
  const auto before = stack.params;
  rnn::Parameters g = rnn::Parameters::zeros(stack.config);
  mk::Rng rng(3);
  for (auto& t : rnn::tensors(g))
    for (Eigen::Index k = 0; k < t.size(); ++k) t.data[k] = rng.uniform(-5.0, 5.0) + (rng.bernoulli(0.5) ? 1 : -1);
  auto state = rnn::AdamState::for_stack(stack);
  rnn::AdamConfig cfg;
  rnn::adam_step(stack, g, state, cfg);
  const auto after = rnn::tensors(std::as_const(stack.params));
  const auto orig = rnn::tensors(before);
  const auto grad = rnn::tensors(std::as_const(g));
  for (std::size_t i = 0; i < after.size(); ++i)
    for (Eigen::Index k = 0; k < after[i].size(); ++k) {
      const double step = after[i].data[k] - orig[i].data[k];
      EXPECT_NEAR(std::abs(step), cfg.learning_rate, 1e-8);
      EXPECT_LT(step * grad[i].data[k], 0.0);
    }
}

TEST(Training, ZeroEpochsReturnsInitialization) {
  const auto data = toy_set(20, 2, 3, 4);
  rnn::TrainConfig tc;
  tc.epochs = 0;
  tc.seed = 11;
  const auto r = rnn::train(data, {}, small_stack(3, 2), tc);
  EXPECT_TRUE(r.curve.records.empty());
  auto cfg = small_stack(3, 2);
  cfg.dropout = tc.dropout;
  EXPECT_EQ(checkpoint_bytes(r.stack), checkpoint_bytes(rnn::initialize(cfg, mk::mix_seed(11, 0))));
}

TEST(Training, IsDeterministic) {
  const auto data = toy_set(40, 3, 3, 5);
  const auto val = toy_set(9, 3, 3, 6);
  rnn::TrainConfig tc;
  tc.epochs = 3;
  tc.batch_size = 8;
  tc.seed = 12;
  auto cfg = small_stack(3, 3);
  cfg.layers = 2;
  const auto a = rnn::train(data, val, cfg, tc);
  const auto b = rnn::train(data, val, cfg, tc);
  EXPECT_EQ(checkpoint_bytes(a.stack), checkpoint_bytes(b.stack));
  EXPECT_EQ(a.curve, b.curve);
  tc.seed = 13;
  EXPECT_NE(checkpoint_bytes(rnn::train(data, val, cfg, tc).stack), checkpoint_bytes(a.stack));
}

TEST(Training, ThreadCountDoesNotChangeResults) {
  const auto data = toy_set(30, 3, 3, 7);
  rnn::TrainConfig tc;
  tc.epochs = 2;
  tc.batch_size = 16;
  auto cfg = small_stack(3, 3);
  cfg.layers = 2;
  const auto one = rnn::train(data, data, cfg, tc);
  tc.threads = 4;
  const auto four = rnn::train(data, data, cfg, tc);
  EXPECT_EQ(checkpoint_bytes(one.stack), checkpoint_bytes(four.stack));
  EXPECT_EQ(one.curve, four.curve);
  EXPECT_EQ(rnn::predict_all(one.stack, data, 1), rnn::predict_all(one.stack, data, 3));
}

TEST(Training, OverfitsASmallSet) {
  const auto data = toy_set(32, 4, 4, 8);
  rnn::TrainConfig tc;
  tc.epochs = 1;
  tc.batch_size = 32;
  tc.dropout = 0.0;
  tc.adam.learning_rate = 1e-2;
  auto cfg = small_stack(4, 4);
  cfg.hidden_size = 16;
  rnn::TrainResult r{rnn::initialize(cfg, 1), {}};
  std::size_t epochs = 0;
  for (std::size_t budget : {50u, 100u, 200u, 500u}) {
    tc.epochs = budget;
    r = rnn::train(data, {}, cfg, tc);
    epochs = budget;
    if (rnn::evaluate(r.stack, data).overall_accuracy == 1.0) break;
  }
  EXPECT_EQ(rnn::evaluate(r.stack, data).overall_accuracy, 1.0) << "after " << epochs << " epochs";
  EXPECT_LT(r.curve.records.back().train_loss, r.curve.records.front().train_loss);
}

TEST(Training, EpochHookStopsEarly) {
  const auto data = toy_set(12, 2, 3, 11);
  rnn::TrainConfig tc;
  tc.epochs = 10;
  std::vector<std::size_t> seen;
  const auto r = rnn::train(data, {}, small_stack(3, 2), tc, [&](const rnn::EpochRecord& rec, const rnn::RecurrentStack&) {
    seen.push_back(rec.epoch);
    return rec.epoch == 3;
  });
  EXPECT_EQ(seen, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(r.curve.records.size(), 3u);
  tc.epochs = 3;
  EXPECT_EQ(checkpoint_bytes(rnn::train(data, {}, small_stack(3, 2), tc).stack), checkpoint_bytes(r.stack));
}

TEST(Training, LearningCurveCsv) {
  rnn::LearningCurve curve;
  curve.records.push_back({1, 0.5, std::numeric_limits<double>::quiet_NaN()});
  curve.records.push_back({2, 0.25, 0.75});
  std::ostringstream os;
  rnn::write_curve_csv(os, curve);
  EXPECT_EQ(os.str(), "epoch,train_loss,val_accuracy\n1,0.5,nan\n2,0.25,0.75\n");
}

TEST(Training, EmptyValidationGivesNaN) {
  rnn::TrainConfig tc;
  tc.epochs = 1;
  const auto r = rnn::train(toy_set(6, 2, 3, 9), {}, small_stack(3, 2), tc);
  ASSERT_EQ(r.curve.records.size(), 1u);
  EXPECT_TRUE(std::isnan(r.curve.records[0].validation_accuracy));
}

TEST(Training, RejectsBadConfigurations) {
  rnn::TrainConfig tc;
  tc.batch_size = 0;
  EXPECT_THROW(rnn::train(toy_set(4, 2, 3, 1), {}, small_stack(3, 2), tc), mk::Error);
  tc = {};
  tc.dropout = 1.0;
  EXPECT_THROW(rnn::train(toy_set(4, 2, 3, 1), {}, small_stack(3, 2), tc), mk::Error);
  tc = {};
  EXPECT_THROW(rnn::train({}, {}, small_stack(3, 2), tc), mk::EmptySet);
  EXPECT_THROW(rnn::train(toy_set(4, 3, 3, 1), {}, small_stack(3, 2), tc), mk::LabelOutOfRange);
  EXPECT_THROW(rnn::evaluate(rnn::initialize(small_stack(3, 2), 1), {}), mk::EmptySet);
}

TEST(Training, WeightedLossStillLearns) {
  auto data = toy_set(40, 2, 3, 10);
  const auto extra = toy_set(40, 2, 3, 10);
  for (const auto& e : extra)
    if (e.label == 0) data.push_back(e);
  rnn::TrainConfig tc;
  tc.epochs = 40;
  tc.batch_size = 16;
  tc.use_weights = true;
  tc.adam.learning_rate = 1e-2;
  const auto r = rnn::train(data, {}, small_stack(3, 2), tc);
  EXPECT_GE(rnn::evaluate(r.stack, data).overall_accuracy, 0.95);
}

TEST(Checkpoint, RoundTripIsExact) {
  auto cfg = small_stack(3, 4);
  cfg.cell = rnn::CellKind::Gru;
  cfg.layers = 2;
  cfg.dropout = 0.25;
  const auto stack = rnn::initialize(cfg, 3);
  const std::string bytes = checkpoint_bytes(stack, "meta\ndata");
  EXPECT_EQ(bytes.substr(0, 8), "MKCKPT01");
  std::istringstream is(bytes);
  const auto ck = rnn::load_checkpoint(is);
  EXPECT_EQ(ck.metadata, "meta\ndata");
  EXPECT_EQ(ck.stack.config.cell, rnn::CellKind::Gru);
  EXPECT_EQ(ck.stack.config.dropout, 0.25);
  EXPECT_EQ(checkpoint_bytes(ck.stack, "meta\ndata"), bytes);
  const auto data = toy_set(5, 4, 3, 2);
  EXPECT_EQ(rnn::predict_all(ck.stack, data), rnn::predict_all(stack, data));
}

TEST(Checkpoint, RejectsDamage) {
  const std::string bytes = checkpoint_bytes(rnn::initialize(small_stack(3, 2), 3));
  const auto load = [](std::string b) {
    std::istringstream is(b);
    return rnn::load_checkpoint(is);
  };
  std::string bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(load(bad), mk::IncompatibleCheckpoint);
  bad = bytes;
  bad[8] = 2;
  EXPECT_THROW(load(bad), mk::IncompatibleCheckpoint);
  EXPECT_THROW(load(bytes.substr(0, bytes.size() - 3)), mk::IncompatibleCheckpoint);
  EXPECT_THROW(load(""), mk::IncompatibleCheckpoint);
  EXPECT_THROW(rnn::load_checkpoint(std::string("/nonexistent/ck.bin")), mk::Error);
}

TEST(Metrics, PerfectPredictor) {
  const std::vector<std::size_t> t{0, 1, 2, 2, 1};
  const auto e = mk::evaluate_predictions(t, t, 4);
  EXPECT_EQ(e.overall_accuracy, 1.0);
  EXPECT_EQ(e.per_class_accuracy[0], 1.0);
  EXPECT_TRUE(std::isnan(e.per_class_accuracy[3]));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) {
        EXPECT_EQ(e.confusion[i][j], 0u);
      }
}

TEST(Metrics, ConstantPredictor) {
  const std::vector<std::size_t> t{0, 1, 0, 1};
  const std::vector<std::size_t> p{0, 0, 0, 0};
  const auto e = mk::evaluate_predictions(t, p, 2);
  EXPECT_EQ(e.overall_accuracy, 0.5);
  EXPECT_EQ(e.per_class_accuracy[0], 1.0);
  EXPECT_EQ(e.per_class_accuracy[1], 0.0);
  EXPECT_EQ(e.confusion[1][0], 2u);
}

TEST(Metrics, HandCountedFixture) {
  const std::vector<std::size_t> t{0, 0, 0, 0, 1, 1, 1, 2, 2, 2};
  const std::vector<std::size_t> p{0, 0, 1, 2, 1, 1, 0, 2, 2, 2};
  const auto e = mk::evaluate_predictions(t, p, 3);
  EXPECT_EQ(e.correct, 7u);
  EXPECT_DOUBLE_EQ(e.overall_accuracy, 0.7);
  EXPECT_DOUBLE_EQ(e.per_class_accuracy[0], 0.5);
  EXPECT_DOUBLE_EQ(e.per_class_accuracy[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(e.per_class_accuracy[2], 1.0);
  const std::vector<std::vector<std::size_t>> confusion{{2, 1, 1}, {1, 2, 0}, {0, 0, 3}};
  EXPECT_EQ(e.confusion, confusion);
  EXPECT_EQ(e.class_counts, (std::vector<std::size_t>{4, 3, 3}));
}

TEST(Metrics, Errors) {
  const std::vector<std::size_t> t{0, 1};
  const std::vector<std::size_t> p{0};
  EXPECT_THROW(mk::evaluate_predictions(t, p, 2), mk::Error);
  EXPECT_THROW(mk::evaluate_predictions(std::vector<std::size_t>{}, std::vector<std::size_t>{}, 2), mk::EmptySet);
  EXPECT_THROW(mk::evaluate_predictions(t, t, 1), mk::LabelOutOfRange);
}

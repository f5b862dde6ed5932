#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "simplegrp/dataset.hpp"
#include "simplegrp/features.hpp"
#include "simplegrp/nn.hpp"
#include "simplegrp/perm.hpp"
#include "simplegrp/rng.hpp"

using namespace simplegrp;

namespace {

double batch_loss(const Mlp<double>& net, std::span<const double> x,
                  std::span<const std::uint8_t> labels, int count) {
  typename Mlp<double>::Gradients grads(net);
  typename Mlp<double>::Workspace ws;
  return net.loss_and_gradients(x, labels, count, grads, ws);
}

// Central finite differences against the analytic gradients.  Relative
// error uses a 1e-4 floor in the denominator so that near-zero gradient
// pairs (dead ReLU paths) do not divide by zero.
double max_gradcheck_error(Activation act, std::uint64_t seed) {
  MlpConfig cfg;
  cfg.input_dim = 5;
  cfg.hidden = {7, 4};
  cfg.activation = act;
  Mlp<double> net(cfg);
  net.init_weights(seed);

  const int count = 6;
  Rng rng(seed + 1);
  std::vector<double> x(static_cast<std::size_t>(count) * cfg.input_dim);
  for (double& v : x) v = rng.next_real() * 2.0 - 1.0;
  std::vector<std::uint8_t> labels(count);
  for (int b = 0; b < count; ++b) labels[b] = b % 2;

  typename Mlp<double>::Gradients grads(net);
  typename Mlp<double>::Workspace ws;
  net.loss_and_gradients(x, labels, count, grads, ws);

  const double h = 1e-6;
  double worst = 0.0;
  for (int l = 0; l < net.layer_count(); ++l) {
    for (int which = 0; which < 2; ++which) {
      std::span<double> params = which == 0 ? net.weights(l) : net.biases(l);
      std::span<const double> analytic =
          which == 0 ? std::span<const double>(grads.weights[l])
                     : std::span<const double>(grads.biases[l]);
      for (std::size_t i = 0; i < params.size(); ++i) {
        const double keep = params[i];
        params[i] = keep + h;
        const double up = batch_loss(net, x, labels, count);
        params[i] = keep - h;
        const double down = batch_loss(net, x, labels, count);
        params[i] = keep;
        const double numeric = (up - down) / (2.0 * h);
        const double denom =
            std::max(std::abs(analytic[i]) + std::abs(numeric), 1e-4);
        worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
      }
    }
  }
  return worst;
}

FeaturizedSet synthetic_set(std::size_t count, std::uint64_t seed) {
  // Linearly separable toy problem: class 0 iff x0 > x1.
  FeaturizedSet set;
  set.degree = 0;
  set.mode = FeatureMode::invariants;
  set.dim = 2;
  set.count = count;
  set.x.resize(count * 2);
  set.label.resize(count);
  set.parity.resize(count);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const float a = rng.next_float(-1.0f, 1.0f);
    const float b = rng.next_float(-1.0f, 1.0f);
    set.x[i * 2] = a;
    set.x[i * 2 + 1] = b;
    set.label[i] = a > b ? 0 : 1;
    set.parity[i] = set.label[i];
  }
  return set;
}

std::vector<std::uint32_t> iota_indices(std::uint32_t from, std::uint32_t to) {
  std::vector<std::uint32_t> idx(to - from);
  std::iota(idx.begin(), idx.end(), from);
  return idx;
}

}  // namespace

TEST_CASE("analytic gradients match finite differences") {
  CHECK(max_gradcheck_error(Activation::sigmoid, 31337) <= 1e-5);
  CHECK(max_gradcheck_error(Activation::relu, 512) <= 1e-5);
}

TEST_CASE("softmax outputs are normalized probabilities") {
  MlpConfig cfg;
  cfg.input_dim = 4;
  cfg.hidden = {6};
  Mlp<double> net(cfg);
  net.init_weights(9);

  // Large weights push the logits far apart; normalization must hold.
  for (double& w : net.weights(1)) w *= 50.0;

  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(4);
    for (double& v : x) v = rng.next_real() * 10.0 - 5.0;
    const auto p = net.predict(x);
    CHECK(p[0] >= 0.0);
    CHECK(p[1] >= 0.0);
    CHECK(std::abs(p[0] + p[1] - 1.0) <= 1e-9);
  }
}

TEST_CASE("single optimizer steps match closed forms") {
  // One linear layer, one sample: every quantity is computable by hand.
  MlpConfig cfg;
  cfg.input_dim = 1;
  Mlp<double> net(cfg);
  const double w0 = 0.3, w1 = -0.2, b0 = 0.05, b1 = -0.1, x = 0.7;
  net.weights(0)[0] = w0;
  net.weights(0)[1] = w1;
  net.biases(0)[0] = b0;
  net.biases(0)[1] = b1;

  const double z0 = w0 * x + b0, z1 = w1 * x + b1;
  const double m = std::max(z0, z1);
  const double e0 = std::exp(z0 - m), e1 = std::exp(z1 - m);
  const double p0 = e0 / (e0 + e1), p1 = e1 / (e0 + e1);
  const int label = 1;  // y = (0, 1)
  const double q0 = p0 - 0.0, q1 = p1 - 1.0;
  const double expected_loss = q0 * q0 + q1 * q1;
  const double g0 = 2.0 * q0, g1 = 2.0 * q1;
  const double gp = g0 * p0 + g1 * p1;
  const double dz0 = p0 * (g0 - gp), dz1 = p1 * (g1 - gp);

  typename Mlp<double>::Gradients grads(net);
  typename Mlp<double>::Workspace ws;
  const std::vector<double> input = {x};
  const std::vector<std::uint8_t> labels = {label};
  const double loss = net.loss_and_gradients(input, labels, 1, grads, ws);
  CHECK(loss == doctest::Approx(expected_loss).epsilon(1e-12));
  CHECK(grads.weights[0][0] == doctest::Approx(dz0 * x).epsilon(1e-12));
  CHECK(grads.weights[0][1] == doctest::Approx(dz1 * x).epsilon(1e-12));
  CHECK(grads.biases[0][0] == doctest::Approx(dz0).epsilon(1e-12));
  CHECK(grads.biases[0][1] == doctest::Approx(dz1).epsilon(1e-12));

  SUBCASE("plain SGD") {
    TrainConfig tc;
    tc.optimizer = OptimizerKind::sgd;
    tc.momentum = 0.0;
    typename Mlp<double>::OptState state(net, OptimizerKind::sgd);
    net.optimizer_step(tc, 0.1, grads, state);
    CHECK(net.weights(0)[0] ==
          doctest::Approx(w0 - 0.1 * dz0 * x).epsilon(1e-12));
    CHECK(net.biases(0)[1] == doctest::Approx(b1 - 0.1 * dz1).epsilon(1e-12));
  }

  SUBCASE("Nesterov momentum from rest") {
    // v' = mu v - lr g = -lr g at v = 0, then w += mu v' - lr g.
    TrainConfig tc;
    tc.optimizer = OptimizerKind::sgd;
    tc.momentum = 0.9;
    typename Mlp<double>::OptState state(net, OptimizerKind::sgd);
    net.optimizer_step(tc, 0.1, grads, state);
    const double g = dz0 * x;
    CHECK(net.weights(0)[0] ==
          doctest::Approx(w0 - 0.1 * g * 1.9).epsilon(1e-12));

    // Second step with the same gradients: v'' = mu v' - lr g.
    net.optimizer_step(tc, 0.1, grads, state);
    const double v1 = -0.1 * g;
    const double v2 = 0.9 * v1 - 0.1 * g;
    const double w_after1 = w0 + 0.9 * v1 - 0.1 * g;
    CHECK(net.weights(0)[0] ==
          doctest::Approx(w_after1 + 0.9 * v2 - 0.1 * g).epsilon(1e-12));
  }

  SUBCASE("Adam first step collapses to a signed step") {
    // With zero moments, mhat = g and vhat = g^2, so the update is
    // -lr * g / (|g| + eps).
    TrainConfig tc;
    tc.optimizer = OptimizerKind::adam;
    typename Mlp<double>::OptState state(net, OptimizerKind::adam);
    net.optimizer_step(tc, 0.001, grads, state);
    const double g = dz0 * x;
    const double expected =
        w0 - 0.001 * g / (std::sqrt(g * g) + tc.adam_epsilon);
    CHECK(net.weights(0)[0] == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("lr_schedule decays once per epoch") {
  CHECK(lr_schedule(0.05, 0.1, 0) == doctest::Approx(0.05));
  CHECK(lr_schedule(0.05, 0.1, 1) == doctest::Approx(0.045));
  CHECK(lr_schedule(0.05, 0.1, 2) == doctest::Approx(0.0405));
  CHECK(lr_schedule(0.01, 0.0, 25) == doctest::Approx(0.01));
}

TEST_CASE("weight init covers the documented ranges and substreams") {
  MlpConfig cfg;
  cfg.input_dim = 24;
  cfg.hidden = {10};
  cfg.activation = Activation::relu;
  Mlp<float> net(cfg);
  net.init_weights(5);
  const float limit0 = std::sqrt(6.0f / 24.0f);
  for (float w : net.weights(0)) CHECK(std::abs(w) <= limit0);
  for (float b : net.biases(0)) CHECK(b == 0.0f);

  cfg.activation = Activation::sigmoid;
  Mlp<float> sig(cfg);
  sig.init_weights(5);
  for (float w : sig.weights(0)) CHECK(std::abs(w) <= 0.05f);

  // Same seed, same weights; different seed, different weights.
  Mlp<float> again(cfg);
  again.init_weights(5);
  CHECK(std::equal(sig.weights(0).begin(), sig.weights(0).end(),
                   again.weights(0).begin()));
  again.init_weights(6);
  CHECK_FALSE(std::equal(sig.weights(0).begin(), sig.weights(0).end(),
                         again.weights(0).begin()));
}

TEST_CASE("evaluate fills the confusion matrix and parity disagreement") {
  // Identity passthrough: class = argmax of the two inputs.
  MlpConfig cfg;
  cfg.input_dim = 2;
  Mlp<float> net(cfg);
  net.weights(0)[0] = 5.0f;  // output 0 reads x0
  net.weights(0)[3] = 5.0f;  // output 1 reads x1

  FeaturizedSet set;
  set.degree = 0;
  set.mode = FeatureMode::invariants;
  set.dim = 2;
  set.count = 4;
  // predictions: 0, 1, 0, 1
  set.x = {1, 0,  0, 1,  1, 0,  0, 1};
  set.label = {0, 1, 1, 1};
  set.parity = {0, 1, 0, 0};
  const EvalResult eval = evaluate(net, set);
  CHECK(eval.accuracy == doctest::Approx(0.75));
  CHECK(eval.confusion.counts[0][0] == 1);
  CHECK(eval.confusion.counts[0][1] == 0);
  CHECK(eval.confusion.counts[1][0] == 1);
  CHECK(eval.confusion.counts[1][1] == 2);
  CHECK(eval.class_accuracy[0] == doctest::Approx(1.0));
  CHECK(eval.class_accuracy[1] == doctest::Approx(2.0 / 3.0));
  // Model predicts 0,1,0,1 vs parity 0,1,0,0: one disagreement of four.
  CHECK(eval.parity_disagree == doctest::Approx(25.0));

  const std::vector<std::uint32_t> first_two = {0, 1};
  CHECK(evaluate(net, set, first_two).accuracy == doctest::Approx(1.0));

  // An empty index span means "all rows"; only a truly empty set throws.
  CHECK(evaluate(net, set).accuracy == doctest::Approx(0.75));
  FeaturizedSet empty;
  empty.dim = 2;
  CHECK_THROWS_AS(evaluate(net, empty), std::domain_error);
}

TEST_CASE("training learns a separable rule and logs its schedule") {
  const FeaturizedSet set = synthetic_set(400, 2025);
  const auto train_idx = iota_indices(0, 300);
  const auto val_idx = iota_indices(300, 400);

  MlpConfig arch;
  arch.input_dim = set.dim;
  arch.hidden = {8};
  TrainConfig tc;
  tc.optimizer = OptimizerKind::sgd;
  tc.learning_rate = 0.5;
  tc.momentum = 0.9;
  tc.lr_decay = 0.05;
  tc.epochs = 20;
  tc.batch_size = 16;

  const FoldResult fold = train_fold(set, train_idx, val_idx, arch, tc, 7, 0);
  CHECK(fold.train_size == 300);
  CHECK(fold.val_size == 100);
  REQUIRE(fold.epochs.size() == 20);
  CHECK(fold.final_eval.accuracy >= 0.95);
  CHECK(fold.epochs.back().train_loss < fold.epochs.front().train_loss);
  for (int e = 0; e < 20; ++e) {
    CHECK(fold.epochs[e].epoch == e);
    CHECK(fold.epochs[e].lr == doctest::Approx(lr_schedule(0.5, 0.05, e)));
    CHECK(fold.epochs[e].val_acc ==
          doctest::Approx(fold.epochs[e].val_acc));  // finite
  }
  CHECK(fold.final_eval.accuracy ==
        doctest::Approx(fold.epochs.back().val_acc));
}

TEST_CASE("training is bit-reproducible for a fixed seed") {
  const FeaturizedSet set = synthetic_set(200, 77);
  const auto train_idx = iota_indices(0, 150);
  const auto val_idx = iota_indices(150, 200);
  MlpConfig arch;
  arch.input_dim = set.dim;
  arch.hidden = {6};
  TrainConfig tc;
  tc.epochs = 5;
  tc.learning_rate = 0.2;

  const FoldResult a = train_fold(set, train_idx, val_idx, arch, tc, 11, 0);
  const FoldResult b = train_fold(set, train_idx, val_idx, arch, tc, 11, 0);
  REQUIRE(a.epochs.size() == b.epochs.size());
  for (std::size_t e = 0; e < a.epochs.size(); ++e) {
    CHECK(a.epochs[e].train_loss == b.epochs[e].train_loss);
    CHECK(a.epochs[e].val_acc == b.epochs[e].val_acc);
  }
  CHECK(a.final_eval.accuracy == b.final_eval.accuracy);

  const FoldResult c = train_fold(set, train_idx, val_idx, arch, tc, 12, 0);
  bool any_difference = false;
  for (std::size_t e = 0; e < a.epochs.size(); ++e)
    any_difference |= a.epochs[e].train_loss != c.epochs[e].train_loss;
  CHECK(any_difference);
}

TEST_CASE("crossval averages the folds of the plan") {
  const FeaturizedSet set = synthetic_set(150, 3);
  const SplitPlan plan = kfold_split(set.count, 3, 5);
  MlpConfig arch;
  arch.input_dim = set.dim;
  arch.hidden = {6};
  TrainConfig tc;
  tc.epochs = 8;
  tc.learning_rate = 0.3;
  tc.momentum = 0.5;

  const TrainResult result = crossval(set, plan, arch, tc, 21);
  REQUIRE(result.folds.size() == 3);
  double mean = 0.0;
  for (const FoldResult& fold : result.folds) {
    CHECK(fold.train_size + fold.val_size == set.count);
    mean += fold.final_eval.accuracy;
  }
  CHECK(result.mean_val_accuracy == doctest::Approx(mean / 3.0));
  CHECK(result.arch.hidden == std::vector<int>{6});
}

TEST_CASE("feature dimensions follow the encoding definitions") {
  CHECK(feature_dim(FeatureMode::matrices, 5) == 50);
  CHECK(feature_dim(FeatureMode::matrices, 8) == 128);
  CHECK(feature_dim(FeatureMode::invariants, 5) == 5);
  CHECK(feature_dim(FeatureMode::invariants_alt, 8) == 5);
  CHECK(feature_dim(FeatureMode::order_profile, 6) == 16);
}

TEST_CASE("feature encodings of the S3 reference pair") {
  DatasetEntry entry;
  entry.degree = 4;
  entry.r1 = 6;   // (2,1,0,3): a transposition, trace 2
  entry.r2 = 19;  // (3,1,2,0): a transposition, trace 2

  const auto matrices = featurize(entry, FeatureMode::matrices);
  const std::vector<double> expected_flat = {
      0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1,
      0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0};
  CHECK(matrices.values == expected_flat);

  const auto inv = featurize(entry, FeatureMode::invariants);
  CHECK(inv.values == std::vector<double>{0.5, 0.5, -1.0, -1.0, 0.0});

  const auto alt = featurize(entry, FeatureMode::invariants_alt);
  CHECK(alt.values == std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.0});

  const auto prof = featurize(entry, FeatureMode::order_profile);
  REQUIRE(prof.values.size() == 16);
  CHECK(prof.values[0] == doctest::Approx(1.0 / 6.0));  // identity
  CHECK(prof.values[1] == doctest::Approx(3.0 / 6.0));  // three involutions
  CHECK(prof.values[2] == doctest::Approx(2.0 / 6.0));  // two 3-cycles
  for (int i = 3; i < 15; ++i) CHECK(prof.values[i] == 0.0);
  CHECK(prof.values[15] == doctest::Approx(6.0 / 24.0));  // |S3| / |S4|
}

TEST_CASE("parity baseline predicts simplicity from generator signs") {
  DatasetEntry odd;
  odd.degree = 4;
  odd.r1 = 6;
  odd.r2 = 19;
  CHECK_FALSE(parity_predicts_simple(odd));

  DatasetEntry even;
  even.degree = 4;
  even.r1 = rank(parse_cycles("(1,2,3)", 4));
  even.r2 = rank(parse_cycles("(2,3,4)", 4));
  CHECK(parity_predicts_simple(even));
}

TEST_CASE("featurize_all lays out rows consistently") {
  const auto entries = enumerate_labeled(4, PairFilter::distinct, 1);
  const FeaturizedSet set =
      featurize_all(entries, FeatureMode::invariants, 2);
  REQUIRE(set.count == entries.size());
  REQUIRE(set.dim == 5);

  PairLabeler labeler(4);
  for (std::size_t i = 0; i < entries.size(); i += 37) {
    const auto row = set.row(i);
    const auto single =
        featurize(entries[i], FeatureMode::invariants, &labeler);
    for (int d = 0; d < 5; ++d)
      REQUIRE(row[d] == doctest::Approx(single.values[d]).epsilon(1e-6));
    REQUIRE(set.label[i] == (entries[i].simple ? 0 : 1));
    REQUIRE(set.parity[i] ==
            (parity_predicts_simple(entries[i]) ? 0 : 1));
  }

  const FeaturizedSet other =
      featurize_all(entries, FeatureMode::invariants, 1);
  CHECK(other.x == set.x);
  CHECK(other.label == set.label);
  CHECK(other.parity == set.parity);
}

#pragma once

// Canned experiment configurations and end-to-end runners.
//
// crossval presets (matrix features, ReLU, SGD with Nesterov momentum,
// minibatch 32, 5 folds):
//   n=5  lr 0.05   momentum 0.00  decay 0.10  1 hidden layer  x256, 30 epochs
//   n=6  lr 0.001  momentum 0.01  decay 0.05  3 hidden layers x256, 30 epochs
//   n=7  lr 0.01   momentum 0.10  decay 0.05  9 hidden layers x256,  6 epochs
//   n=8  same as n=7
// The pool is the full enumeration for n <= 6 and a fixed-size uniform
// sample for n in {7, 8}; it is balanced, then cut to --percent per class,
// then split into folds.
//
// Small-corpus presets (Adam, sigmoid hidden layers, degree 6, balanced
// corpus of 8,500 rows, fixed train/eval split):
//   invariant-features run:   1000/500/200 hidden, 1,000 training rows
//   order-profile run:        100/50/20 hidden,      100 training rows

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simplegrp/dataset.hpp"
#include "simplegrp/features.hpp"
#include "simplegrp/nn.hpp"

namespace simplegrp {

struct CrossvalSpec {
  int n = 5;
  FeatureMode features = FeatureMode::matrices;
  MlpConfig arch;           // input_dim filled in by the runner
  TrainConfig train;
  int folds = 5;
  double percent = 100.0;   // per-class subset of the balanced pool
  std::uint64_t seed = 0;
  std::uint64_t sample_pool = 0;  // 0 = full enumeration (n <= 6 only)
  PairFilter filter = PairFilter::distinct;
  int workers = 0;          // 0 = hardware
};

// Fills arch/train with the preset for degree n (5..8).
CrossvalSpec crossval_preset(int n);

// Default sampled-pool sizes for the degrees that cannot be enumerated.
inline constexpr std::uint64_t kDefaultPoolN7 = 1'300'000;
inline constexpr std::uint64_t kDefaultPoolN8 = 200'000;

struct CrossvalOutcome {
  CrossvalSpec spec;
  DatasetStats pool_stats;      // before balancing
  std::size_t balanced_size = 0;
  std::size_t subset_size = 0;
  TrainResult result;
};

// Pool -> balance -> subset -> featurize -> k-fold crossval.
// `pool` lets callers inject a prebuilt pool (used when several runs share
// one); pass nullptr to build from the spec.
CrossvalOutcome run_crossval_experiment(
    const CrossvalSpec& spec,
    const std::vector<DatasetEntry>* pool = nullptr);

struct SmallRunSpec {
  FeatureMode features = FeatureMode::invariants;
  MlpConfig arch;
  TrainConfig train;
  int n = 6;
  std::uint64_t corpus_size = 8500;
  std::uint64_t train_size = 1000;
  std::uint64_t seed = 0;
  int workers = 0;
};

// The two small-corpus presets.
SmallRunSpec small_preset_invariants();
SmallRunSpec small_preset_order_profile();

struct SmallRunOutcome {
  SmallRunSpec spec;
  std::size_t eval_size = 0;
  FoldResult result;  // fold 0
};

// Balanced corpus -> featurize -> shuffled train/eval split -> single
// training run.  The split shuffle draws from substream (seed, folding).
SmallRunOutcome run_small_experiment(const SmallRunSpec& spec);

}  // namespace simplegrp

#include "simplegrp/experiments.hpp"

#include <numeric>
#include <stdexcept>

namespace simplegrp {

CrossvalSpec crossval_preset(int n) {
  CrossvalSpec spec;
  spec.n = n;
  spec.features = FeatureMode::matrices;
  spec.arch.activation = Activation::relu;
  spec.train.optimizer = OptimizerKind::sgd;
  spec.train.batch_size = 32;
  spec.folds = 5;
  switch (n) {
    case 5:
      spec.arch.hidden = {256};
      spec.train.learning_rate = 0.05;
      spec.train.momentum = 0.0;
      spec.train.lr_decay = 0.1;
      spec.train.epochs = 30;
      break;
    case 6:
      spec.arch.hidden = {256, 256, 256};
      spec.train.learning_rate = 0.001;
      spec.train.momentum = 0.01;
      spec.train.lr_decay = 0.05;
      spec.train.epochs = 30;
      break;
    case 7:
    case 8:
      spec.arch.hidden = std::vector<int>(9, 256);
      spec.train.learning_rate = 0.01;
      spec.train.momentum = 0.1;
      spec.train.lr_decay = 0.05;
      spec.train.epochs = 6;
      spec.sample_pool = n == 7 ? kDefaultPoolN7 : kDefaultPoolN8;
      break;
    default:
      throw std::domain_error("no crossval preset for degree " +
                              std::to_string(n));
  }
  return spec;
}

CrossvalOutcome run_crossval_experiment(const CrossvalSpec& spec,
                                        const std::vector<DatasetEntry>* pool) {
  CrossvalOutcome outcome;
  outcome.spec = spec;

  std::vector<DatasetEntry> built;
  if (!pool) {
    if (spec.sample_pool == 0)
      built = enumerate_labeled(spec.n, spec.filter, spec.workers);
    else
      built = sample_labeled(spec.n, spec.sample_pool, spec.seed, spec.filter,
                             spec.workers);
    pool = &built;
  }
  outcome.pool_stats = dataset_stats(*pool);

  const std::vector<DatasetEntry> balanced = balance(*pool, spec.seed);
  outcome.balanced_size = balanced.size();
  std::vector<DatasetEntry> subset =
      spec.percent >= 100.0
          ? balanced
          : subset_percent(balanced, spec.percent, spec.seed);
  outcome.subset_size = subset.size();

  const FeaturizedSet set = featurize_all(subset, spec.features, spec.workers);
  MlpConfig arch = spec.arch;
  arch.input_dim = set.dim;

  const SplitPlan plan = kfold_split(set.count, spec.folds, spec.seed);
  outcome.result = crossval(set, plan, arch, spec.train, spec.seed);
  return outcome;
}

SmallRunSpec small_preset_invariants() {
  SmallRunSpec spec;
  spec.features = FeatureMode::invariants;
  spec.arch.hidden = {1000, 500, 200};
  spec.arch.activation = Activation::sigmoid;
  spec.train.optimizer = OptimizerKind::adam;
  spec.train.learning_rate = 0.001;
  spec.train.lr_decay = 0.0;
  spec.train.batch_size = 32;
  spec.train.epochs = 60;
  spec.train_size = 1000;
  return spec;
}

SmallRunSpec small_preset_order_profile() {
  SmallRunSpec spec;
  spec.features = FeatureMode::order_profile;
  spec.arch.hidden = {100, 50, 20};
  spec.arch.activation = Activation::sigmoid;
  spec.train.optimizer = OptimizerKind::adam;
  spec.train.learning_rate = 0.001;
  spec.train.lr_decay = 0.0;
  spec.train.batch_size = 32;
  spec.train.epochs = 200;
  spec.train_size = 100;
  return spec;
}

SmallRunOutcome run_small_experiment(const SmallRunSpec& spec) {
  if (spec.train_size == 0 || spec.train_size >= spec.corpus_size)
    throw std::domain_error("train size must lie in 1..corpus size-1");

  const std::vector<DatasetEntry> corpus =
      balanced_sample(spec.n, spec.corpus_size, spec.seed, spec.workers);
  const FeaturizedSet set = featurize_all(corpus, spec.features, spec.workers);

  // Shuffled train/eval split; the shuffle draws from the folding stream.
  std::vector<std::uint32_t> order(set.count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed, Stream::folding);
  rng.shuffle(order);
  const std::vector<std::uint32_t> train_idx(
      order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.train_size));
  const std::vector<std::uint32_t> eval_idx(
      order.begin() + static_cast<std::ptrdiff_t>(spec.train_size), order.end());

  MlpConfig arch = spec.arch;
  arch.input_dim = set.dim;

  SmallRunOutcome outcome;
  outcome.spec = spec;
  outcome.eval_size = eval_idx.size();
  outcome.result =
      train_fold(set, train_idx, eval_idx, arch, spec.train, spec.seed, 0);
  return outcome;
}

}  // namespace simplegrp

#include "simplegrp/nn.hpp"

#include <numeric>

namespace simplegrp {

template class Mlp<float>;
template class Mlp<double>;

const char* activation_name(Activation a) {
  return a == Activation::relu ? "relu" : "sigmoid";
}

const char* optimizer_name(OptimizerKind o) {
  return o == OptimizerKind::sgd ? "sgd-nesterov" : "adam";
}

namespace {

constexpr int kEvalBatch = 256;

// Calls visit(position_in_indices, predicted_class) for every selected row,
// in index order.
template <typename Visit>
void predict_rows(const Mlp<float>& net, const FeaturizedSet& set,
                  std::span<const std::uint32_t> indices, Visit&& visit) {
  const int dim = net.in_dim(0);
  if (dim != set.dim)
    throw std::invalid_argument("network input dimension does not match features");
  Mlp<float>::Workspace ws;
  std::vector<float> buffer(static_cast<std::size_t>(kEvalBatch) * dim);
  const std::size_t total = indices.size();
  std::size_t done = 0;
  while (done < total) {
    const int count =
        static_cast<int>(std::min<std::size_t>(kEvalBatch, total - done));
    for (int b = 0; b < count; ++b) {
      const auto row = set.row(indices[done + static_cast<std::size_t>(b)]);
      std::copy(row.begin(), row.end(),
                buffer.begin() + static_cast<std::size_t>(b) * dim);
    }
    net.forward_batch(buffer, count, ws);
    const auto& probs = ws.act.back();
    for (int b = 0; b < count; ++b) {
      const float p0 = probs[static_cast<std::size_t>(b) * 2];
      const float p1 = probs[static_cast<std::size_t>(b) * 2 + 1];
      visit(done + static_cast<std::size_t>(b), p1 > p0 ? 1 : 0);
    }
    done += static_cast<std::size_t>(count);
  }
}

std::vector<std::uint32_t> all_indices(std::size_t count) {
  std::vector<std::uint32_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

}  // namespace

EvalResult evaluate(const Mlp<float>& net, const FeaturizedSet& set,
                    std::span<const std::uint32_t> indices) {
  std::vector<std::uint32_t> fallback;
  if (indices.empty()) {
    fallback = all_indices(set.count);
    indices = fallback;
  }
  if (indices.empty()) throw std::domain_error("evaluation set is empty");

  EvalResult result;
  std::uint64_t parity_mismatch = 0;
  predict_rows(net, set, indices, [&](std::size_t pos, int pred) {
    const std::uint32_t row = indices[pos];
    const int truth = set.label[row];
    result.confusion.counts[truth][pred] += 1;
    parity_mismatch += pred != set.parity[row];
  });

  const auto& c = result.confusion.counts;
  const std::uint64_t total = indices.size();
  result.accuracy = static_cast<double>(c[0][0] + c[1][1]) /
                    static_cast<double>(total);
  for (int klass = 0; klass < 2; ++klass) {
    const std::uint64_t row_total = c[klass][0] + c[klass][1];
    result.class_accuracy[klass] =
        row_total == 0
            ? 0.0
            : static_cast<double>(c[klass][klass]) / static_cast<double>(row_total);
  }
  result.parity_disagree =
      100.0 * static_cast<double>(parity_mismatch) / static_cast<double>(total);
  return result;
}

FoldResult train_fold(const FeaturizedSet& set,
                      std::span<const std::uint32_t> train_idx,
                      std::span<const std::uint32_t> val_idx,
                      const MlpConfig& arch, const TrainConfig& cfg,
                      std::uint64_t seed, int fold) {
  if (train_idx.empty()) throw std::domain_error("training split is empty");
  if (val_idx.empty()) throw std::domain_error("validation split is empty");
  if (cfg.batch_size < 1) throw std::domain_error("batch size must be >= 1");
  if (cfg.epochs < 1) throw std::domain_error("epoch count must be >= 1");

  Mlp<float> net(arch);
  net.init_weights(substream_seed(seed, Stream::weight_init,
                                  static_cast<std::uint64_t>(fold)));
  Mlp<float>::Gradients grads(net);
  Mlp<float>::Workspace ws;
  typename Mlp<float>::OptState opt(net, cfg.optimizer);

  FoldResult result;
  result.fold = fold;
  result.train_size = train_idx.size();
  result.val_size = val_idx.size();

  const int dim = set.dim;
  std::vector<float> batch_x(static_cast<std::size_t>(cfg.batch_size) * dim);
  std::vector<std::uint8_t> batch_y(cfg.batch_size);
  std::vector<std::uint32_t> order(train_idx.begin(), train_idx.end());

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double lr = lr_schedule(cfg.learning_rate, cfg.lr_decay, epoch);

    // Fresh minibatch order per epoch from its own substream.
    Rng shuffle_rng(seed, Stream::shuffle,
                    static_cast<std::uint64_t>(fold) * 65536 +
                        static_cast<std::uint64_t>(epoch));
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    std::uint64_t hit_sum = 0;
    std::size_t consumed = 0;
    while (consumed < order.size()) {
      const int count = static_cast<int>(
          std::min<std::size_t>(cfg.batch_size, order.size() - consumed));
      for (int b = 0; b < count; ++b) {
        const auto row = set.row(order[consumed + static_cast<std::size_t>(b)]);
        std::copy(row.begin(), row.end(),
                  batch_x.begin() + static_cast<std::size_t>(b) * dim);
        batch_y[b] = set.label[order[consumed + static_cast<std::size_t>(b)]];
      }
      int correct = 0;
      const double loss =
          net.loss_and_gradients(batch_x, batch_y, count, grads, ws, &correct);
      net.optimizer_step(cfg, lr, grads, opt);
      loss_sum += loss * count;
      hit_sum += static_cast<std::uint64_t>(correct);
      consumed += static_cast<std::size_t>(count);
    }

    const EvalResult val = evaluate(net, set, val_idx);
    EpochRow row;
    row.fold = fold;
    row.epoch = epoch;
    row.lr = lr;
    row.train_loss = loss_sum / static_cast<double>(order.size());
    row.train_acc = static_cast<double>(hit_sum) / static_cast<double>(order.size());
    row.val_acc = val.accuracy;
    row.parity_disagree = val.parity_disagree;
    row.simplicity_disagree = 100.0 * (1.0 - val.accuracy);
    result.epochs.push_back(row);
  }

  result.final_eval = evaluate(net, set, val_idx);
  return result;
}

TrainResult crossval(const FeaturizedSet& set, const SplitPlan& plan,
                     const MlpConfig& arch, const TrainConfig& cfg,
                     std::uint64_t seed) {
  if (plan.assignment.size() != set.count)
    throw std::invalid_argument("split plan does not match dataset size");

  TrainResult result;
  result.arch = arch;
  result.train = cfg;
  double acc_sum = 0.0;
  for (int fold = 0; fold < plan.fold_count; ++fold) {
    const auto train_idx = plan.train_indices(fold);
    const auto val_idx = plan.fold_indices(fold);
    result.folds.push_back(
        train_fold(set, train_idx, val_idx, arch, cfg, seed, fold));
    acc_sum += result.folds.back().final_eval.accuracy;
  }
  result.mean_val_accuracy = acc_sum / static_cast<double>(plan.fold_count);
  return result;
}

}  // namespace simplegrp

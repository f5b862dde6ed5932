#pragma once

// From-scratch dense feed-forward classifiers.
//
// Architecture: input -> hidden layers (ReLU or sigmoid) -> 2 softmax
// outputs (class 0 = simple, class 1 = not).  Loss is mean squared error on
// the softmax probabilities, averaged over the minibatch.  Optimizers:
// minibatch SGD with Nesterov momentum, or Adam; the base learning rate
// decays once per epoch by lr <- lr * (1 - gamma).
//
// Everything is deterministic for a fixed seed: weight init draws from a
// per-layer substream, minibatch order from a per-fold-per-epoch substream,
// and all accumulation orders are fixed at compile time.  Nothing here
// spawns threads; the worker knob of the surrounding pipeline only affects
// dataset construction.
//
// The scalar type is a template parameter: training runs in float; the
// finite-difference gradient checks in the test suite instantiate double.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "simplegrp/features.hpp"
#include "simplegrp/rng.hpp"

namespace simplegrp {

enum class Activation { relu, sigmoid };
enum class OptimizerKind { sgd, adam };  // sgd includes Nesterov momentum

const char* activation_name(Activation a);
const char* optimizer_name(OptimizerKind o);

struct MlpConfig {
  int input_dim = 0;
  std::vector<int> hidden;
  Activation activation = Activation::relu;

  static constexpr int kClasses = 2;
};

struct TrainConfig {
  OptimizerKind optimizer = OptimizerKind::sgd;
  double learning_rate = 0.01;
  double momentum = 0.0;  // Nesterov coefficient; 0 = plain SGD
  double lr_decay = 0.0;  // gamma in lr_{e+1} = lr_e * (1 - gamma)
  int epochs = 30;
  int batch_size = 32;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

// Base learning rate in effect during `epoch` (0-based).
inline double lr_schedule(double base_lr, double gamma, int epoch) {
  return base_lr * std::pow(1.0 - gamma, epoch);
}

namespace detail {

// SIMD-friendly primitives.  "omp simd" only licenses compile-time lane
// reordering, so results stay bit-identical from run to run.
template <typename T>
inline T dot(const T* a, const T* b, int n) {
  T acc = T(0);
#pragma omp simd reduction(+ : acc)
  for (int i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

template <typename T>
inline void axpy(T alpha, const T* x, T* y, int n) {
#pragma omp simd
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace detail

template <typename T>
class Mlp {
 public:
  explicit Mlp(const MlpConfig& config) : config_(config) {
    if (config.input_dim <= 0)
      throw std::invalid_argument("input dimension must be positive");
    for (int width : config.hidden)
      if (width <= 0) throw std::invalid_argument("hidden width must be positive");
    dims_.push_back(config.input_dim);
    for (int width : config.hidden) dims_.push_back(width);
    dims_.push_back(MlpConfig::kClasses);
    weights_.resize(layer_count());
    biases_.resize(layer_count());
    for (int l = 0; l < layer_count(); ++l) {
      weights_[l].assign(static_cast<std::size_t>(out_dim(l)) * in_dim(l), T(0));
      biases_[l].assign(static_cast<std::size_t>(out_dim(l)), T(0));
    }
  }

  const MlpConfig& config() const { return config_; }
  int layer_count() const { return static_cast<int>(dims_.size()) - 1; }
  int in_dim(int layer) const { return dims_[layer]; }
  int out_dim(int layer) const { return dims_[layer + 1]; }

  std::span<T> weights(int layer) { return weights_[layer]; }
  std::span<T> biases(int layer) { return biases_[layer]; }
  std::span<const T> weights(int layer) const { return weights_[layer]; }
  std::span<const T> biases(int layer) const { return biases_[layer]; }

  // Hidden layers: He-uniform +-sqrt(6/fan_in) for ReLU, +-0.05 for
  // sigmoid; output layer follows the hidden rule; biases start at zero.
  // Layer l draws from substream (seed, weight_init, l).
  void init_weights(std::uint64_t seed) {
    for (int l = 0; l < layer_count(); ++l) {
      Rng rng(seed, Stream::weight_init, static_cast<std::uint64_t>(l));
      const float limit =
          config_.activation == Activation::relu
              ? std::sqrt(6.0f / static_cast<float>(in_dim(l)))
              : 0.05f;
      for (T& w : weights_[l])
        w = static_cast<T>(rng.next_float(-limit, limit));
      for (T& b : biases_[l]) b = T(0);
    }
  }

  // Softmax probabilities for a single row.
  std::array<T, 2> predict(std::span<const T> x) const {
    if (static_cast<int>(x.size()) != config_.input_dim)
      throw std::invalid_argument("feature row has wrong dimension");
    std::vector<T> a(x.begin(), x.end()), z;
    for (int l = 0; l < layer_count(); ++l) {
      z.assign(static_cast<std::size_t>(out_dim(l)), T(0));
      for (int o = 0; o < out_dim(l); ++o)
        z[o] = biases_[l][o] +
               detail::dot(a.data(), weights_[l].data() +
                                         static_cast<std::size_t>(o) * in_dim(l),
                           in_dim(l));
      if (l + 1 < layer_count()) apply_activation(z.data(), out_dim(l));
      a = z;
    }
    return softmax2(a[0], a[1]);
  }

  // Predicted class with ties going to class 0 (simple).
  int predict_class(std::span<const T> x) const {
    const auto p = predict(x);
    return p[1] > p[0] ? 1 : 0;
  }

  struct Gradients {
    std::vector<std::vector<T>> weights, biases;

    explicit Gradients(const Mlp& net) {
      weights.resize(net.layer_count());
      biases.resize(net.layer_count());
      for (int l = 0; l < net.layer_count(); ++l) {
        weights[l].assign(net.weights_[l].size(), T(0));
        biases[l].assign(net.biases_[l].size(), T(0));
      }
    }
  };

  // Scratch space reused across minibatches.
  struct Workspace {
    std::vector<std::vector<T>> act;    // per layer boundary, batch-major
    std::vector<std::vector<T>> delta;  // dL/dz per layer
  };

  // Mean batch loss; fills grads with d(mean loss)/d(params).
  // x is batch-major (count rows of input_dim), labels in {0, 1}.
  double loss_and_gradients(std::span<const T> x,
                            std::span<const std::uint8_t> labels, int count,
                            Gradients& grads, Workspace& ws,
                            int* correct = nullptr) const {
    forward_batch(x, count, ws);
    const int layers = layer_count();
    const std::vector<T>& probs = ws.act[layers];

    // dL/dz at the softmax inputs: with g_j = 2(p_j - y_j)/count,
    // dL/dz_k = p_k * (g_k - sum_j g_j p_j).
    auto& dz = ws.delta[layers - 1];
    dz.assign(static_cast<std::size_t>(count) * 2, T(0));
    double loss = 0.0;
    int hits = 0;
    for (int b = 0; b < count; ++b) {
      const T p0 = probs[static_cast<std::size_t>(b) * 2];
      const T p1 = probs[static_cast<std::size_t>(b) * 2 + 1];
      const int y = labels[b];
      const T y0 = y == 0 ? T(1) : T(0);
      const T e0 = p0 - y0;
      const T e1 = p1 - (T(1) - y0);
      loss += static_cast<double>(e0) * static_cast<double>(e0) +
              static_cast<double>(e1) * static_cast<double>(e1);
      hits += (p1 > p0 ? 1 : 0) == y;
      const T g0 = T(2) * e0 / static_cast<T>(count);
      const T g1 = T(2) * e1 / static_cast<T>(count);
      const T gp = g0 * p0 + g1 * p1;
      dz[static_cast<std::size_t>(b) * 2] = p0 * (g0 - gp);
      dz[static_cast<std::size_t>(b) * 2 + 1] = p1 * (g1 - gp);
    }
    if (correct) *correct = hits;

    // Backward pass.
    for (int l = layers - 1; l >= 0; --l) {
      const int in = in_dim(l), out = out_dim(l);
      const std::vector<T>& a_in = ws.act[l];
      const std::vector<T>& dz_l = ws.delta[l];
      auto& gw = grads.weights[l];
      auto& gb = grads.biases[l];
      std::fill(gw.begin(), gw.end(), T(0));
      std::fill(gb.begin(), gb.end(), T(0));
      for (int b = 0; b < count; ++b) {
        const T* a_row = a_in.data() + static_cast<std::size_t>(b) * in;
        const T* dz_row = dz_l.data() + static_cast<std::size_t>(b) * out;
        for (int o = 0; o < out; ++o) {
          const T d = dz_row[o];
          if (d != T(0))
            detail::axpy(d, a_row, gw.data() + static_cast<std::size_t>(o) * in,
                         in);
          gb[o] += d;
        }
      }
      if (l == 0) break;
      // Propagate to the previous layer: da = W^T dz, then the activation
      // derivative at the stored post-activation values.
      auto& da = ws.delta[l - 1];
      da.assign(static_cast<std::size_t>(count) * in, T(0));
      for (int b = 0; b < count; ++b) {
        const T* dz_row = dz_l.data() + static_cast<std::size_t>(b) * out;
        T* da_row = da.data() + static_cast<std::size_t>(b) * in;
        for (int o = 0; o < out; ++o) {
          const T d = dz_row[o];
          if (d != T(0))
            detail::axpy(d, weights_[l].data() + static_cast<std::size_t>(o) * in,
                         da_row, in);
        }
      }
      const std::vector<T>& a_here = ws.act[l];
      if (config_.activation == Activation::relu) {
        for (std::size_t i = 0; i < da.size(); ++i)
          if (a_here[i] <= T(0)) da[i] = T(0);
      } else {
        for (std::size_t i = 0; i < da.size(); ++i)
          da[i] *= a_here[i] * (T(1) - a_here[i]);
      }
    }
    return loss / static_cast<double>(count);
  }

  // Optimizer state, one slot per parameter array.
  struct OptState {
    std::vector<std::vector<T>> vel_w, vel_b;    // SGD momentum
    std::vector<std::vector<T>> m_w, m_b, v_w, v_b;  // Adam moments
    std::int64_t step = 0;

    OptState(const Mlp& net, OptimizerKind kind) {
      const auto shape = [&](std::vector<std::vector<T>>& vec, bool weights) {
        vec.resize(net.layer_count());
        for (int l = 0; l < net.layer_count(); ++l)
          vec[l].assign(weights ? net.weights_[l].size() : net.biases_[l].size(),
                        T(0));
      };
      if (kind == OptimizerKind::sgd) {
        shape(vel_w, true);
        shape(vel_b, false);
      } else {
        shape(m_w, true);
        shape(m_b, false);
        shape(v_w, true);
        shape(v_b, false);
      }
    }
  };

  // Fills ws.act[0..layers]: act[0] = input copy, act[l+1] = layer l's
  // post-activation output (softmax probabilities at the top).  x is
  // batch-major with `count` rows.
  void forward_batch(std::span<const T> x, int count, Workspace& ws) const {
    const int layers = layer_count();
    ws.act.resize(layers + 1);
    ws.delta.resize(layers);
    ws.act[0].assign(x.begin(),
                     x.begin() + static_cast<std::size_t>(count) * in_dim(0));
    for (int l = 0; l < layers; ++l) {
      const int in = in_dim(l), out = out_dim(l);
      auto& z = ws.act[l + 1];
      z.assign(static_cast<std::size_t>(count) * out, T(0));
      const std::vector<T>& a = ws.act[l];
      for (int b = 0; b < count; ++b) {
        const T* a_row = a.data() + static_cast<std::size_t>(b) * in;
        T* z_row = z.data() + static_cast<std::size_t>(b) * out;
        for (int o = 0; o < out; ++o)
          z_row[o] = biases_[l][o] +
                     detail::dot(a_row,
                                 weights_[l].data() +
                                     static_cast<std::size_t>(o) * in,
                                 in);
      }
      if (l + 1 < layers) {
        apply_activation(z.data(), count * out);
      } else {
        for (int b = 0; b < count; ++b) {
          const auto p = softmax2(z[static_cast<std::size_t>(b) * 2],
                                  z[static_cast<std::size_t>(b) * 2 + 1]);
          z[static_cast<std::size_t>(b) * 2] = p[0];
          z[static_cast<std::size_t>(b) * 2 + 1] = p[1];
        }
      }
    }
  }

  // One optimizer step from the filled gradients.
  void optimizer_step(const TrainConfig& cfg, double lr, Gradients& grads,
                      OptState& state) {
    if (cfg.optimizer == OptimizerKind::sgd) {
      const T mu = static_cast<T>(cfg.momentum);
      const T step_lr = static_cast<T>(lr);
      for (int l = 0; l < layer_count(); ++l) {
        sgd_update(weights_[l], grads.weights[l], state.vel_w[l], mu, step_lr);
        sgd_update(biases_[l], grads.biases[l], state.vel_b[l], mu, step_lr);
      }
    } else {
      ++state.step;
      const double bc1 = 1.0 - std::pow(cfg.adam_beta1, state.step);
      const double bc2 = 1.0 - std::pow(cfg.adam_beta2, state.step);
      for (int l = 0; l < layer_count(); ++l) {
        adam_update(weights_[l], grads.weights[l], state.m_w[l], state.v_w[l],
                    cfg, lr, bc1, bc2);
        adam_update(biases_[l], grads.biases[l], state.m_b[l], state.v_b[l],
                    cfg, lr, bc1, bc2);
      }
    }
  }

 private:
  static std::array<T, 2> softmax2(T z0, T z1) {
    const T m = z0 > z1 ? z0 : z1;
    const T e0 = std::exp(z0 - m);
    const T e1 = std::exp(z1 - m);
    const T s = e0 + e1;
    return {e0 / s, e1 / s};
  }

  void apply_activation(T* z, int n) const {
    if (config_.activation == Activation::relu) {
      for (int i = 0; i < n; ++i) z[i] = z[i] > T(0) ? z[i] : T(0);
    } else {
      for (int i = 0; i < n; ++i) z[i] = T(1) / (T(1) + std::exp(-z[i]));
    }
  }

  static void sgd_update(std::vector<T>& w, const std::vector<T>& g,
                         std::vector<T>& vel, T mu, T lr) {
    // Nesterov update in lookahead form: v <- mu*v - lr*g,
    // w <- w + mu*v - lr*g.  With mu = 0 this is plain SGD.
    T* wp = w.data();
    const T* gp = g.data();
    T* vp = vel.data();
    const int n = static_cast<int>(w.size());
#pragma omp simd
    for (int i = 0; i < n; ++i) {
      const T v = mu * vp[i] - lr * gp[i];
      vp[i] = v;
      wp[i] += mu * v - lr * gp[i];
    }
  }

  static void adam_update(std::vector<T>& w, const std::vector<T>& g,
                          std::vector<T>& m, std::vector<T>& v,
                          const TrainConfig& cfg, double lr, double bc1,
                          double bc2) {
    const T b1 = static_cast<T>(cfg.adam_beta1);
    const T b2 = static_cast<T>(cfg.adam_beta2);
    const T eps = static_cast<T>(cfg.adam_epsilon);
    const T alpha = static_cast<T>(lr);
    const T inv_bc1 = static_cast<T>(1.0 / bc1);
    const T inv_bc2 = static_cast<T>(1.0 / bc2);
    T* wp = w.data();
    const T* gp = g.data();
    T* mp = m.data();
    T* vp = v.data();
    const int n = static_cast<int>(w.size());
#pragma omp simd
    for (int i = 0; i < n; ++i) {
      mp[i] = b1 * mp[i] + (T(1) - b1) * gp[i];
      vp[i] = b2 * vp[i] + (T(1) - b2) * gp[i] * gp[i];
      const T mhat = mp[i] * inv_bc1;
      const T vhat = vp[i] * inv_bc2;
      wp[i] -= alpha * mhat / (std::sqrt(vhat) + eps);
    }
  }

  MlpConfig config_;
  std::vector<int> dims_;
  std::vector<std::vector<T>> weights_;  // [layer][out * in], row-major by out
  std::vector<std::vector<T>> biases_;
};

extern template class Mlp<float>;
extern template class Mlp<double>;

// Training harness (float).

struct EpochRow {
  int fold = 0;
  int epoch = 0;
  double lr = 0.0;
  double train_loss = 0.0;
  double train_acc = 0.0;      // fraction
  double val_acc = 0.0;        // fraction
  double parity_disagree = 0.0;     // % of val rows where model != parity
  double simplicity_disagree = 0.0; // % of val rows where model != truth
};

struct Confusion {
  // counts[true_class][predicted_class]
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
};

struct EvalResult {
  double accuracy = 0.0;
  std::array<double, 2> class_accuracy{};  // [simple, non-simple]
  Confusion confusion;
  double parity_disagree = 0.0;
};

struct FoldResult {
  int fold = 0;
  std::size_t train_size = 0;
  std::size_t val_size = 0;
  EvalResult final_eval;
  std::vector<EpochRow> epochs;
};

struct TrainResult {
  MlpConfig arch;
  TrainConfig train;
  std::vector<FoldResult> folds;
  double mean_val_accuracy = 0.0;
};

// Evaluates on the rows of `set` selected by `indices` (all rows when
// empty).  Throws std::domain_error on an empty evaluation set.
EvalResult evaluate(const Mlp<float>& net, const FeaturizedSet& set,
                    std::span<const std::uint32_t> indices = {});

// Trains one model on the index split; seed feeds weight init and epoch
// shuffles (substream index = fold).
FoldResult train_fold(const FeaturizedSet& set,
                      std::span<const std::uint32_t> train_idx,
                      std::span<const std::uint32_t> val_idx,
                      const MlpConfig& arch, const TrainConfig& cfg,
                      std::uint64_t seed, int fold);

// K-fold cross-validation over the plan; folds run sequentially.
TrainResult crossval(const FeaturizedSet& set, const SplitPlan& plan,
                     const MlpConfig& arch, const TrainConfig& cfg,
                     std::uint64_t seed);

}  // namespace simplegrp

#include "ffn/train/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "ffn/core/errors.hpp"
#include "ffn/core/rng.hpp"
#include "ffn/train/adam.hpp"
#include "ffn/train/early_stopping.hpp"

namespace ffn {

void TrainConfig::validate() const {
  if (patience < 1) throw UsageError("patience must be >= 1");
  if (batch_size < 1) throw UsageError("batch size must be >= 1");
  if (!(lr > 0)) throw UsageError("learning rate must be > 0");
}

float nll_loss(const LogProb& logp, Label gold) {
  return -logp[static_cast<std::size_t>(gold)];
}

void nll_backward(const LogProb& logp, Label gold, float scale, float* dlogits) {
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    float p = std::exp(logp[c]);
    dlogits[c] = scale * (p - (c == static_cast<std::size_t>(gold) ? 1.0f : 0.0f));
  }
}

std::string TrainHistory::serialize() const {
  std::string out = "epoch\ttrain_loss\tval_loss\tval_accuracy\n";
  char buf[128];
  for (std::size_t e = 0; e < epochs.size(); ++e) {
    std::snprintf(buf, sizeof(buf), "%zu\t%.9e\t%.9e\t%.9e\n", e + 1,
                  epochs[e].train_loss, epochs[e].val_loss, epochs[e].val_accuracy);
    out += buf;
  }
  out += "best_epoch\t" + std::to_string(best_epoch) + "\n";
  return out;
}

void TrainHistory::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write history to " + path);
  f << serialize();
}

namespace {

struct ValScore {
  double loss = 0, acc = 0;
};

ValScore validate_split(TrainableTask& task) {
  ValScore out;
  const std::size_t n = task.val_size();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const LogProb lp = task.infer_val(i);
    const Label gold = task.val_gold(i);
    out.loss += nll_loss(lp, gold);
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
      if (lp[c] > lp[best]) best = c;
    }
    if (best == static_cast<std::size_t>(gold)) ++correct;
  }
  out.loss /= static_cast<double>(n);
  out.acc = static_cast<double>(correct) / static_cast<double>(n);
  return out;
}

}  // namespace

TrainHistory train(TrainableTask& task, const TrainConfig& config) {
  config.validate();
  if (task.train_size() == 0) throw TrainError("empty training split");
  if (task.val_size() == 0) throw TrainError("empty validation split");

  Adam adam(config.lr, config.beta1, config.beta2, config.eps);
  EarlyStopping stopper(config.patience);
  Rng rng(config.seed);
  TrainHistory history;

  auto params = task.parameters();
  std::vector<Tensor<float>> best_params;
  auto snapshot = [&] {
    best_params.clear();
    for (const auto& p : params) best_params.push_back(*p.value);
  };

  std::vector<std::size_t> order(task.train_size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const float scale = 1.0f / static_cast<float>(end - start);
      task.zero_grad();
      for (std::size_t k = start; k < end; ++k) {
        const LogProb lp = task.train_forward_backward(order[k], scale);
        const float loss = nll_loss(lp, task.train_gold(order[k]));
        if (!std::isfinite(loss)) {
          throw TrainError("non-finite loss at epoch " + std::to_string(epoch) +
                           ", batch starting at sample " + std::to_string(start));
        }
        epoch_loss += loss;
      }
      adam.step(params);
    }
    epoch_loss /= static_cast<double>(order.size());

    const ValScore val = validate_split(task);
    if (!std::isfinite(val.loss)) {
      throw TrainError("non-finite validation loss at epoch " + std::to_string(epoch));
    }
    history.epochs.push_back({epoch_loss, val.loss, val.acc});

    const double prev_best = stopper.best_loss();
    const bool stop = stopper.update(epoch, val.loss);
    if (val.loss < prev_best) snapshot();
    if (stop) break;
  }

  history.best_epoch = stopper.best_epoch();
  // Restore-best: leave the model at the lowest-validation-loss parameters.
  if (!best_params.empty()) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i].value->data = best_params[i].data;
  }
  return history;
}

MetricsReport evaluate_task(TrainableTask& task, bool validation_split) {
  const std::size_t n = validation_split ? task.val_size() : task.train_size();
  if (n == 0) throw DataError("evaluate: empty split");
  std::vector<Label> preds, golds;
  preds.reserve(n);
  golds.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const LogProb lp = validation_split ? task.infer_val(i) : task.infer_train(i);
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
      if (lp[c] > lp[best]) best = c;
    }
    preds.push_back(static_cast<Label>(best));
    golds.push_back(validation_split ? task.val_gold(i) : task.train_gold(i));
  }
  return compute_report(preds, golds);
}

}  // namespace ffn

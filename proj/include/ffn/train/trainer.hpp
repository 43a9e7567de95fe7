#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ffn/core/tensor.hpp"
#include "ffn/data/labels.hpp"
#include "ffn/eval/metrics.hpp"

namespace ffn {

struct TrainConfig {
  double lr = 1e-3;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  std::size_t batch_size = 64;
  std::size_t max_epochs = 50;
  std::size_t patience = 3;
  std::uint64_t seed = 0;

  void validate() const;  // throws UsageError
};

struct TrainHistory {
  struct Epoch {
    double train_loss = 0, val_loss = 0, val_accuracy = 0;
  };
  std::vector<Epoch> epochs;
  std::size_t best_epoch = 0;  // 1-based index of the lowest validation loss

  // Deterministic text form: fixed header plus one tab-separated row per
  // epoch. Identical histories serialize to identical bytes.
  std::string serialize() const;
  void save(const std::string& path) const;
};

using LogProb = std::array<float, kNumClasses>;

// -log p[gold].
float nll_loss(const LogProb& logp, Label gold);

// A model bound to an encoded dataset. The trainer drives this interface so
// the loop is identical across architectures. Sample indices are positions
// in the task's train/validation sets.
class TrainableTask {
 public:
  virtual ~TrainableTask() = default;

  virtual std::size_t train_size() const = 0;
  virtual std::size_t val_size() const = 0;
  virtual Label train_gold(std::size_t i) const = 0;
  virtual Label val_gold(std::size_t i) const = 0;

  // Forward one training sample and accumulate gradients of
  // scale * nll(logp, gold) into the parameter grad buffers.
  virtual LogProb train_forward_backward(std::size_t i, float scale) = 0;

  virtual LogProb infer_train(std::size_t i) = 0;
  virtual LogProb infer_val(std::size_t i) = 0;

  virtual std::vector<ParamRef<float>> parameters() = 0;
  virtual void zero_grad() = 0;
};

// Adam + NLL + early stopping (patience epochs without validation-loss
// improvement, best-epoch parameters restored on return). Batches are drawn
// in a seeded shuffle per epoch. Throws TrainError on non-finite loss.
TrainHistory train(TrainableTask& task, const TrainConfig& config);

// Converts dlogits for one sample: softmax(logp) minus one-hot, scaled.
void nll_backward(const LogProb& logp, Label gold, float scale, float* dlogits);

// Full-split inference -> metric report.
MetricsReport evaluate_task(TrainableTask& task, bool validation_split);

}  // namespace ffn

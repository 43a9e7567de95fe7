#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffn/core/kvfile.hpp"
#include "ffn/data/dataset.hpp"
#include "ffn/models/bert.hpp"
#include "ffn/models/bilstm_cnn.hpp"
#include "ffn/models/multimodal.hpp"
#include "ffn/models/text_cnn.hpp"
#include "ffn/text/embedding.hpp"
#include "ffn/train/trainer.hpp"

namespace ffn {

struct EncodedText {
  std::vector<TokenSequence> seqs;
  std::vector<Label> golds;
};

Vocabulary build_vocab_from_samples(std::span<const LabeledSample> samples,
                                    const CleaningConfig& cleaning);

EncodedText encode_samples(std::span<const LabeledSample> samples, const Vocabulary& vocab,
                           const CleaningConfig& cleaning);

// Trainable word-embedding table. In static mode the table is excluded from
// the optimizer's parameter list and stays bitwise unchanged; in dynamic
// mode it is trained like any other parameter, with the pad row excluded
// from gradient scatter so it stays zero.
struct EmbeddingBundle {
  EmbeddingMatrix matrix;
  Tensor<float> grad;
  EmbeddingMode mode = EmbeddingMode::Static;

  EmbeddingBundle() = default;
  EmbeddingBundle(EmbeddingMatrix m, EmbeddingMode md)
      : matrix(std::move(m)), grad(matrix.weights.shape), mode(md) {}

  bool dynamic() const { return mode == EmbeddingMode::Dynamic; }
  ParamRef<float> param() { return {"embedding", &matrix.weights, &grad}; }
};

// Task for the sequence classifiers (text CNN and BiLSTM-CNN share the
// model interface).
template <class Model>
class SeqClassifierTask : public TrainableTask {
 public:
  SeqClassifierTask(Model model, EmbeddingBundle emb, EncodedText train_set,
                    EncodedText val_set)
      : model_(std::move(model)),
        emb_(std::move(emb)),
        train_(std::move(train_set)),
        val_(std::move(val_set)) {}

  std::size_t train_size() const override { return train_.seqs.size(); }
  std::size_t val_size() const override { return val_.seqs.size(); }
  Label train_gold(std::size_t i) const override { return train_.golds[i]; }
  Label val_gold(std::size_t i) const override { return val_.golds[i]; }

  LogProb train_forward_backward(std::size_t i, float scale) override {
    const Tensor<float> emb = lookup(train_.seqs[i], emb_.matrix);
    model_.forward(emb, cache_);
    LogProb lp = to_logprob(cache_.logp);
    float dlogits[kNumClasses];
    nll_backward(lp, train_.golds[i], scale, dlogits);
    if (emb_.dynamic()) {
      Tensor<float> demb(emb.shape);
      model_.backward(cache_, dlogits, demb.ptr());
      kernels::embedding_scatter_grad(train_.seqs[i].ids.data(), kSeqLen, demb.ptr(),
                                      emb_.matrix.weights.dim(1), emb_.grad.ptr());
    } else {
      model_.backward(cache_, dlogits, nullptr);
    }
    return lp;
  }

  LogProb infer_train(std::size_t i) override { return infer(train_.seqs[i]); }
  LogProb infer_val(std::size_t i) override { return infer(val_.seqs[i]); }

  LogProb infer(const TokenSequence& seq) {
    const Tensor<float> emb = lookup(seq, emb_.matrix);
    model_.forward(emb, cache_);
    return to_logprob(cache_.logp);
  }

  std::vector<ParamRef<float>> parameters() override {
    auto out = model_.params();
    if (emb_.dynamic()) out.push_back(emb_.param());
    return out;
  }

  std::vector<ParamRef<float>> checkpoint_parameters() {
    auto out = model_.params();
    out.push_back(emb_.param());  // saved regardless of training mode
    return out;
  }

  void zero_grad() override {
    model_.zero_grad();
    emb_.grad.zero();
  }

  Model& model() { return model_; }
  EmbeddingBundle& embedding() { return emb_; }

 private:
  static LogProb to_logprob(const std::vector<float>& v) {
    LogProb lp{};
    for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = v[c];
    return lp;
  }

  Model model_;
  EmbeddingBundle emb_;
  EncodedText train_, val_;
  typename Model::Cache cache_;
};

using TextCnnTask = SeqClassifierTask<TextCnnT<float>>;
using BiLstmCnnTask = SeqClassifierTask<BiLstmCnnT<float>>;

// Early-fusion task; image tensors are materialized up front. Samples whose
// image is missing or undecodable are excluded and counted.
class MultimodalTask : public TrainableTask {
 public:
  struct SplitData {
    std::vector<TokenSequence> seqs;
    std::vector<Tensor<float>> images;
    std::vector<Label> golds;
    std::size_t excluded = 0;
  };

  // base_dir resolves relative image refs.
  static SplitData load_split(std::span<const LabeledSample> samples, const Vocabulary& vocab,
                              const CleaningConfig& cleaning, const std::string& base_dir,
                              std::size_t image_size);

  MultimodalTask(MultimodalT<float> model, EmbeddingBundle emb, SplitData train_set,
                 SplitData val_set)
      : model_(std::move(model)),
        emb_(std::move(emb)),
        train_(std::move(train_set)),
        val_(std::move(val_set)) {}

  std::size_t train_size() const override { return train_.seqs.size(); }
  std::size_t val_size() const override { return val_.seqs.size(); }
  Label train_gold(std::size_t i) const override { return train_.golds[i]; }
  Label val_gold(std::size_t i) const override { return val_.golds[i]; }

  LogProb train_forward_backward(std::size_t i, float scale) override;
  LogProb infer_train(std::size_t i) override;
  LogProb infer_val(std::size_t i) override;
  LogProb infer(const TokenSequence& seq, const Tensor<float>& img);

  std::vector<ParamRef<float>> parameters() override;
  std::vector<ParamRef<float>> checkpoint_parameters();
  void zero_grad() override;

  MultimodalT<float>& model() { return model_; }
  EmbeddingBundle& embedding() { return emb_; }
  const SplitData& train_data() const { return train_; }

 private:
  MultimodalT<float> model_;
  EmbeddingBundle emb_;
  SplitData train_, val_;
  MultimodalT<float>::Cache cache_;
};

// Transformer head task: the encoder is injected and may expose no
// trainable parameters (the stub does not), in which case its pooled
// outputs are precomputed once.
class BertTask : public TrainableTask {
 public:
  struct SplitData {
    std::vector<WordPieceEncoding> encodings;
    std::vector<Label> golds;
  };

  static SplitData encode_split(std::span<const LabeledSample> samples,
                                const WordPieceVocab& vocab, std::size_t max_len);

  BertTask(BertHeadT<float> head, std::shared_ptr<BertEncoder> encoder, SplitData train_set,
           SplitData val_set);

  std::size_t train_size() const override { return train_.encodings.size(); }
  std::size_t val_size() const override { return val_.encodings.size(); }
  Label train_gold(std::size_t i) const override { return train_.golds[i]; }
  Label val_gold(std::size_t i) const override { return val_.golds[i]; }

  LogProb train_forward_backward(std::size_t i, float scale) override;
  LogProb infer_train(std::size_t i) override;
  LogProb infer_val(std::size_t i) override;
  LogProb infer(const WordPieceEncoding& enc);

  std::vector<ParamRef<float>> parameters() override;
  void zero_grad() override;

  BertHeadT<float>& head() { return head_; }
  BertEncoder& encoder() { return *encoder_; }

 private:
  const std::vector<float>& pooled_train(std::size_t i);
  const std::vector<float>& pooled_val(std::size_t i);

  BertHeadT<float> head_;
  std::shared_ptr<BertEncoder> encoder_;
  SplitData train_, val_;
  bool cache_pooled_ = false;
  std::vector<std::vector<float>> pooled_train_, pooled_val_;
  std::vector<float> scratch_;
  BertHeadT<float>::Cache cache_;
};

}  // namespace ffn

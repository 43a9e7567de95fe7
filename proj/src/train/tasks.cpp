#include "ffn/train/tasks.hpp"

#include <filesystem>
#include <iostream>

#include "ffn/core/errors.hpp"
#include "ffn/data/image.hpp"

namespace ffn {

namespace fs = std::filesystem;

Vocabulary build_vocab_from_samples(std::span<const LabeledSample> samples,
                                    const CleaningConfig& cleaning) {
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(samples.size());
  for (const auto& s : samples) corpus.push_back(clean_text(s.title, cleaning));
  return Vocabulary::build(corpus);
}

EncodedText encode_samples(std::span<const LabeledSample> samples, const Vocabulary& vocab,
                           const CleaningConfig& cleaning) {
  EncodedText out;
  out.seqs.reserve(samples.size());
  out.golds.reserve(samples.size());
  for (const auto& s : samples) {
    out.seqs.push_back(encode(clean_text(s.title, cleaning), vocab));
    out.golds.push_back(s.label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// MultimodalTask
// ---------------------------------------------------------------------------

MultimodalTask::SplitData MultimodalTask::load_split(std::span<const LabeledSample> samples,
                                                     const Vocabulary& vocab,
                                                     const CleaningConfig& cleaning,
                                                     const std::string& base_dir,
                                                     std::size_t image_size) {
  SplitData out;
  for (const auto& s : samples) {
    if (!s.image_ref) {
      ++out.excluded;
      continue;
    }
    const fs::path path =
        base_dir.empty() ? fs::path(*s.image_ref) : fs::path(base_dir) / *s.image_ref;
    Tensor<float> img;
    try {
      img = load_and_resize(path.string(), image_size);
    } catch (const DataError&) {
      ++out.excluded;
      continue;
    }
    out.seqs.push_back(encode(clean_text(s.title, cleaning), vocab));
    out.images.push_back(std::move(img));
    out.golds.push_back(s.label);
  }
  if (out.excluded > 0) {
    std::cerr << "multimodal: excluded " << out.excluded
              << " samples with missing/undecodable images\n";
  }
  return out;
}

LogProb MultimodalTask::train_forward_backward(std::size_t i, float scale) {
  const Tensor<float> emb = lookup(train_.seqs[i], emb_.matrix);
  model_.forward(emb, train_.images[i], cache_);
  LogProb lp{};
  for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache_.logp[c];
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

LogProb MultimodalTask::infer(const TokenSequence& seq, const Tensor<float>& img) {
  const Tensor<float> emb = lookup(seq, emb_.matrix);
  model_.forward(emb, img, cache_);
  LogProb lp{};
  for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache_.logp[c];
  return lp;
}

LogProb MultimodalTask::infer_train(std::size_t i) {
  return infer(train_.seqs[i], train_.images[i]);
}

LogProb MultimodalTask::infer_val(std::size_t i) { return infer(val_.seqs[i], val_.images[i]); }

std::vector<ParamRef<float>> MultimodalTask::parameters() {
  auto out = model_.params();
  if (emb_.dynamic()) out.push_back(emb_.param());
  return out;
}

std::vector<ParamRef<float>> MultimodalTask::checkpoint_parameters() {
  auto out = model_.params();
  out.push_back(emb_.param());
  return out;
}

void MultimodalTask::zero_grad() {
  model_.zero_grad();
  emb_.grad.zero();
}

// ---------------------------------------------------------------------------
// BertTask
// ---------------------------------------------------------------------------

BertTask::SplitData BertTask::encode_split(std::span<const LabeledSample> samples,
                                           const WordPieceVocab& vocab, std::size_t max_len) {
  SplitData out;
  out.encodings.reserve(samples.size());
  out.golds.reserve(samples.size());
  for (const auto& s : samples) {
    out.encodings.push_back(bert_encode(s.title, vocab, max_len));
    out.golds.push_back(s.label);
  }
  return out;
}

BertTask::BertTask(BertHeadT<float> head, std::shared_ptr<BertEncoder> encoder,
                   SplitData train_set, SplitData val_set)
    : head_(std::move(head)),
      encoder_(std::move(encoder)),
      train_(std::move(train_set)),
      val_(std::move(val_set)) {
  // With a frozen encoder the pooled representations never change, so they
  // are computed once.
  cache_pooled_ = encoder_->parameters().empty();
  if (cache_pooled_) {
    pooled_train_.reserve(train_.encodings.size());
    for (const auto& e : train_.encodings) pooled_train_.push_back(encoder_->encode(e));
    pooled_val_.reserve(val_.encodings.size());
    for (const auto& e : val_.encodings) pooled_val_.push_back(encoder_->encode(e));
  }
}

const std::vector<float>& BertTask::pooled_train(std::size_t i) {
  if (cache_pooled_) return pooled_train_[i];
  scratch_ = encoder_->encode(train_.encodings[i]);
  return scratch_;
}

const std::vector<float>& BertTask::pooled_val(std::size_t i) {
  if (cache_pooled_) return pooled_val_[i];
  scratch_ = encoder_->encode(val_.encodings[i]);
  return scratch_;
}

LogProb BertTask::train_forward_backward(std::size_t i, float scale) {
  head_.forward(pooled_train(i), cache_);
  LogProb lp{};
  for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache_.logp[c];
  float dlogits[kNumClasses];
  nll_backward(lp, train_.golds[i], scale, dlogits);
  head_.backward(cache_, dlogits);
  return lp;
}

LogProb BertTask::infer(const WordPieceEncoding& enc) {
  head_.forward(encoder_->encode(enc), cache_);
  LogProb lp{};
  for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache_.logp[c];
  return lp;
}

LogProb BertTask::infer_train(std::size_t i) {
  head_.forward(pooled_train(i), cache_);
  LogProb lp{};
  for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache_.logp[c];
  return lp;
}

LogProb BertTask::infer_val(std::size_t i) {
  head_.forward(pooled_val(i), cache_);
  LogProb lp{};
  for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache_.logp[c];
  return lp;
}

std::vector<ParamRef<float>> BertTask::parameters() {
  auto out = head_.params();
  auto enc = encoder_->parameters();
  out.insert(out.end(), enc.begin(), enc.end());
  return out;
}

void BertTask::zero_grad() { head_.zero_grad(); }

}  // namespace ffn

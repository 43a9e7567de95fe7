#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffn/core/rng.hpp"
#include "ffn/core/tensor.hpp"
#include "ffn/data/labels.hpp"

namespace ffn {

inline constexpr std::size_t kBertMaxLen = 32;
inline constexpr std::size_t kBertDim = 768;

// Subword vocabulary: one token per line, line number = id. Requires the
// [PAD], [UNK], [CLS] and [SEP] entries.
class WordPieceVocab {
 public:
  static WordPieceVocab load(const std::string& path);        // throws DataError
  static WordPieceVocab from_tokens(const std::vector<std::string>& tokens);

  int id(const std::string& token) const;  // -1 if absent
  int pad_id() const { return pad_id_; }
  int unk_id() const { return unk_id_; }
  int cls_id() const { return cls_id_; }
  int sep_id() const { return sep_id_; }
  std::size_t size() const { return tokens_.size(); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> token_to_id_;
  int pad_id_ = -1, unk_id_ = -1, cls_id_ = -1, sep_id_ = -1;
  void index();
};

struct WordPieceEncoding {
  std::vector<int> ids;   // length max_len; [CLS] first, one [SEP] at the
                          // last non-pad position, 0-padded tail
  std::vector<int> mask;  // 1 on non-pad positions, 0 on padding
};

// Lowercases, splits punctuation, applies greedy longest-match WordPiece
// ("##" continuation pieces), truncates to max_len - 2 subwords, then wraps
// in [CLS]/[SEP] and pads.
WordPieceEncoding bert_encode(const std::string& raw, const WordPieceVocab& vocab,
                              std::size_t max_len = kBertMaxLen);

// The pretrained encoder is an external component behind this interface:
// (ids, mask) -> pooled 768-dim representation. Implementations must be
// deterministic in inference mode.
class BertEncoder {
 public:
  virtual ~BertEncoder() = default;
  virtual std::vector<float> encode(const WordPieceEncoding& enc) const = 0;
  virtual std::size_t dim() const { return kBertDim; }
  // Trainable parameters, if the implementation exposes any.
  virtual std::vector<ParamRef<float>> parameters() { return {}; }
  virtual std::string name() const = 0;
};

// Deterministic stand-in used by the tests and by desk-scale runs: a fixed
// hash-based projection of the token ids. No trainable parameters.
class StubBertEncoder : public BertEncoder {
 public:
  std::vector<float> encode(const WordPieceEncoding& enc) const override;
  std::string name() const override { return "stub"; }
};

// "stub" -> StubBertEncoder. Anything else is treated as an asset directory
// holding pretrained encoder weights; resolving one is not implemented
// in-repo, so a missing or unrecognized directory raises DataError with the
// expected layout in the message.
std::unique_ptr<BertEncoder> make_bert_encoder(const std::string& spec);

// Linear classification head over the pooled encoder output.
template <class T>
struct BertHeadT {
  std::size_t in_dim, classes;
  Tensor<T> w, b, dw, db;

  explicit BertHeadT(std::size_t in = kBertDim, std::size_t cls = kNumClasses)
      : in_dim(in), classes(cls), w({cls, in}), b({cls}), dw({cls, in}), db({cls}) {}

  void init(Rng& rng) {
    const double s = 1.0 / std::sqrt(static_cast<double>(in_dim));
    for (auto& v : w.data) v = static_cast<T>(rng.uniform(-s, s));
    b.zero();
  }

  struct Cache {
    std::vector<T> pooled, logits, logp;
  };

  void forward(const std::vector<T>& pooled, Cache& cache) const;
  void backward(const Cache& cache, const T* dlogits);

  void zero_grad() {
    dw.zero();
    db.zero();
  }

  std::vector<ParamRef<T>> params() {
    return {{"head.weight", &w, &dw}, {"head.bias", &b, &db}};
  }
};

}  // namespace ffn

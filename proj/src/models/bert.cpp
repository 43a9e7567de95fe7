#include "ffn/models/bert.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>

#include "ffn/core/errors.hpp"
#include "ffn/core/hash.hpp"
#include "ffn/kernels/kernels.hpp"

namespace ffn {

void WordPieceVocab::index() {
  token_to_id_.clear();
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    token_to_id_.emplace(tokens_[i], static_cast<int>(i));
  }
  auto find = [&](const char* t) {
    auto it = token_to_id_.find(t);
    return it == token_to_id_.end() ? -1 : it->second;
  };
  pad_id_ = find("[PAD]");
  unk_id_ = find("[UNK]");
  cls_id_ = find("[CLS]");
  sep_id_ = find("[SEP]");
  if (pad_id_ < 0 || unk_id_ < 0 || cls_id_ < 0 || sep_id_ < 0) {
    throw DataError("wordpiece vocabulary must define [PAD], [UNK], [CLS] and [SEP]");
  }
}

WordPieceVocab WordPieceVocab::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot read wordpiece vocabulary from " + path);
  WordPieceVocab v;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    v.tokens_.push_back(line);
  }
  v.index();
  return v;
}

WordPieceVocab WordPieceVocab::from_tokens(const std::vector<std::string>& tokens) {
  WordPieceVocab v;
  v.tokens_ = tokens;
  v.index();
  return v;
}

int WordPieceVocab::id(const std::string& token) const {
  auto it = token_to_id_.find(token);
  return it == token_to_id_.end() ? -1 : it->second;
}

namespace {

// Basic tokenization in the uncased style: lowercase ASCII, whitespace
// split, every punctuation byte becomes its own token.
std::vector<std::string> basic_tokenize(const std::string& raw) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      flush();
    } else if (c < 128 && std::ispunct(c)) {
      flush();
      out.emplace_back(1, static_cast<char>(c));
    } else {
      cur.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  flush();
  return out;
}

// Greedy longest-match-first wordpiece split of one token. Returns false if
// any position fails to match.
bool wordpiece_split(const std::string& word, const WordPieceVocab& vocab,
                     std::vector<int>& out) {
  std::size_t start = 0;
  std::vector<int> pieces;
  while (start < word.size()) {
    std::size_t end = word.size();
    int match = -1;
    while (end > start) {
      std::string piece = word.substr(start, end - start);
      if (start > 0) piece = "##" + piece;
      match = vocab.id(piece);
      if (match >= 0) break;
      --end;
    }
    if (match < 0) return false;
    pieces.push_back(match);
    start = end;
  }
  out.insert(out.end(), pieces.begin(), pieces.end());
  return true;
}

}  // namespace

WordPieceEncoding bert_encode(const std::string& raw, const WordPieceVocab& vocab,
                              std::size_t max_len) {
  std::vector<int> subwords;
  for (const std::string& word : basic_tokenize(raw)) {
    std::vector<int> pieces;
    if (word.size() > 100 || !wordpiece_split(word, vocab, pieces)) {
      subwords.push_back(vocab.unk_id());
    } else {
      subwords.insert(subwords.end(), pieces.begin(), pieces.end());
    }
  }
  if (subwords.size() > max_len - 2) subwords.resize(max_len - 2);

  WordPieceEncoding enc;
  enc.ids.assign(max_len, vocab.pad_id());
  enc.mask.assign(max_len, 0);
  std::size_t pos = 0;
  enc.ids[pos++] = vocab.cls_id();
  for (int id : subwords) enc.ids[pos++] = id;
  enc.ids[pos++] = vocab.sep_id();
  for (std::size_t i = 0; i < pos; ++i) enc.mask[i] = 1;
  return enc;
}

std::vector<float> StubBertEncoder::encode(const WordPieceEncoding& enc) const {
  std::vector<float> out(dim(), 0.0f);
  std::size_t n = 0;
  for (std::size_t t = 0; t < enc.ids.size(); ++t) {
    if (enc.mask[t] == 0) continue;
    ++n;
    const auto token = static_cast<std::uint64_t>(enc.ids[t]);
    for (std::size_t j = 0; j < dim(); ++j) {
      const std::uint64_t h = mix64(token * 0x9e3779b97f4a7c15ull + (t << 32) + j);
      // Map to [-1, 1].
      out[j] += static_cast<float>(static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0);
    }
  }
  if (n > 0) {
    for (auto& v : out) v /= static_cast<float>(n);
  }
  return out;
}

std::unique_ptr<BertEncoder> make_bert_encoder(const std::string& spec) {
  if (spec.empty() || spec == "stub") return std::make_unique<StubBertEncoder>();
  namespace fs = std::filesystem;
  const fs::path dir(spec);
  if (!fs::is_directory(dir)) {
    throw DataError("encoder assets not found: '" + spec +
                    "' is not a directory (expected pretrained encoder assets, or 'stub')");
  }
  throw DataError(
      "encoder assets at '" + spec +
      "' cannot be loaded: no in-repo pretrained encoder runtime is provided; "
      "use 'stub' or supply an external encoder implementation");
}

template <class T>
void BertHeadT<T>::forward(const std::vector<T>& pooled, Cache& cache) const {
  cache.pooled = pooled;
  cache.logits.assign(classes, T(0));
  kernels::dense_forward(pooled.data(), in_dim, w.ptr(), b.ptr(), classes,
                         cache.logits.data());
  cache.logp.assign(classes, T(0));
  kernels::log_softmax(cache.logits.data(), classes, cache.logp.data());
}

template <class T>
void BertHeadT<T>::backward(const Cache& cache, const T* dlogits) {
  kernels::dense_backward(cache.pooled.data(), in_dim, w.ptr(), classes, dlogits,
                          dw.ptr(), db.ptr(), nullptr);
}

template struct BertHeadT<float>;
template struct BertHeadT<double>;

}  // namespace ffn

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffn/core/rng.hpp"
#include "ffn/core/tensor.hpp"
#include "ffn/kernels/kernels.hpp"

namespace ffn {

// Convolutional feature extractor over an embedded sequence: parallel filter
// banks of heights 2..5 spanning the full embedding width, ReLU, then max
// over time per feature map. Shared by the text classifier and by the text
// branch of the multimodal net, which must produce identical features for
// identical parameters.
template <class T>
struct TextFeaturesT {
  struct Config {
    std::size_t seq_len = 15;
    std::size_t emb_dim = 300;
    std::size_t channels = 50;
    std::vector<std::size_t> kernel_heights = {2, 3, 4, 5};
  };

  Config cfg;
  std::vector<Tensor<T>> w, b;    // per bank: (C x K x D), (C)
  std::vector<Tensor<T>> dw, db;

  struct Cache {
    Tensor<T> emb;                       // seq_len x emb_dim input
    std::vector<Tensor<T>> conv;         // post-ReLU, C x (S-K+1) per bank
    std::vector<std::vector<std::int64_t>> argmax;  // per bank, per channel
    std::vector<T> feat;                 // concatenated pooled features
  };

  explicit TextFeaturesT(Config c = {}) : cfg(std::move(c)) {
    for (std::size_t k : cfg.kernel_heights) {
      w.emplace_back(Tensor<T>({cfg.channels, k, cfg.emb_dim}));
      b.emplace_back(Tensor<T>({cfg.channels}));
      dw.emplace_back(Tensor<T>({cfg.channels, k, cfg.emb_dim}));
      db.emplace_back(Tensor<T>({cfg.channels}));
    }
  }

  std::size_t feature_dim() const { return cfg.channels * cfg.kernel_heights.size(); }

  void init(Rng& rng) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.kernel_heights[i] * cfg.emb_dim));
      for (auto& v : w[i].data) v = static_cast<T>(rng.uniform(-scale, scale));
      b[i].zero();
    }
  }

  // emb is seq_len x emb_dim.
  void forward(const Tensor<T>& emb, Cache& cache) const {
    cache.emb = emb;
    cache.conv.resize(w.size());
    cache.argmax.resize(w.size());
    cache.feat.assign(feature_dim(), T(0));
    std::size_t off = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t K = cfg.kernel_heights[i];
      const std::size_t out_len = cfg.seq_len - K + 1;
      Tensor<T> pre({cfg.channels, out_len});
      kernels::conv_rows_forward(emb.ptr(), cfg.seq_len, cfg.emb_dim, w[i].ptr(),
                                 b[i].ptr(), cfg.channels, K, pre.ptr());
      cache.conv[i] = Tensor<T>({cfg.channels, out_len});
      kernels::relu(pre.ptr(), pre.size(), cache.conv[i].ptr());
      cache.argmax[i].resize(cfg.channels);
      kernels::max_over_time(cache.conv[i].ptr(), cfg.channels, out_len,
                             cache.feat.data() + off, cache.argmax[i].data());
      off += cfg.channels;
    }
  }

  // Accumulates dw/db; demb (optional, seq_len x emb_dim) is accumulated.
  void backward(const Cache& cache, const T* dfeat, T* demb) {
    Tensor<T> demb_local;
    if (demb != nullptr) {
      demb_local = Tensor<T>({cfg.seq_len, cfg.emb_dim});
    }
    std::size_t off = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t K = cfg.kernel_heights[i];
      const std::size_t out_len = cfg.seq_len - K + 1;
      // Un-pool: gradient lands on the argmax position of each map, then
      // passes the ReLU mask.
      Tensor<T> dconv({cfg.channels, out_len});
      for (std::size_t c = 0; c < cfg.channels; ++c) {
        const auto pos = static_cast<std::size_t>(cache.argmax[i][c]);
        const T pooled = cache.conv[i].at2(c, pos);
        if (pooled > T(0)) dconv.at2(c, pos) = dfeat[off + c];
      }
      kernels::conv_rows_backward(cache.emb.ptr(), cfg.seq_len, cfg.emb_dim,
                                  w[i].ptr(), cfg.channels, K, dconv.ptr(),
                                  dw[i].ptr(), db[i].ptr(),
                                  demb != nullptr ? demb_local.ptr() : nullptr);
      off += cfg.channels;
    }
    if (demb != nullptr) {
      for (std::size_t j = 0; j < demb_local.size(); ++j) demb[j] += demb_local[j];
    }
  }

  void zero_grad() {
    for (auto& t : dw) t.zero();
    for (auto& t : db) t.zero();
  }

  std::vector<ParamRef<T>> params(const std::string& prefix = "") {
    std::vector<ParamRef<T>> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string h = std::to_string(cfg.kernel_heights[i]);
      out.push_back({prefix + "conv_h" + h + ".weight", &w[i], &dw[i]});
      out.push_back({prefix + "conv_h" + h + ".bias", &b[i], &db[i]});
    }
    return out;
  }
};

}  // namespace ffn

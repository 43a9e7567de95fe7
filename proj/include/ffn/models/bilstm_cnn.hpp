#pragma once

#include "ffn/data/labels.hpp"
#include "ffn/models/text_features.hpp"

namespace ffn {

// Hybrid classifier: bidirectional LSTM over the embedded sequence, a single
// conv bank over the concatenated hidden states, ReLU, max over time, two
// dense layers, log-softmax.
template <class T>
struct BiLstmCnnT {
  struct Config {
    std::size_t seq_len = 15;
    std::size_t emb_dim = 300;
    std::size_t hidden = 70;        // per direction
    std::size_t conv_filters = 240;
    std::size_t conv_k = 3;
    std::size_t dense_hidden = 128;
    std::size_t classes = kNumClasses;
  };

  Config cfg;
  // Gate-packed LSTM parameters per direction.
  Tensor<T> fwd_wx, fwd_wh, fwd_b, bwd_wx, bwd_wh, bwd_b;
  Tensor<T> conv_w, conv_b;
  Tensor<T> d1_w, d1_b, d2_w, d2_b;
  Tensor<T> fwd_dwx, fwd_dwh, fwd_db, bwd_dwx, bwd_dwh, bwd_db;
  Tensor<T> conv_dw, conv_db;
  Tensor<T> d1_dw, d1_db, d2_dw, d2_db;

  struct Cache {
    Tensor<T> emb, emb_rev;
    Tensor<T> h_fwd, act_fwd, cs_fwd;  // forward direction
    Tensor<T> h_rev, act_rev, cs_rev;  // backward direction, reversed time
    Tensor<T> enc;                     // seq_len x 2H
    Tensor<T> conv;                    // post-ReLU, filters x (S-K+1)
    std::vector<std::int64_t> argmax;
    std::vector<T> feat, h_pre, h, logits, logp;
  };

  explicit BiLstmCnnT(Config c = {}) : cfg(c) {
    const std::size_t H = cfg.hidden, D = cfg.emb_dim;
    auto make = [&](Tensor<T>& v, Tensor<T>& g, std::vector<std::size_t> shape) {
      v = Tensor<T>(shape);
      g = Tensor<T>(std::move(shape));
    };
    make(fwd_wx, fwd_dwx, {4 * H, D});
    make(fwd_wh, fwd_dwh, {4 * H, H});
    make(fwd_b, fwd_db, {4 * H});
    make(bwd_wx, bwd_dwx, {4 * H, D});
    make(bwd_wh, bwd_dwh, {4 * H, H});
    make(bwd_b, bwd_db, {4 * H});
    make(conv_w, conv_dw, {cfg.conv_filters, cfg.conv_k, 2 * H});
    make(conv_b, conv_db, {cfg.conv_filters});
    make(d1_w, d1_dw, {cfg.dense_hidden, cfg.conv_filters});
    make(d1_b, d1_db, {cfg.dense_hidden});
    make(d2_w, d2_dw, {cfg.classes, cfg.dense_hidden});
    make(d2_b, d2_db, {cfg.classes});
  }

  void init(Rng& rng) {
    const std::size_t H = cfg.hidden;
    auto uniform_init = [&](Tensor<T>& t, std::size_t fan_in) {
      const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
      for (auto& v : t.data) v = static_cast<T>(rng.uniform(-s, s));
    };
    for (Tensor<T>* t : {&fwd_wx, &bwd_wx}) uniform_init(*t, cfg.emb_dim);
    for (Tensor<T>* t : {&fwd_wh, &bwd_wh}) uniform_init(*t, H);
    // Forget-gate bias starts at 1 so early training does not wipe the cell
    // state; other gate biases start at 0.
    for (Tensor<T>* t : {&fwd_b, &bwd_b}) {
      t->zero();
      for (std::size_t j = 0; j < H; ++j) (*t)[H + j] = T(1);
    }
    uniform_init(conv_w, cfg.conv_k * 2 * H);
    conv_b.zero();
    uniform_init(d1_w, cfg.conv_filters);
    d1_b.zero();
    uniform_init(d2_w, cfg.dense_hidden);
    d2_b.zero();
  }

  // Row t of the result is [forward hidden at t || backward hidden at t].
  // The backward direction is the same recurrence run over the
  // time-reversed input with its outputs reversed back.
  void encode(const Tensor<T>& emb, Cache& cache) const {
    const std::size_t S = cfg.seq_len, D = cfg.emb_dim, H = cfg.hidden;
    cache.emb = emb;
    cache.emb_rev = Tensor<T>({S, D});
    for (std::size_t t = 0; t < S; ++t) {
      for (std::size_t d = 0; d < D; ++d) {
        cache.emb_rev.at2(t, d) = emb.at2(S - 1 - t, d);
      }
    }
    cache.h_fwd = Tensor<T>({S, H});
    cache.act_fwd = Tensor<T>({S, 4 * H});
    cache.cs_fwd = Tensor<T>({S, H});
    kernels::lstm_forward(emb.ptr(), S, D, fwd_wx.ptr(), fwd_wh.ptr(), fwd_b.ptr(),
                          H, cache.h_fwd.ptr(), cache.act_fwd.ptr(), cache.cs_fwd.ptr());
    cache.h_rev = Tensor<T>({S, H});
    cache.act_rev = Tensor<T>({S, 4 * H});
    cache.cs_rev = Tensor<T>({S, H});
    kernels::lstm_forward(cache.emb_rev.ptr(), S, D, bwd_wx.ptr(), bwd_wh.ptr(),
                          bwd_b.ptr(), H, cache.h_rev.ptr(), cache.act_rev.ptr(),
                          cache.cs_rev.ptr());
    cache.enc = Tensor<T>({S, 2 * H});
    for (std::size_t t = 0; t < S; ++t) {
      for (std::size_t j = 0; j < H; ++j) {
        cache.enc.at2(t, j) = cache.h_fwd.at2(t, j);
        cache.enc.at2(t, H + j) = cache.h_rev.at2(S - 1 - t, j);
      }
    }
  }

  void forward(const Tensor<T>& emb, Cache& cache) const {
    encode(emb, cache);
    const std::size_t S = cfg.seq_len, H = cfg.hidden;
    const std::size_t out_len = S - cfg.conv_k + 1;
    Tensor<T> pre({cfg.conv_filters, out_len});
    kernels::conv_rows_forward(cache.enc.ptr(), S, 2 * H, conv_w.ptr(), conv_b.ptr(),
                               cfg.conv_filters, cfg.conv_k, pre.ptr());
    cache.conv = Tensor<T>({cfg.conv_filters, out_len});
    kernels::relu(pre.ptr(), pre.size(), cache.conv.ptr());
    cache.feat.assign(cfg.conv_filters, T(0));
    cache.argmax.resize(cfg.conv_filters);
    kernels::max_over_time(cache.conv.ptr(), cfg.conv_filters, out_len,
                           cache.feat.data(), cache.argmax.data());
    cache.h_pre.assign(cfg.dense_hidden, T(0));
    kernels::dense_forward(cache.feat.data(), cfg.conv_filters, d1_w.ptr(),
                           d1_b.ptr(), cfg.dense_hidden, cache.h_pre.data());
    cache.h.assign(cfg.dense_hidden, T(0));
    kernels::relu(cache.h_pre.data(), cfg.dense_hidden, cache.h.data());
    cache.logits.assign(cfg.classes, T(0));
    kernels::dense_forward(cache.h.data(), cfg.dense_hidden, d2_w.ptr(), d2_b.ptr(),
                           cfg.classes, cache.logits.data());
    cache.logp.assign(cfg.classes, T(0));
    kernels::log_softmax(cache.logits.data(), cfg.classes, cache.logp.data());
  }

  void backward(const Cache& cache, const T* dlogits, T* demb) {
    const std::size_t S = cfg.seq_len, D = cfg.emb_dim, H = cfg.hidden;
    std::vector<T> dh(cfg.dense_hidden, T(0));
    kernels::dense_backward(cache.h.data(), cfg.dense_hidden, d2_w.ptr(),
                            cfg.classes, dlogits, d2_dw.ptr(), d2_db.ptr(), dh.data());
    std::vector<T> dh_pre(cfg.dense_hidden, T(0));
    kernels::relu_backward(cache.h.data(), dh.data(), cfg.dense_hidden, dh_pre.data());
    std::vector<T> dfeat(cfg.conv_filters, T(0));
    kernels::dense_backward(cache.feat.data(), cfg.conv_filters, d1_w.ptr(),
                            cfg.dense_hidden, dh_pre.data(), d1_dw.ptr(), d1_db.ptr(),
                            dfeat.data());
    const std::size_t out_len = S - cfg.conv_k + 1;
    Tensor<T> dconv({cfg.conv_filters, out_len});
    for (std::size_t c = 0; c < cfg.conv_filters; ++c) {
      const auto pos = static_cast<std::size_t>(cache.argmax[c]);
      if (cache.conv.at2(c, pos) > T(0)) dconv.at2(c, pos) = dfeat[c];
    }
    Tensor<T> denc({S, 2 * H});
    kernels::conv_rows_backward(cache.enc.ptr(), S, 2 * H, conv_w.ptr(),
                                cfg.conv_filters, cfg.conv_k, dconv.ptr(),
                                conv_dw.ptr(), conv_db.ptr(), denc.ptr());
    // Split the encoder gradient back into the two directions.
    Tensor<T> dh_fwd({S, H}), dh_rev({S, H});
    for (std::size_t t = 0; t < S; ++t) {
      for (std::size_t j = 0; j < H; ++j) {
        dh_fwd.at2(t, j) = denc.at2(t, j);
        dh_rev.at2(S - 1 - t, j) = denc.at2(t, H + j);
      }
    }
    Tensor<T> demb_fwd({S, D}), demb_rev({S, D});
    kernels::lstm_backward(cache.emb.ptr(), S, D, fwd_wx.ptr(), fwd_wh.ptr(), H,
                           cache.h_fwd.ptr(), cache.act_fwd.ptr(), cache.cs_fwd.ptr(),
                           dh_fwd.ptr(), fwd_dwx.ptr(), fwd_dwh.ptr(), fwd_db.ptr(),
                           demb != nullptr ? demb_fwd.ptr() : nullptr);
    kernels::lstm_backward(cache.emb_rev.ptr(), S, D, bwd_wx.ptr(), bwd_wh.ptr(), H,
                           cache.h_rev.ptr(), cache.act_rev.ptr(), cache.cs_rev.ptr(),
                           dh_rev.ptr(), bwd_dwx.ptr(), bwd_dwh.ptr(), bwd_db.ptr(),
                           demb != nullptr ? demb_rev.ptr() : nullptr);
    if (demb != nullptr) {
      for (std::size_t t = 0; t < S; ++t) {
        for (std::size_t d = 0; d < D; ++d) {
          demb[t * D + d] += demb_fwd.at2(t, d) + demb_rev.at2(S - 1 - t, d);
        }
      }
    }
  }

  void zero_grad() {
    for (Tensor<T>* t : {&fwd_dwx, &fwd_dwh, &fwd_db, &bwd_dwx, &bwd_dwh, &bwd_db,
                         &conv_dw, &conv_db, &d1_dw, &d1_db, &d2_dw, &d2_db}) {
      t->zero();
    }
  }

  std::vector<ParamRef<T>> params() {
    return {
        {"lstm_fwd.wx", &fwd_wx, &fwd_dwx}, {"lstm_fwd.wh", &fwd_wh, &fwd_dwh},
        {"lstm_fwd.bias", &fwd_b, &fwd_db}, {"lstm_bwd.wx", &bwd_wx, &bwd_dwx},
        {"lstm_bwd.wh", &bwd_wh, &bwd_dwh}, {"lstm_bwd.bias", &bwd_b, &bwd_db},
        {"conv.weight", &conv_w, &conv_dw}, {"conv.bias", &conv_b, &conv_db},
        {"dense1.weight", &d1_w, &d1_dw},   {"dense1.bias", &d1_b, &d1_db},
        {"dense2.weight", &d2_w, &d2_dw},   {"dense2.bias", &d2_b, &d2_db},
    };
  }
};

}  // namespace ffn

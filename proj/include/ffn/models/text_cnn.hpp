#pragma once

#include <array>

#include "ffn/data/labels.hpp"
#include "ffn/models/text_features.hpp"

namespace ffn {

// Text classifier: conv feature extractor -> dense -> ReLU -> dense ->
// log-softmax over the six classes.
template <class T>
struct TextCnnT {
  struct Config {
    typename TextFeaturesT<T>::Config features;
    std::size_t hidden = 128;
    std::size_t classes = kNumClasses;
  };

  Config cfg;
  TextFeaturesT<T> features;
  Tensor<T> d1_w, d1_b, d2_w, d2_b;
  Tensor<T> d1_dw, d1_db, d2_dw, d2_db;

  struct Cache {
    typename TextFeaturesT<T>::Cache feat;
    std::vector<T> h_pre, h;      // dense1 output pre/post ReLU
    std::vector<T> logits, logp;
  };

  explicit TextCnnT(Config c = {})
      : cfg(c),
        features(c.features),
        d1_w({c.hidden, features.feature_dim()}),
        d1_b({c.hidden}),
        d2_w({c.classes, c.hidden}),
        d2_b({c.classes}),
        d1_dw({c.hidden, features.feature_dim()}),
        d1_db({c.hidden}),
        d2_dw({c.classes, c.hidden}),
        d2_db({c.classes}) {}

  void init(Rng& rng) {
    features.init(rng);
    auto uniform_init = [&](Tensor<T>& t, std::size_t fan_in) {
      const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
      for (auto& v : t.data) v = static_cast<T>(rng.uniform(-s, s));
    };
    uniform_init(d1_w, features.feature_dim());
    d1_b.zero();
    uniform_init(d2_w, cfg.hidden);
    d2_b.zero();
  }

  void forward(const Tensor<T>& emb, Cache& cache) const {
    features.forward(emb, cache.feat);
    cache.h_pre.assign(cfg.hidden, T(0));
    kernels::dense_forward(cache.feat.feat.data(), features.feature_dim(),
                           d1_w.ptr(), d1_b.ptr(), cfg.hidden, cache.h_pre.data());
    cache.h.assign(cfg.hidden, T(0));
    kernels::relu(cache.h_pre.data(), cfg.hidden, cache.h.data());
    cache.logits.assign(cfg.classes, T(0));
    kernels::dense_forward(cache.h.data(), cfg.hidden, d2_w.ptr(), d2_b.ptr(),
                           cfg.classes, cache.logits.data());
    cache.logp.assign(cfg.classes, T(0));
    kernels::log_softmax(cache.logits.data(), cfg.classes, cache.logp.data());
  }

  // dlogits = dLoss/dlogits (for NLL: softmax - onehot, scaled). Accumulates
  // parameter grads; demb (optional) is accumulated.
  void backward(const Cache& cache, const T* dlogits, T* demb) {
    std::vector<T> dh(cfg.hidden, T(0));
    kernels::dense_backward(cache.h.data(), cfg.hidden, d2_w.ptr(), cfg.classes,
                            dlogits, d2_dw.ptr(), d2_db.ptr(), dh.data());
    std::vector<T> dh_pre(cfg.hidden, T(0));
    kernels::relu_backward(cache.h.data(), dh.data(), cfg.hidden, dh_pre.data());
    std::vector<T> dfeat(features.feature_dim(), T(0));
    kernels::dense_backward(cache.feat.feat.data(), features.feature_dim(),
                            d1_w.ptr(), cfg.hidden, dh_pre.data(), d1_dw.ptr(),
                            d1_db.ptr(), dfeat.data());
    features.backward(cache.feat, dfeat.data(), demb);
  }

  void zero_grad() {
    features.zero_grad();
    d1_dw.zero();
    d1_db.zero();
    d2_dw.zero();
    d2_db.zero();
  }

  std::vector<ParamRef<T>> params() {
    auto out = features.params();
    out.push_back({"dense1.weight", &d1_w, &d1_dw});
    out.push_back({"dense1.bias", &d1_b, &d1_db});
    out.push_back({"dense2.weight", &d2_w, &d2_dw});
    out.push_back({"dense2.bias", &d2_b, &d2_db});
    return out;
  }
};

// Argmax class; ties resolved toward the lowest index.
template <class T>
Label predict_class(const std::vector<T>& logp) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < logp.size(); ++i) {
    if (logp[i] > logp[best]) best = i;
  }
  return static_cast<Label>(best);
}

}  // namespace ffn

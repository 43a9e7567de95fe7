#pragma once

#include "ffn/data/labels.hpp"
#include "ffn/models/text_features.hpp"

namespace ffn {

// Early-fusion classifier. Image branch: two conv/ReLU/maxpool stages over a
// 3-channel square image, flattened channel-major. Text branch: the shared
// conv feature extractor. The two vectors are concatenated and passed
// through two dense layers and log-softmax.
//
// image_size 560 is the canonical configuration (flatten length 56307);
// smaller sizes with the identical layer pattern are supported for fast
// tests, with the flatten length recomputed from the size.
template <class T>
struct MultimodalT {
  struct Config {
    typename TextFeaturesT<T>::Config text;
    std::size_t image_size = 560;
    std::size_t in_channels = 3;
    std::size_t conv1_out = 6;
    std::size_t conv2_out = 3;
    std::size_t kernel = 5;
    std::size_t hidden = 256;
    std::size_t classes = kNumClasses;
  };

  Config cfg;
  TextFeaturesT<T> text;
  Tensor<T> conv1_w, conv1_b, conv2_w, conv2_b;
  Tensor<T> d1_w, d1_b, d2_w, d2_b;
  Tensor<T> conv1_dw, conv1_db, conv2_dw, conv2_db;
  Tensor<T> d1_dw, d1_db, d2_dw, d2_db;

  struct Cache {
    typename TextFeaturesT<T>::Cache text;
    Tensor<T> img;                     // input, Cin x S x S
    Tensor<T> conv1, pool1, conv2, pool2;  // conv maps post-ReLU
    std::vector<std::int64_t> arg1, arg2;
    std::vector<T> fused, h_pre, h, logits, logp;
  };

  // Spatial sizes along the image branch.
  std::size_t conv1_size() const { return cfg.image_size - cfg.kernel + 1; }
  std::size_t pool1_size() const { return conv1_size() / 2; }
  std::size_t conv2_size() const { return pool1_size() - cfg.kernel + 1; }
  std::size_t pool2_size() const { return conv2_size() / 2; }
  std::size_t image_feature_dim() const {
    return cfg.conv2_out * pool2_size() * pool2_size();
  }
  std::size_t fused_dim() const { return text.feature_dim() + image_feature_dim(); }

  explicit MultimodalT(Config c = {})
      : cfg(c),
        text(c.text),
        conv1_w({c.conv1_out, c.in_channels, c.kernel, c.kernel}),
        conv1_b({c.conv1_out}),
        conv2_w({c.conv2_out, c.conv1_out, c.kernel, c.kernel}),
        conv2_b({c.conv2_out}),
        d1_w({c.hidden, fused_dim()}),
        d1_b({c.hidden}),
        d2_w({c.classes, c.hidden}),
        d2_b({c.classes}),
        conv1_dw(conv1_w.shape),
        conv1_db(conv1_b.shape),
        conv2_dw(conv2_w.shape),
        conv2_db(conv2_b.shape),
        d1_dw(d1_w.shape),
        d1_db(d1_b.shape),
        d2_dw(d2_w.shape),
        d2_db(d2_b.shape) {}

  void init(Rng& rng) {
    text.init(rng);
    auto uniform_init = [&](Tensor<T>& t, std::size_t fan_in) {
      const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
      for (auto& v : t.data) v = static_cast<T>(rng.uniform(-s, s));
    };
    uniform_init(conv1_w, cfg.in_channels * cfg.kernel * cfg.kernel);
    conv1_b.zero();
    uniform_init(conv2_w, cfg.conv1_out * cfg.kernel * cfg.kernel);
    conv2_b.zero();
    uniform_init(d1_w, fused_dim());
    d1_b.zero();
    uniform_init(d2_w, cfg.hidden);
    d2_b.zero();
  }

  // img is in_channels x image_size x image_size, values in [0, 1].
  void image_features(const Tensor<T>& img, Cache& cache) const {
    const std::size_t S = cfg.image_size, K = cfg.kernel;
    const std::size_t c1 = conv1_size(), p1 = pool1_size();
    const std::size_t c2 = conv2_size(), p2 = pool2_size();
    cache.img = img;
    Tensor<T> pre1({cfg.conv1_out, c1, c1});
    kernels::conv2d_forward(img.ptr(), cfg.in_channels, S, S, conv1_w.ptr(),
                            conv1_b.ptr(), cfg.conv1_out, K, pre1.ptr());
    cache.conv1 = Tensor<T>({cfg.conv1_out, c1, c1});
    kernels::relu(pre1.ptr(), pre1.size(), cache.conv1.ptr());
    cache.pool1 = Tensor<T>({cfg.conv1_out, p1, p1});
    cache.arg1.resize(cache.pool1.size());
    kernels::maxpool2d_forward(cache.conv1.ptr(), cfg.conv1_out, c1, c1,
                               cache.pool1.ptr(), cache.arg1.data());
    Tensor<T> pre2({cfg.conv2_out, c2, c2});
    kernels::conv2d_forward(cache.pool1.ptr(), cfg.conv1_out, p1, p1, conv2_w.ptr(),
                            conv2_b.ptr(), cfg.conv2_out, K, pre2.ptr());
    cache.conv2 = Tensor<T>({cfg.conv2_out, c2, c2});
    kernels::relu(pre2.ptr(), pre2.size(), cache.conv2.ptr());
    cache.pool2 = Tensor<T>({cfg.conv2_out, p2, p2});
    cache.arg2.resize(cache.pool2.size());
    kernels::maxpool2d_forward(cache.conv2.ptr(), cfg.conv2_out, c2, c2,
                               cache.pool2.ptr(), cache.arg2.data());
    // pool2 flattened channel-major, row-major is the image feature vector.
  }

  void forward(const Tensor<T>& emb, const Tensor<T>& img, Cache& cache) const {
    text.forward(emb, cache.text);
    image_features(img, cache);
    cache.fused.assign(fused_dim(), T(0));
    std::copy(cache.text.feat.begin(), cache.text.feat.end(), cache.fused.begin());
    std::copy(cache.pool2.data.begin(), cache.pool2.data.end(),
              cache.fused.begin() + static_cast<std::ptrdiff_t>(text.feature_dim()));
    cache.h_pre.assign(cfg.hidden, T(0));
    kernels::dense_forward(cache.fused.data(), fused_dim(), d1_w.ptr(), d1_b.ptr(),
                           cfg.hidden, cache.h_pre.data());
    cache.h.assign(cfg.hidden, T(0));
    kernels::relu(cache.h_pre.data(), cfg.hidden, cache.h.data());
    cache.logits.assign(cfg.classes, T(0));
    kernels::dense_forward(cache.h.data(), cfg.hidden, d2_w.ptr(), d2_b.ptr(),
                           cfg.classes, cache.logits.data());
    cache.logp.assign(cfg.classes, T(0));
    kernels::log_softmax(cache.logits.data(), cfg.classes, cache.logp.data());
  }

  void backward(const Cache& cache, const T* dlogits, T* demb) {
    const std::size_t S = cfg.image_size, K = cfg.kernel;
    const std::size_t c1 = conv1_size(), p1 = pool1_size(), c2 = conv2_size();
    std::vector<T> dh(cfg.hidden, T(0));
    kernels::dense_backward(cache.h.data(), cfg.hidden, d2_w.ptr(), cfg.classes,
                            dlogits, d2_dw.ptr(), d2_db.ptr(), dh.data());
    std::vector<T> dh_pre(cfg.hidden, T(0));
    kernels::relu_backward(cache.h.data(), dh.data(), cfg.hidden, dh_pre.data());
    std::vector<T> dfused(fused_dim(), T(0));
    kernels::dense_backward(cache.fused.data(), fused_dim(), d1_w.ptr(), cfg.hidden,
                            dh_pre.data(), d1_dw.ptr(), d1_db.ptr(), dfused.data());
    text.backward(cache.text, dfused.data(), demb);
    // Image branch.
    const T* dpool2_flat = dfused.data() + text.feature_dim();
    Tensor<T> dconv2_post({cfg.conv2_out, c2, c2});
    kernels::maxpool2d_backward(cache.arg2.data(), cache.pool2.size(), dpool2_flat,
                                dconv2_post.ptr());
    Tensor<T> dconv2_pre({cfg.conv2_out, c2, c2});
    kernels::relu_backward(cache.conv2.ptr(), dconv2_post.ptr(), dconv2_post.size(),
                           dconv2_pre.ptr());
    Tensor<T> dpool1({cfg.conv1_out, p1, p1});
    kernels::conv2d_backward(cache.pool1.ptr(), cfg.conv1_out, p1, p1, conv2_w.ptr(),
                             cfg.conv2_out, K, dconv2_pre.ptr(), conv2_dw.ptr(),
                             conv2_db.ptr(), dpool1.ptr());
    Tensor<T> dconv1_post({cfg.conv1_out, c1, c1});
    kernels::maxpool2d_backward(cache.arg1.data(), cache.pool1.size(), dpool1.ptr(),
                                dconv1_post.ptr());
    Tensor<T> dconv1_pre({cfg.conv1_out, c1, c1});
    kernels::relu_backward(cache.conv1.ptr(), dconv1_post.ptr(), dconv1_post.size(),
                           dconv1_pre.ptr());
    kernels::conv2d_backward(cache.img.ptr(), cfg.in_channels, S, S, conv1_w.ptr(),
                             cfg.conv1_out, K, dconv1_pre.ptr(), conv1_dw.ptr(),
                             conv1_db.ptr(), nullptr);
  }

  void zero_grad() {
    text.zero_grad();
    for (Tensor<T>* t : {&conv1_dw, &conv1_db, &conv2_dw, &conv2_db, &d1_dw, &d1_db,
                         &d2_dw, &d2_db}) {
      t->zero();
    }
  }

  std::vector<ParamRef<T>> params() {
    auto out = text.params("text.");
    out.push_back({"image.conv1.weight", &conv1_w, &conv1_dw});
    out.push_back({"image.conv1.bias", &conv1_b, &conv1_db});
    out.push_back({"image.conv2.weight", &conv2_w, &conv2_dw});
    out.push_back({"image.conv2.bias", &conv2_b, &conv2_db});
    out.push_back({"dense1.weight", &d1_w, &d1_dw});
    out.push_back({"dense1.bias", &d1_b, &d1_db});
    out.push_back({"dense2.weight", &d2_w, &d2_dw});
    out.push_back({"dense2.bias", &d2_b, &d2_db});
    return out;
  }
};

}  // namespace ffn

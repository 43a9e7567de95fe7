#pragma once

#include <vector>

#include "ffn/core/tensor.hpp"
#include "ffn/kernels/kernels.hpp"

namespace ffn {

// Adam optimizer state over a fixed parameter list. The list order must not
// change between steps.
template <class T>
class AdamT {
 public:
  AdamT(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(const std::vector<ParamRef<T>>& params) {
    if (m_.empty()) {
      for (const auto& p : params) {
        m_.emplace_back(p.value->shape);
        v_.emplace_back(p.value->shape);
      }
    }
    ++t_;
    const T b1t = static_cast<T>(std::pow(beta1_, static_cast<double>(t_)));
    const T b2t = static_cast<T>(std::pow(beta2_, static_cast<double>(t_)));
    for (std::size_t i = 0; i < params.size(); ++i) {
      kernels::adam_step(params[i].value->ptr(), params[i].grad->ptr(), m_[i].ptr(),
                         v_[i].ptr(), params[i].value->size(), static_cast<T>(lr_),
                         static_cast<T>(beta1_), static_cast<T>(beta2_),
                         static_cast<T>(eps_), b1t, b2t);
    }
  }

  std::size_t steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::size_t t_ = 0;
  std::vector<Tensor<T>> m_, v_;
};

using Adam = AdamT<float>;

}  // namespace ffn

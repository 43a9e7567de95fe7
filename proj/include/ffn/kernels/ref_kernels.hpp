#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

// Naive serial reference implementations. These are the brute-force oracles
// the test suites and the kernel benchmark compare against; they are written
// directly from the layer definitions and must not share code with
// kernels.hpp. Keep them simple and obviously correct, not fast.

namespace ffn::ref {

using std::size_t;

template <class T>
void conv_rows_forward(const T* x, size_t S, size_t D, const T* w, const T* b,
                       size_t C, size_t K, T* y) {
  for (size_t c = 0; c < C; ++c) {
    for (size_t t = 0; t + K <= S; ++t) {
      T sum = b[c];
      for (size_t k = 0; k < K; ++k) {
        for (size_t d = 0; d < D; ++d) {
          sum += w[(c * K + k) * D + d] * x[(t + k) * D + d];
        }
      }
      y[c * (S - K + 1) + t] = sum;
    }
  }
}

template <class T>
void conv2d_forward(const T* x, size_t Cin, size_t H, size_t W, const T* w,
                    const T* b, size_t Cout, size_t K, T* y) {
  const size_t OH = H - K + 1, OW = W - K + 1;
  for (size_t co = 0; co < Cout; ++co) {
    for (size_t oy = 0; oy < OH; ++oy) {
      for (size_t ox = 0; ox < OW; ++ox) {
        T sum = b[co];
        for (size_t ci = 0; ci < Cin; ++ci) {
          for (size_t ky = 0; ky < K; ++ky) {
            for (size_t kx = 0; kx < K; ++kx) {
              sum += w[((co * Cin + ci) * K + ky) * K + kx] *
                     x[(ci * H + oy + ky) * W + ox + kx];
            }
          }
        }
        y[(co * OH + oy) * OW + ox] = sum;
      }
    }
  }
}

template <class T>
void maxpool2d_forward(const T* x, size_t C, size_t H, size_t W, T* y) {
  const size_t OH = H / 2, OW = W / 2;
  for (size_t c = 0; c < C; ++c) {
    for (size_t oy = 0; oy < OH; ++oy) {
      for (size_t ox = 0; ox < OW; ++ox) {
        T best = x[(c * H + 2 * oy) * W + 2 * ox];
        for (size_t dy = 0; dy < 2; ++dy) {
          for (size_t dx = 0; dx < 2; ++dx) {
            T v = x[(c * H + 2 * oy + dy) * W + 2 * ox + dx];
            if (v > best) best = v;
          }
        }
        y[(c * OH + oy) * OW + ox] = best;
      }
    }
  }
}

template <class T>
void max_over_time(const T* x, size_t C, size_t L, T* y) {
  for (size_t c = 0; c < C; ++c) {
    T best = x[c * L];
    for (size_t t = 1; t < L; ++t) {
      if (x[c * L + t] > best) best = x[c * L + t];
    }
    y[c] = best;
  }
}

template <class T>
void dense_forward(const T* x, size_t in, const T* w, const T* b, size_t out, T* y) {
  for (size_t o = 0; o < out; ++o) {
    T sum = b[o];
    for (size_t i = 0; i < in; ++i) sum += w[o * in + i] * x[i];
    y[o] = sum;
  }
}

// One LSTM step written as scalar recurrences. h_prev/c_prev may be null
// (zero initial state). Gate order i, f, g, o.
template <class T>
void lstm_step(const T* xt, size_t D, const T* wx, const T* wh, const T* b,
               size_t H, const T* h_prev, const T* c_prev, T* h_next, T* c_next) {
  auto sig = [](T v) { return T(1) / (T(1) + std::exp(-v)); };
  std::vector<T> pre(4 * H);
  for (size_t r = 0; r < 4 * H; ++r) {
    T sum = b[r];
    for (size_t d = 0; d < D; ++d) sum += wx[r * D + d] * xt[d];
    if (h_prev != nullptr) {
      for (size_t j = 0; j < H; ++j) sum += wh[r * H + j] * h_prev[j];
    }
    pre[r] = sum;
  }
  for (size_t j = 0; j < H; ++j) {
    T i = sig(pre[j]);
    T f = sig(pre[H + j]);
    T g = std::tanh(pre[2 * H + j]);
    T o = sig(pre[3 * H + j]);
    T c = i * g + (c_prev != nullptr ? f * c_prev[j] : T(0));
    c_next[j] = c;
    h_next[j] = o * std::tanh(c);
  }
}

template <class T>
void lstm_forward(const T* x, size_t S, size_t D, const T* wx, const T* wh,
                  const T* b, size_t H, T* h_out) {
  std::vector<T> c(H, T(0)), c_next(H);
  for (size_t t = 0; t < S; ++t) {
    lstm_step(x + t * D, D, wx, wh, b, H, t ? h_out + (t - 1) * H : nullptr,
              t ? c.data() : nullptr, h_out + t * H, c_next.data());
    c = c_next;
  }
}

template <class T>
void embedding_lookup(const int* ids, size_t L, const T* table, size_t D, T* out) {
  for (size_t t = 0; t < L; ++t) {
    for (size_t d = 0; d < D; ++d) out[t * D + d] = table[ids[t] * D + d];
  }
}

template <class T>
void log_softmax(const T* x, size_t n, T* y) {
  T mx = x[0];
  for (size_t i = 1; i < n; ++i) mx = std::max(mx, x[i]);
  T sum = T(0);
  for (size_t i = 0; i < n; ++i) sum += std::exp(x[i] - mx);
  for (size_t i = 0; i < n; ++i) y[i] = x[i] - mx - std::log(sum);
}

}  // namespace ffn::ref

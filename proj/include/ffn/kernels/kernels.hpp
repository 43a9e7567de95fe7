#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

// OpenMP-parallel compute kernels. Every kernel writes each output element
// from exactly one loop iteration with a fixed serial accumulation order, so
// results are bitwise identical for any thread count (including 1). The
// naive serial counterparts used as test oracles live in ref_kernels.hpp and
// must stay independent of this file.
//
// Layout conventions (row-major throughout):
//   sequences     x[S][D]
//   row filters   w[C][K][D], biases b[C], output y[C][S-K+1]
//   images        x[Cin][H][W]
//   image filters w[Cout][Cin][K][K], output y[Cout][H-K+1][W-K+1]
//   dense         w[Out][In], y = w x + b
//   LSTM gates    packed (i, f, g, o), each block of H rows

namespace ffn::kernels {

using std::size_t;

// ---------------------------------------------------------------------------
// Elementwise
// ---------------------------------------------------------------------------

template <class T>
void relu(const T* x, size_t n, T* y) {
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < n; ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
}

// dx = dy where the forward output was positive. `y` is the post-ReLU value.
template <class T>
void relu_backward(const T* y, const T* dy, size_t n, T* dx) {
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < n; ++i) dx[i] = y[i] > T(0) ? dy[i] : T(0);
}

template <class T>
void log_softmax(const T* x, size_t n, T* y) {
  T mx = x[0];
  for (size_t i = 1; i < n; ++i) mx = x[i] > mx ? x[i] : mx;
  T sum = T(0);
  for (size_t i = 0; i < n; ++i) sum += std::exp(x[i] - mx);
  T lse = mx + std::log(sum);
  for (size_t i = 0; i < n; ++i) y[i] = x[i] - lse;
}

// ---------------------------------------------------------------------------
// Dense
// ---------------------------------------------------------------------------

template <class T>
void dense_forward(const T* x, size_t in, const T* w, const T* b, size_t out, T* y) {
#pragma omp parallel for schedule(static)
  for (size_t o = 0; o < out; ++o) {
    const T* row = w + o * in;
    T acc = b[o];
    for (size_t i = 0; i < in; ++i) acc += row[i] * x[i];
    y[o] = acc;
  }
}

// Accumulates dw/db; dx (optional) is overwritten.
template <class T>
void dense_backward(const T* x, size_t in, const T* w, size_t out, const T* dy,
                    T* dw, T* db, T* dx) {
#pragma omp parallel for schedule(static)
  for (size_t o = 0; o < out; ++o) {
    T* drow = dw + o * in;
    const T g = dy[o];
    for (size_t i = 0; i < in; ++i) drow[i] += g * x[i];
    db[o] += g;
  }
  if (dx != nullptr) {
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < in; ++i) {
      T acc = T(0);
      for (size_t o = 0; o < out; ++o) acc += w[o * in + i] * dy[o];
      dx[i] = acc;
    }
  }
}

// ---------------------------------------------------------------------------
// Row convolution over a sequence (filter spans the full row width)
// ---------------------------------------------------------------------------

template <class T>
void conv_rows_forward(const T* x, size_t S, size_t D, const T* w, const T* b,
                       size_t C, size_t K, T* y) {
  const size_t out_len = S - K + 1;
#pragma omp parallel for schedule(static)
  for (size_t c = 0; c < C; ++c) {
    const T* filt = w + c * K * D;
    for (size_t t = 0; t < out_len; ++t) {
      T acc = b[c];
      const T* win = x + t * D;
      for (size_t kd = 0; kd < K * D; ++kd) acc += filt[kd] * win[kd];
      y[c * out_len + t] = acc;
    }
  }
}

// Accumulates dw/db; dx (optional) is accumulated into as well, so the
// caller zeroes it first. dx accumulation is safe to parallelize over input
// rows because each (t, d) cell is owned by one iteration.
template <class T>
void conv_rows_backward(const T* x, size_t S, size_t D, const T* w, size_t C,
                        size_t K, const T* dy, T* dw, T* db, T* dx) {
  const size_t out_len = S - K + 1;
#pragma omp parallel for schedule(static)
  for (size_t c = 0; c < C; ++c) {
    T* dfilt = dw + c * K * D;
    T acc_b = T(0);
    for (size_t t = 0; t < out_len; ++t) {
      const T g = dy[c * out_len + t];
      acc_b += g;
      const T* win = x + t * D;
      for (size_t kd = 0; kd < K * D; ++kd) dfilt[kd] += g * win[kd];
    }
    db[c] += acc_b;
  }
  if (dx != nullptr) {
#pragma omp parallel for schedule(static)
    for (size_t s = 0; s < S; ++s) {
      T* drow = dx + s * D;
      for (size_t c = 0; c < C; ++c) {
        const T* filt = w + c * K * D;
        const size_t t_lo = s + 1 >= K ? s + 1 - K : 0;
        const size_t t_hi = s < out_len ? s : out_len - 1;
        for (size_t t = t_lo; t <= t_hi; ++t) {
          const T g = dy[c * out_len + t];
          const T* frow = filt + (s - t) * D;
          for (size_t d = 0; d < D; ++d) drow[d] += g * frow[d];
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 2-D convolution (valid, stride 1, square kernel)
// ---------------------------------------------------------------------------

template <class T>
void conv2d_forward(const T* x, size_t Cin, size_t H, size_t W, const T* w,
                    const T* b, size_t Cout, size_t K, T* y) {
  const size_t OH = H - K + 1, OW = W - K + 1;
#pragma omp parallel for collapse(2) schedule(static)
  for (size_t co = 0; co < Cout; ++co) {
    for (size_t oy = 0; oy < OH; ++oy) {
      T* out_row = y + (co * OH + oy) * OW;
      for (size_t ox = 0; ox < OW; ++ox) out_row[ox] = b[co];
      for (size_t ci = 0; ci < Cin; ++ci) {
        const T* filt = w + ((co * Cin) + ci) * K * K;
        for (size_t ky = 0; ky < K; ++ky) {
          const T* in_row = x + (ci * H + oy + ky) * W;
          const T* frow = filt + ky * K;
          for (size_t ox = 0; ox < OW; ++ox) {
            T acc = T(0);
            for (size_t kx = 0; kx < K; ++kx) acc += frow[kx] * in_row[ox + kx];
            out_row[ox] += acc;
          }
        }
      }
    }
  }
}

template <class T>
void conv2d_backward(const T* x, size_t Cin, size_t H, size_t W, const T* w,
                     size_t Cout, size_t K, const T* dy, T* dw, T* db, T* dx) {
  const size_t OH = H - K + 1, OW = W - K + 1;
#pragma omp parallel for collapse(2) schedule(static)
  for (size_t co = 0; co < Cout; ++co) {
    for (size_t ci = 0; ci < Cin; ++ci) {
      T* dfilt = dw + ((co * Cin) + ci) * K * K;
      for (size_t ky = 0; ky < K; ++ky) {
        for (size_t kx = 0; kx < K; ++kx) {
          T acc = T(0);
          for (size_t oy = 0; oy < OH; ++oy) {
            const T* grow = dy + (co * OH + oy) * OW;
            const T* in_row = x + (ci * H + oy + ky) * W + kx;
            for (size_t ox = 0; ox < OW; ++ox) acc += grow[ox] * in_row[ox];
          }
          dfilt[ky * K + kx] += acc;
        }
      }
    }
  }
#pragma omp parallel for schedule(static)
  for (size_t co = 0; co < Cout; ++co) {
    T acc = T(0);
    const T* g = dy + co * OH * OW;
    for (size_t i = 0; i < OH * OW; ++i) acc += g[i];
    db[co] += acc;
  }
  if (dx != nullptr) {
#pragma omp parallel for collapse(2) schedule(static)
    for (size_t ci = 0; ci < Cin; ++ci) {
      for (size_t iy = 0; iy < H; ++iy) {
        T* drow = dx + (ci * H + iy) * W;
        for (size_t ix = 0; ix < W; ++ix) {
          T acc = T(0);
          const size_t ky_lo = iy + 1 >= OH ? iy + 1 - OH : 0;
          const size_t ky_hi = iy < K ? iy : K - 1;
          const size_t kx_lo = ix + 1 >= OW ? ix + 1 - OW : 0;
          const size_t kx_hi = ix < K ? ix : K - 1;
          for (size_t co = 0; co < Cout; ++co) {
            const T* filt = w + ((co * Cin) + ci) * K * K;
            for (size_t ky = ky_lo; ky <= ky_hi; ++ky) {
              const T* grow = dy + (co * OH + (iy - ky)) * OW;
              for (size_t kx = kx_lo; kx <= kx_hi; ++kx) {
                acc += filt[ky * K + kx] * grow[ix - kx];
              }
            }
          }
          drow[ix] += acc;
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Pooling
// ---------------------------------------------------------------------------

// 2x2 window, stride 2, floor semantics for odd H/W. argmax records the flat
// input index of the selected element per output cell (first-wins on ties).
template <class T>
void maxpool2d_forward(const T* x, size_t C, size_t H, size_t W, T* y,
                       std::int64_t* argmax) {
  const size_t OH = H / 2, OW = W / 2;
#pragma omp parallel for collapse(2) schedule(static)
  for (size_t c = 0; c < C; ++c) {
    for (size_t oy = 0; oy < OH; ++oy) {
      for (size_t ox = 0; ox < OW; ++ox) {
        size_t base = (c * H + 2 * oy) * W + 2 * ox;
        size_t best = base;
        T best_v = x[base];
        const size_t cand[3] = {base + 1, base + W, base + W + 1};
        for (size_t k = 0; k < 3; ++k) {
          if (x[cand[k]] > best_v) {
            best_v = x[cand[k]];
            best = cand[k];
          }
        }
        const size_t o = (c * OH + oy) * OW + ox;
        y[o] = best_v;
        argmax[o] = static_cast<std::int64_t>(best);
      }
    }
  }
}

// Routes dy back to the recorded argmax positions; dx must be zeroed by the
// caller. Argmax indices are unique per output cell, so parallel writes are
// disjoint.
template <class T>
void maxpool2d_backward(const std::int64_t* argmax, size_t n_out, const T* dy, T* dx) {
#pragma omp parallel for schedule(static)
  for (size_t o = 0; o < n_out; ++o) dx[static_cast<size_t>(argmax[o])] += dy[o];
}

// Max over the time axis of y[C][L]: one value and argmax per feature map.
template <class T>
void max_over_time(const T* x, size_t C, size_t L, T* y, std::int64_t* argmax) {
#pragma omp parallel for schedule(static)
  for (size_t c = 0; c < C; ++c) {
    const T* row = x + c * L;
    size_t best = 0;
    T best_v = row[0];
    for (size_t t = 1; t < L; ++t) {
      if (row[t] > best_v) {
        best_v = row[t];
        best = t;
      }
    }
    y[c] = best_v;
    argmax[c] = static_cast<std::int64_t>(best);
  }
}

// ---------------------------------------------------------------------------
// LSTM (single direction)
// ---------------------------------------------------------------------------

template <class T>
T sigmoid(T v) {
  return T(1) / (T(1) + std::exp(-v));
}

// Gate order in the packed 4H dimension: input, forget, cell candidate,
// output. Initial hidden and cell state are zero. Caches activated gates
// (act, S x 4H) and cell states (cs, S x H) for the backward pass.
template <class T>
void lstm_forward(const T* x, size_t S, size_t D, const T* wx, const T* wh,
                  const T* b, size_t H, T* h_out, T* act, T* cs) {
  for (size_t t = 0; t < S; ++t) {
    const T* xt = x + t * D;
    const T* h_prev = t ? h_out + (t - 1) * H : nullptr;
    T* a = act + t * 4 * H;
#pragma omp parallel for schedule(static)
    for (size_t r = 0; r < 4 * H; ++r) {
      T acc = b[r];
      const T* wrow = wx + r * D;
      for (size_t d = 0; d < D; ++d) acc += wrow[d] * xt[d];
      if (h_prev != nullptr) {
        const T* urow = wh + r * H;
        for (size_t j = 0; j < H; ++j) acc += urow[j] * h_prev[j];
      }
      const size_t gate = r / H;
      a[r] = gate == 2 ? std::tanh(acc) : sigmoid(acc);
    }
    const T* gi = a;
    const T* gf = a + H;
    const T* gg = a + 2 * H;
    const T* go = a + 3 * H;
    T* ct = cs + t * H;
    const T* c_prev = t ? cs + (t - 1) * H : nullptr;
    T* ht = h_out + t * H;
#pragma omp parallel for schedule(static)
    for (size_t j = 0; j < H; ++j) {
      T c = gi[j] * gg[j];
      if (c_prev != nullptr) c += gf[j] * c_prev[j];
      ct[j] = c;
      ht[j] = go[j] * std::tanh(c);
    }
  }
}

// Backpropagation through time. dwx/dwh/db are accumulated; dx (optional)
// is accumulated into. dh_out carries dLoss/dh for every step.
template <class T>
void lstm_backward(const T* x, size_t S, size_t D, const T* wx, const T* wh,
                   size_t H, const T* h_out, const T* act, const T* cs,
                   const T* dh_out, T* dwx, T* dwh, T* db, T* dx) {
  std::vector<T> dh(H, T(0)), dc(H, T(0)), da(4 * H);
  for (size_t t = S; t-- > 0;) {
    const T* a = act + t * 4 * H;
    const T* gi = a;
    const T* gf = a + H;
    const T* gg = a + 2 * H;
    const T* go = a + 3 * H;
    const T* ct = cs + t * H;
    const T* c_prev = t ? cs + (t - 1) * H : nullptr;
#pragma omp parallel for schedule(static)
    for (size_t j = 0; j < H; ++j) {
      const T dhj = dh[j] + dh_out[t * H + j];
      const T tc = std::tanh(ct[j]);
      const T dcj = dc[j] + dhj * go[j] * (T(1) - tc * tc);
      const T di = dcj * gg[j];
      const T df = c_prev != nullptr ? dcj * c_prev[j] : T(0);
      const T dg = dcj * gi[j];
      const T do_ = dhj * tc;
      da[j] = di * gi[j] * (T(1) - gi[j]);
      da[H + j] = df * gf[j] * (T(1) - gf[j]);
      da[2 * H + j] = dg * (T(1) - gg[j] * gg[j]);
      da[3 * H + j] = do_ * go[j] * (T(1) - go[j]);
      dc[j] = dcj * gf[j];
    }
    const T* xt = x + t * D;
    const T* h_prev = t ? h_out + (t - 1) * H : nullptr;
#pragma omp parallel for schedule(static)
    for (size_t r = 0; r < 4 * H; ++r) {
      const T g = da[r];
      T* dwrow = dwx + r * D;
      for (size_t d = 0; d < D; ++d) dwrow[d] += g * xt[d];
      if (h_prev != nullptr) {
        T* durow = dwh + r * H;
        for (size_t j = 0; j < H; ++j) durow[j] += g * h_prev[j];
      }
      db[r] += g;
    }
    if (dx != nullptr) {
      T* dxt = dx + t * D;
#pragma omp parallel for schedule(static)
      for (size_t d = 0; d < D; ++d) {
        T acc = T(0);
        for (size_t r = 0; r < 4 * H; ++r) acc += wx[r * D + d] * da[r];
        dxt[d] += acc;
      }
    }
#pragma omp parallel for schedule(static)
    for (size_t j = 0; j < H; ++j) {
      T acc = T(0);
      for (size_t r = 0; r < 4 * H; ++r) acc += wh[r * H + j] * da[r];
      dh[j] = acc;
    }
  }
}

// ---------------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------------

template <class T>
void embedding_lookup(const int* ids, size_t L, const T* table, size_t D, T* out) {
#pragma omp parallel for schedule(static)
  for (size_t t = 0; t < L; ++t) {
    const T* row = table + static_cast<size_t>(ids[t]) * D;
    T* dst = out + t * D;
    for (size_t d = 0; d < D; ++d) dst[d] = row[d];
  }
}

// Scatter-add of sequence gradients into the table gradient. Id 0 is the pad
// row and is skipped so padding never accumulates signal. Serial: duplicate
// ids within one sequence must accumulate in order.
template <class T>
void embedding_scatter_grad(const int* ids, size_t L, const T* dseq, size_t D, T* dtable) {
  for (size_t t = 0; t < L; ++t) {
    if (ids[t] == 0) continue;
    T* dst = dtable + static_cast<size_t>(ids[t]) * D;
    const T* src = dseq + t * D;
    for (size_t d = 0; d < D; ++d) dst[d] += src[d];
  }
}

// ---------------------------------------------------------------------------
// Adam
// ---------------------------------------------------------------------------

// One update over a parameter array. b1t/b2t are beta1^t and beta2^t for the
// current step count.
template <class T>
void adam_step(T* p, const T* g, T* m, T* v, size_t n, T lr, T beta1, T beta2,
               T eps, T b1t, T b2t) {
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (T(1) - beta1) * g[i];
    v[i] = beta2 * v[i] + (T(1) - beta2) * g[i] * g[i];
    const T mhat = m[i] / (T(1) - b1t);
    const T vhat = v[i] / (T(1) - b2t);
    p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

}  // namespace ffn::kernels

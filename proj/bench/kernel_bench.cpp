// Compares the OpenMP kernels against the naive serial reference on
// realistic problem sizes and prints per-kernel timings and speedups.
// Correctness of the pairing is asserted before timing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ffn/core/rng.hpp"
#include "ffn/kernels/kernels.hpp"
#include "ffn/kernels/ref_kernels.hpp"

using ffn::Rng;

namespace {

std::vector<float> random_vec(std::size_t n, Rng& rng) {
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-1.0, 1.0));
  return v;
}

double time_best_of(const std::function<void()>& fn, int reps) {
  double best = 1e100;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    best = std::min(best, dt.count());
  }
  return best;
}

bool close(const std::vector<float>& a, const std::vector<float>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-4f * std::max(1.0f, std::abs(a[i]))) return false;
  }
  return true;
}

void row(const std::string& name, double serial_s, double omp_s, bool ok) {
  std::printf("%-28s %10.3f ms %10.3f ms %7.2fx  %s\n", name.c_str(), serial_s * 1e3,
              omp_s * 1e3, serial_s / omp_s, ok ? "ok" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled in this build\n");
#endif
  std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

  Rng rng(42);

  {  // image conv: 3x560x560 * 6 filters of 5x5 (the canonical first stage)
    const std::size_t Cin = 3, H = 560, W = 560, Cout = 6, K = 5;
    auto x = random_vec(Cin * H * W, rng);
    auto w = random_vec(Cout * Cin * K * K, rng);
    auto b = random_vec(Cout, rng);
    std::vector<float> y_omp(Cout * (H - K + 1) * (W - K + 1));
    std::vector<float> y_ref(y_omp.size());
    ffn::kernels::conv2d_forward(x.data(), Cin, H, W, w.data(), b.data(), Cout, K,
                                 y_omp.data());
    ffn::ref::conv2d_forward(x.data(), Cin, H, W, w.data(), b.data(), Cout, K, y_ref.data());
    const bool ok = close(y_omp, y_ref);
    const double ts = time_best_of(
        [&] {
          ffn::ref::conv2d_forward(x.data(), Cin, H, W, w.data(), b.data(), Cout, K,
                                   y_ref.data());
        },
        3);
    const double tp = time_best_of(
        [&] {
          ffn::kernels::conv2d_forward(x.data(), Cin, H, W, w.data(), b.data(), Cout, K,
                                       y_omp.data());
        },
        3);
    row("conv2d 3x560x560 -> 6", ts, tp, ok);
  }

  {  // maxpool over the conv1 output
    const std::size_t C = 6, H = 556, W = 556;
    auto x = random_vec(C * H * W, rng);
    std::vector<float> y_omp(C * (H / 2) * (W / 2)), y_ref(y_omp.size());
    std::vector<std::int64_t> arg(y_omp.size());
    ffn::kernels::maxpool2d_forward(x.data(), C, H, W, y_omp.data(), arg.data());
    ffn::ref::maxpool2d_forward(x.data(), C, H, W, y_ref.data());
    const bool ok = close(y_omp, y_ref);
    const double ts =
        time_best_of([&] { ffn::ref::maxpool2d_forward(x.data(), C, H, W, y_ref.data()); }, 5);
    const double tp = time_best_of(
        [&] { ffn::kernels::maxpool2d_forward(x.data(), C, H, W, y_omp.data(), arg.data()); },
        5);
    row("maxpool2d 6x556x556", ts, tp, ok);
  }

  {  // fused dense layer of the canonical multimodal head: 56507 -> 256
    const std::size_t in = 56507, out = 256;
    auto x = random_vec(in, rng);
    auto w = random_vec(out * in, rng);
    auto b = random_vec(out, rng);
    std::vector<float> y_omp(out), y_ref(out);
    ffn::kernels::dense_forward(x.data(), in, w.data(), b.data(), out, y_omp.data());
    ffn::ref::dense_forward(x.data(), in, w.data(), b.data(), out, y_ref.data());
    const bool ok = close(y_omp, y_ref);
    const double ts = time_best_of(
        [&] { ffn::ref::dense_forward(x.data(), in, w.data(), b.data(), out, y_ref.data()); },
        5);
    const double tp = time_best_of(
        [&] {
          ffn::kernels::dense_forward(x.data(), in, w.data(), b.data(), out, y_omp.data());
        },
        5);
    row("dense 56507 -> 256", ts, tp, ok);
  }

  {  // text conv bank: 15x300, 50 channels, kernel height 5, many sequences
    const std::size_t S = 15, D = 300, C = 50, K = 5, batch = 512;
    auto x = random_vec(batch * S * D, rng);
    auto w = random_vec(C * K * D, rng);
    auto b = random_vec(C, rng);
    std::vector<float> y(batch * C * (S - K + 1));
    auto run_omp = [&] {
      for (std::size_t i = 0; i < batch; ++i) {
        ffn::kernels::conv_rows_forward(x.data() + i * S * D, S, D, w.data(), b.data(), C, K,
                                        y.data() + i * C * (S - K + 1));
      }
    };
    auto run_ref = [&] {
      for (std::size_t i = 0; i < batch; ++i) {
        ffn::ref::conv_rows_forward(x.data() + i * S * D, S, D, w.data(), b.data(), C, K,
                                    y.data() + i * C * (S - K + 1));
      }
    };
    run_omp();
    std::vector<float> y_omp = y;
    run_ref();
    const bool ok = close(y_omp, y);
    const double ts = time_best_of(run_ref, 5);
    const double tp = time_best_of(run_omp, 5);
    row("conv_rows 512x(15x300)", ts, tp, ok);
  }

  {  // LSTM over a batch of sequences: 15 steps, 300 -> 70
    const std::size_t S = 15, D = 300, H = 70, batch = 256;
    auto x = random_vec(batch * S * D, rng);
    auto wx = random_vec(4 * H * D, rng);
    auto wh = random_vec(4 * H * H, rng);
    auto b = random_vec(4 * H, rng);
    std::vector<float> h(batch * S * H), act(S * 4 * H), cs(S * H);
    auto run_omp = [&] {
      for (std::size_t i = 0; i < batch; ++i) {
        ffn::kernels::lstm_forward(x.data() + i * S * D, S, D, wx.data(), wh.data(), b.data(),
                                   H, h.data() + i * S * H, act.data(), cs.data());
      }
    };
    auto run_ref = [&] {
      for (std::size_t i = 0; i < batch; ++i) {
        ffn::ref::lstm_forward(x.data() + i * S * D, S, D, wx.data(), wh.data(), b.data(), H,
                               h.data() + i * S * H);
      }
    };
    run_omp();
    std::vector<float> h_omp = h;
    run_ref();
    const bool ok = close(h_omp, h);
    const double ts = time_best_of(run_ref, 3);
    const double tp = time_best_of(run_omp, 3);
    row("lstm 256x(15x300->70)", ts, tp, ok);
  }

  return 0;
}

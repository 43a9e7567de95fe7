#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ffn {

// Seeded generator with pinned draw algorithms. std::mt19937_64 output is
// fixed by the standard, but the std distributions and std::shuffle are not,
// so the float/int/shuffle helpers below implement their own mapping. Two
// builds on different platforms therefore draw identical sequences.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit mantissa.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform in [0, n). Modulo mapping; bias is irrelevant for n << 2^64 and
  // the mapping must simply stay fixed forever.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(engine_() % n);
  }

  // Fisher-Yates with pinned draw order.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ffn

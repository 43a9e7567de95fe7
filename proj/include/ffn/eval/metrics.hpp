#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ffn/data/labels.hpp"

namespace ffn {

// 6x6 count matrix; rows are gold classes, columns predicted classes.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> m{};

  std::uint64_t total() const;
  std::uint64_t row_sum(std::size_t gold) const;
  std::uint64_t col_sum(std::size_t pred) const;
};

ConfusionMatrix confusion_matrix(std::span<const Label> preds, std::span<const Label> golds);

struct PerClassPrf {
  std::array<double, kNumClasses> precision{}, recall{}, f1{};
};

// P_c = cm[c][c] / colsum(c), R_c = cm[c][c] / rowsum(c), F1 the harmonic
// mean; every 0/0 is defined as 0.
PerClassPrf per_class_prf(const ConfusionMatrix& cm);

double accuracy(const ConfusionMatrix& cm);  // trace / total; throws on empty

struct MicroMacro {
  double micro_p = 0, micro_r = 0, micro_f1 = 0;
  double macro_p = 0, macro_r = 0, macro_f1 = 0;
};

// Micro: pooled TP / (TP+FP) and TP / (TP+FN) over the subset, FP/FN counted
// against all classes; micro F1 is the harmonic mean of micro P and micro R.
// Macro: unweighted means of the per-class values (macro F1 is the mean of
// per-class F1, not the harmonic mean of the macro averages).
MicroMacro subset_micro_macro(const ConfusionMatrix& cm,
                              std::span<const Label> subset = kFakeClasses);

struct MetricsReport {
  ConfusionMatrix cm;
  PerClassPrf per_class;
  double accuracy = 0;
  MicroMacro fake;  // restricted to the five fake classes
};

MetricsReport compute_report(std::span<const Label> preds, std::span<const Label> golds);

}  // namespace ffn

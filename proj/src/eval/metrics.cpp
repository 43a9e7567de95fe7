#include "ffn/eval/metrics.hpp"

#include "ffn/core/errors.hpp"

namespace ffn {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t n = 0;
  for (const auto& row : m) {
    for (std::uint64_t v : row) n += v;
  }
  return n;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t gold) const {
  std::uint64_t n = 0;
  for (std::uint64_t v : m[gold]) n += v;
  return n;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t pred) const {
  std::uint64_t n = 0;
  for (const auto& row : m) n += row[pred];
  return n;
}

ConfusionMatrix confusion_matrix(std::span<const Label> preds, std::span<const Label> golds) {
  if (preds.size() != golds.size()) {
    throw DataError("confusion_matrix: " + std::to_string(preds.size()) +
                    " predictions vs " + std::to_string(golds.size()) + " golds");
  }
  if (preds.empty()) throw DataError("confusion_matrix: empty input");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    cm.m[static_cast<std::size_t>(golds[i])][static_cast<std::size_t>(preds[i])]++;
  }
  return cm;
}

PerClassPrf per_class_prf(const ConfusionMatrix& cm) {
  PerClassPrf out;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    out.precision[c] = ratio(cm.m[c][c], cm.col_sum(c));
    out.recall[c] = ratio(cm.m[c][c], cm.row_sum(c));
    out.f1[c] = harmonic(out.precision[c], out.recall[c]);
  }
  return out;
}

double accuracy(const ConfusionMatrix& cm) {
  const std::uint64_t n = cm.total();
  if (n == 0) throw DataError("accuracy: empty confusion matrix");
  std::uint64_t trace = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) trace += cm.m[c][c];
  return static_cast<double>(trace) / static_cast<double>(n);
}

MicroMacro subset_micro_macro(const ConfusionMatrix& cm, std::span<const Label> subset) {
  const PerClassPrf prf = per_class_prf(cm);
  MicroMacro out;
  std::uint64_t tp = 0, tp_fp = 0, tp_fn = 0;
  for (Label l : subset) {
    const auto c = static_cast<std::size_t>(l);
    tp += cm.m[c][c];
    tp_fp += cm.col_sum(c);
    tp_fn += cm.row_sum(c);
    out.macro_p += prf.precision[c];
    out.macro_r += prf.recall[c];
    out.macro_f1 += prf.f1[c];
  }
  out.micro_p = ratio(tp, tp_fp);
  out.micro_r = ratio(tp, tp_fn);
  out.micro_f1 = harmonic(out.micro_p, out.micro_r);
  const auto k = static_cast<double>(subset.size());
  out.macro_p /= k;
  out.macro_r /= k;
  out.macro_f1 /= k;
  return out;
}

MetricsReport compute_report(std::span<const Label> preds, std::span<const Label> golds) {
  MetricsReport r;
  r.cm = confusion_matrix(preds, golds);
  r.per_class = per_class_prf(r.cm);
  r.accuracy = accuracy(r.cm);
  r.fake = subset_micro_macro(r.cm);
  return r;
}

}  // namespace ffn

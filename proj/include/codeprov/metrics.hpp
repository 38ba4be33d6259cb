#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "codeprov/data_model.hpp"
#include "codeprov/decimal.hpp"

namespace codeprov {

/// Confusion counts with AI-generated as the positive class.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  std::int64_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Exact metrics; a metric with a zero denominator is nullopt ("undefined").
struct MetricsReport {
  Metric accuracy;
  Metric precision;
  Metric recall;
  Metric f1;
  ConfusionCounts counts;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Throws DataError when counts are empty or negative.
///
/// F1 is the harmonic mean of precision and recall; it is undefined when
/// either is undefined or when both are zero.
MetricsReport metrics(const ConfusionCounts& counts);

struct LabeledPrediction {
  std::string id;
  bool predicted_ai = false;
};

/// Counts predictions against ground truth keyed by id. Every prediction id
/// must have a truth label and vice versa (DataError otherwise). Truth labels
/// must be Human or AI.
ConfusionCounts confusion(std::span<const LabeledPrediction> predictions, std::span<const CodeSample> truth);

/// Orders metrics for comparisons where undefined sorts below every value.
inline bool metric_less(const Metric& a, const Metric& b) {
  if (!b) return false;
  if (!a) return true;
  return *a < *b;
}

}  // namespace codeprov

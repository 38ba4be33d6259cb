#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "codeprov/cascade.hpp"
#include "codeprov/metrics.hpp"

namespace codeprov {

struct Split {
  std::vector<CodeSample> part_a;  // round(fraction * n) samples
  std::vector<CodeSample> part_b;
};

/// Stratified seeded split. Each label's samples are shuffled with the seed
/// and a prefix goes to part_a; per-label prefix sizes are floor(fraction *
/// n_label) plus largest-remainder top-ups so part_a has round(fraction * n)
/// samples overall. Parts keep corpus order. Throws DataError when the
/// corpus has fewer than two samples or fraction is outside (0, 1).
Split split(std::span<const CodeSample> corpus, double fraction, std::uint64_t seed);

inline constexpr double kProfilingFraction = 0.3;

/// Predictions from verdicts (AI label = positive).
std::vector<LabeledPrediction> predictions(std::span<const Verdict> verdicts);

/// One metrics report per requested mode. Any sample failure throws
/// DataError naming the sample and detector.
std::map<EnsembleMode, MetricsReport> evaluate_ensemble(const EnsembleConfig& config, const DetectorSet& detectors,
                                                        std::span<const CodeSample> corpus,
                                                        std::span<const EnsembleMode> modes, unsigned workers = 1);

inline constexpr EnsembleMode kAllModes[] = {EnsembleMode::Full, EnsembleMode::NoStage1, EnsembleMode::NoStage2};

}  // namespace codeprov

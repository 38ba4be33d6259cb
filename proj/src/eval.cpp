#include "codeprov/eval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "codeprov/error.hpp"
#include "codeprov/random.hpp"

namespace codeprov {

MetricsReport metrics(const ConfusionCounts& c) {
  if (c.tp < 0 || c.fp < 0 || c.fn < 0 || c.tn < 0) throw DataError("confusion counts must be non-negative");
  if (c.total() == 0) throw DataError("metrics of an empty confusion matrix");
  MetricsReport r;
  r.counts = c;
  r.accuracy = ratio(c.tp + c.tn, c.total());
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  // 2PR/(P+R) reduces to 2tp/(2tp+fp+fn) when both are defined and nonzero.
  if (r.precision && r.recall && c.tp > 0) r.f1 = Fraction(2 * c.tp, 2 * c.tp + c.fp + c.fn);
  return r;
}

ConfusionCounts confusion(std::span<const LabeledPrediction> predictions, std::span<const CodeSample> truth) {
  std::unordered_map<std::string, ProvenanceLabel> labels;
  for (const auto& s : truth) {
    if (s.label == ProvenanceLabel::Unknown) throw DataError("truth sample '" + s.id + "' has no label");
    if (!labels.emplace(s.id, s.label).second) throw DataError("duplicate truth id '" + s.id + "'");
  }
  if (predictions.size() != labels.size())
    throw DataError("id mismatch: " + std::to_string(predictions.size()) + " predictions for " +
                    std::to_string(labels.size()) + " labeled samples");
  ConfusionCounts c;
  for (const auto& p : predictions) {
    auto it = labels.find(p.id);
    if (it == labels.end()) throw DataError("id mismatch: no truth label for '" + p.id + "'");
    const bool ai = it->second == ProvenanceLabel::AI;
    labels.erase(it);
    if (p.predicted_ai) (ai ? c.tp : c.fp) += 1;
    else (ai ? c.fn : c.tn) += 1;
  }
  return c;
}

Split split(std::span<const CodeSample> corpus, double fraction, std::uint64_t seed) {
  if (corpus.size() < 2) throw DataError("split needs at least two samples");
  if (!(fraction > 0.0 && fraction < 1.0)) throw DataError("split fraction must be in (0, 1)");
  const std::size_t n = corpus.size();
  const auto target = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));

  constexpr ProvenanceLabel kOrder[] = {ProvenanceLabel::Human, ProvenanceLabel::AI, ProvenanceLabel::Unknown};
  struct Stratum {
    std::vector<std::size_t> idx;
    std::size_t take = 0;
    double remainder = 0.0;
  };
  std::vector<Stratum> strata(3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      if (corpus[i].label == kOrder[k]) strata[k].idx.push_back(i);

  std::size_t allocated = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    auto& s = strata[k];
    const double exact = fraction * static_cast<double>(s.idx.size());
    s.take = std::min(s.idx.size(), static_cast<std::size_t>(std::floor(exact)));
    s.remainder = exact - static_cast<double>(s.take);
    allocated += s.take;
    seeded_shuffle(s.idx, seed + 0x9E3779B97F4A7C15ULL * (k + 1));
  }
  std::vector<std::size_t> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return strata[a].remainder > strata[b].remainder; });
  for (std::size_t k : order) {
    if (allocated >= target) break;
    if (strata[k].take < strata[k].idx.size()) {
      ++strata[k].take;
      ++allocated;
    }
  }

  std::vector<bool> in_a(n, false);
  for (const auto& s : strata)
    for (std::size_t j = 0; j < s.take; ++j) in_a[s.idx[j]] = true;
  Split out;
  for (std::size_t i = 0; i < n; ++i) (in_a[i] ? out.part_a : out.part_b).push_back(corpus[i]);
  return out;
}

std::vector<LabeledPrediction> predictions(std::span<const Verdict> verdicts) {
  std::vector<LabeledPrediction> out;
  out.reserve(verdicts.size());
  for (const auto& v : verdicts) out.push_back({v.sample_id, v.label == ProvenanceLabel::AI});
  return out;
}

std::map<EnsembleMode, MetricsReport> evaluate_ensemble(const EnsembleConfig& config, const DetectorSet& detectors,
                                                        std::span<const CodeSample> corpus,
                                                        std::span<const EnsembleMode> modes, unsigned workers) {
  bool has_ai = false, has_human = false;
  for (const auto& s : corpus) {
    has_ai |= s.label == ProvenanceLabel::AI;
    has_human |= s.label == ProvenanceLabel::Human;
  }
  if (!has_ai || !has_human) throw DataError("evaluation corpus must contain both AI and Human samples");

  std::map<EnsembleMode, MetricsReport> out;
  for (EnsembleMode mode : modes) {
    EnsembleConfig c = config;
    c.mode = mode;
    const BatchResult batch = classify_batch(c, detectors, corpus, workers);
    if (!batch.failures.empty()) {
      const auto& f = batch.failures.front();
      throw DataError("sample '" + f.sample_id + "': " + f.message);
    }
    const auto verdicts = batch.successful();
    out[mode] = metrics(confusion(predictions(verdicts), corpus));
  }
  return out;
}

}  // namespace codeprov

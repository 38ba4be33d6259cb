#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "codeprov/detectors.hpp"

namespace codeprov {

/// Maps perplexity to an AI score: logistic((midpoint - perplexity) * slope).
struct NgramCalibration {
  double midpoint = 1.0;
  double slope = 1.0;

  friend bool operator==(const NgramCalibration&, const NgramCalibration&) = default;
};

/// Character-level (code point) n-gram model with add-one smoothing.
class NgramModel {
 public:
  int order() const { return order_; }
  /// Distinct training symbols plus one slot for unseen symbols.
  std::size_t vocabulary_size() const { return vocabulary_size_; }
  const NgramCalibration& calibration() const { return calibration_; }

  /// P(symbol | previous order-1 symbols), always > 0.
  double probability(std::u32string_view context, char32_t symbol) const;

  /// exp of the mean negative log-probability per code point; nullopt for
  /// empty text.
  std::optional<double> perplexity(std::string_view text) const;

  /// Sentinel that pads contexts at the start of a text.
  static constexpr char32_t kBoundary = 0x110000;

  friend bool operator==(const NgramModel&, const NgramModel&) = default;

 private:
  friend NgramModel train_ngram(std::span<const CodeSample>, int, std::uint64_t);

  int order_ = 1;
  std::size_t vocabulary_size_ = 1;
  std::unordered_map<std::u32string, std::unordered_map<char32_t, std::uint64_t>> counts_;
  std::unordered_map<std::u32string, std::uint64_t> context_totals_;
  NgramCalibration calibration_;
};

inline constexpr int kDefaultNgramOrder = 4;
/// slope = kNgramSlopeScale / midpoint, so the score is scale-free in perplexity.
inline constexpr double kNgramSlopeScale = 4.0;

/// Trains on AI-labeled samples. A seeded 10% slice (at least one sample when
/// the corpus has two or more) is held out; the calibration midpoint is the
/// median perplexity of that slice. Throws DataError for an empty corpus,
/// order < 1, non-AI samples, or less text than `order` symbols.
NgramModel train_ngram(std::span<const CodeSample> corpus, int order = kDefaultNgramOrder, std::uint64_t seed = 0);

/// Lower perplexity ⇒ higher AI score. Empty content scores 0.5 with aux
/// "empty_content" = 1. aux "perplexity" carries the raw value.
DetectorScore ngram_score(const NgramModel& model, const CodeSample& sample, const std::string& detector_id = "ngram");

class NgramDetector final : public Detector {
 public:
  NgramDetector(std::string id, NgramModel model) : id_(std::move(id)), model_(std::move(model)) {}
  const std::string& id() const override { return id_; }
  DetectorScore score(const CodeSample& sample) const override { return ngram_score(model_, sample, id_); }
  const NgramModel& model() const { return model_; }

 private:
  std::string id_;
  NgramModel model_;
};

}  // namespace codeprov
